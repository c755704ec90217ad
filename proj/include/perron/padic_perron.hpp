#pragma once

// Umbrella header for the padic-perron library: exact arithmetic over
// complete discretely valued fields (Q_p and F_p((t))), Newton polygons,
// Hensel lifting of the strictly maximal eigenvalue, dominant eigenvectors,
// and the limit projection operator.

#include "perron/charpoly.hpp"
#include "perron/context.hpp"
#include "perron/counterexample.hpp"
#include "perron/element.hpp"
#include "perron/errors.hpp"
#include "perron/field.hpp"
#include "perron/fp_poly.hpp"
#include "perron/matrix.hpp"
#include "perron/perron.hpp"
#include "perron/rational.hpp"
#include "perron/render.hpp"
#include "perron/valuation.hpp"
