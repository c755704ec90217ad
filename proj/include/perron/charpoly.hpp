#pragma once

#include <string>
#include <utility>
#include <vector>

#include "perron/matrix.hpp"

namespace perron {

// Monic characteristic polynomial with exact coefficients: x^n + c[n-1]
// x^(n-1) + ... + c[0]. Coefficients carry no precision.
template <class Scalar>
struct CharPoly {
    int n;
    std::vector<Scalar> c; // c[j] multiplies x^j, j in [0, n)
};

// Division-free characteristic polynomial (Berkowitz / Samuelson recursion).
// Exactness of every coefficient valuation is the point: truncated arithmetic
// could misreport ord(c_j) under cancellation.
template <class F>
CharPoly<typename F::Exact> char_poly(const ExactMatrix<F>& a, const F& field) {
    using Scalar = typename F::Exact;
    const int n = a.dim();
    const Scalar zero = field.exact_from_int(0);
    const Scalar one = field.exact_from_int(1);

    // Coefficient vectors leading-first: p[i] multiplies x^(r-i).
    std::vector<Scalar> p = {one, zero - a.at(0, 0)};
    for (int r = 2; r <= n; ++r) {
        // q[0] = a_rr, q[i] = R B^(i-1) C against the leading (r-1) block.
        std::vector<Scalar> q(static_cast<std::size_t>(r), zero);
        q[0] = a.at(r - 1, r - 1);
        std::vector<Scalar> w(static_cast<std::size_t>(r - 1), zero);
        for (int i = 0; i < r - 1; ++i) w[static_cast<std::size_t>(i)] = a.at(i, r - 1);
        for (int i = 1; i < r; ++i) {
            Scalar dot = zero;
            for (int j = 0; j < r - 1; ++j)
                dot += a.at(r - 1, j) * w[static_cast<std::size_t>(j)];
            q[static_cast<std::size_t>(i)] = dot;
            if (i + 1 < r) {
                std::vector<Scalar> nw(static_cast<std::size_t>(r - 1), zero);
                for (int row = 0; row < r - 1; ++row) {
                    Scalar acc = zero;
                    for (int col = 0; col < r - 1; ++col)
                        acc += a.at(row, col) * w[static_cast<std::size_t>(col)];
                    nw[static_cast<std::size_t>(row)] = acc;
                }
                w = std::move(nw);
            }
        }
        // Lower-triangular Toeplitz multiply: first column (1, -q0, ..., -q_{r-1}).
        std::vector<Scalar> next(static_cast<std::size_t>(r) + 1, zero);
        for (std::size_t i = 0; i < next.size(); ++i) {
            Scalar acc = zero;
            for (std::size_t j = 0; j < p.size() && j <= i; ++j) {
                const std::size_t d = i - j;
                if (d == 0)
                    acc += p[j];
                else
                    acc -= q[d - 1] * p[j];
            }
            next[i] = acc;
        }
        p = std::move(next);
    }

    std::vector<Scalar> c(static_cast<std::size_t>(n), zero);
    for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(n - j)];
    return CharPoly<Scalar>{n, std::move(c)};
}

template <class F>
typename F::Exact charpoly_det(const CharPoly<typename F::Exact>& f, const F& field) {
    // det A = (-1)^n c_0
    if (f.n % 2 == 0) return f.c[0];
    return field.exact_from_int(0) - f.c[0];
}

template <class F>
typename F::Exact charpoly_trace(const CharPoly<typename F::Exact>& f, const F& field) {
    return field.exact_from_int(0) - f.c[static_cast<std::size_t>(f.n - 1)];
}

// Coefficients of f', ascending, length n (leading entry is n itself).
template <class F>
std::vector<typename F::Exact> poly_derivative(const CharPoly<typename F::Exact>& f, const F& field) {
    std::vector<typename F::Exact> d;
    d.reserve(static_cast<std::size_t>(f.n));
    for (int j = 1; j < f.n; ++j)
        d.push_back(field.exact_from_int(j) * f.c[static_cast<std::size_t>(j)]);
    d.push_back(field.exact_from_int(f.n));
    return d;
}

struct PolygonPoint {
    int x;
    long long y;
};

struct PolygonSegment {
    Rational slope;
    int length;
};

// Lower convex hull of (i, ord c_i) for c_i != 0 plus (n, 0). Zero
// coefficients contribute no point. Segment of slope m and horizontal length
// h certifies exactly h roots of valuation -m (with multiplicity, in the
// algebraic closure).
struct NewtonPolygon {
    int degree;
    std::vector<PolygonPoint> points;
    std::vector<PolygonPoint> vertices;
    std::vector<PolygonSegment> segments;
};

template <class F>
NewtonPolygon newton_polygon(const CharPoly<typename F::Exact>& f, const F& field) {
    NewtonPolygon pg;
    pg.degree = f.n;
    for (int i = 0; i < f.n; ++i) {
        const Valuation v = field.ord_exact(f.c[static_cast<std::size_t>(i)]);
        if (!v.is_infinite()) pg.points.push_back({i, v.value()});
    }
    pg.points.push_back({f.n, 0});

    auto cross = [](const PolygonPoint& a, const PolygonPoint& b, const PolygonPoint& c) {
        return BigInt(b.x - a.x) * BigInt(c.y - a.y) - BigInt(b.y - a.y) * BigInt(c.x - a.x);
    };
    for (const auto& pt : pg.points) {
        auto& vs = pg.vertices;
        while (vs.size() >= 2 && cross(vs[vs.size() - 2], vs.back(), pt) <= 0)
            vs.pop_back();
        vs.push_back(pt);
    }
    for (std::size_t i = 1; i < pg.vertices.size(); ++i) {
        const auto& a = pg.vertices[i - 1];
        const auto& b = pg.vertices[i];
        pg.segments.push_back({Rational(b.y - a.y, b.x - a.x), b.x - a.x});
    }
    return pg;
}

// One (valuation, count) pair per segment; counts sum to the number of
// nonzero roots.
inline std::vector<std::pair<Rational, int>> root_valuations(const NewtonPolygon& pg) {
    std::vector<std::pair<Rational, int>> out;
    out.reserve(pg.segments.size());
    for (const auto& s : pg.segments) out.emplace_back(-s.slope, s.length);
    return out;
}

struct BoundCertificate {
    std::string claim;
    Valuation required;
    Valuation observed;
    bool holds;
};

// |det A| <= |pi|^(l(n-1)) for matrices with all entries in D(1, |pi|^l).
template <class F>
BoundCertificate check_det_bound(const ExactMatrix<F>& a, const F& field, Valuation ell) {
    const typename F::Exact one = field.exact_from_int(1);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (!field.in_disc_exact(a.at(i, j), one, ell))
                throw InputError("check_det_bound: entries not all in D(1, |pi|^l)");
    const Valuation required = ell.times(a.dim() - 1);
    const Valuation observed = field.ord_exact(det_exact(a, field));
    return BoundCertificate{"det-bound", required, observed, observed >= required};
}

// |c_j| <= |pi|^(l(n-j-1)) for 0 <= j <= n-1, plus the trace identity
// |c_{n-1}| = |n| whenever l > ord(n).
template <class F>
std::vector<BoundCertificate> check_coeff_bounds(const CharPoly<typename F::Exact>& f,
                                                 const F& field, Valuation ell) {
    std::vector<BoundCertificate> out;
    const int n = f.n;
    for (int j = 0; j < n; ++j) {
        const Valuation required = ell.times(n - j - 1);
        const Valuation observed = field.ord_exact(f.c[static_cast<std::size_t>(j)]);
        out.push_back({"coeff-bound(" + std::to_string(j) + ")", required, observed,
                       observed >= required});
    }
    const Valuation ord_n = field.ord_exact(field.exact_from_int(n));
    if (ell > ord_n) {
        const Valuation observed = field.ord_exact(f.c[static_cast<std::size_t>(n - 1)]);
        out.push_back({"trace-identity", ord_n, observed, observed == ord_n});
    }
    return out;
}

} // namespace perron
