#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perron/charpoly.hpp"
#include "perron/matrix.hpp"

namespace perron {

// l is the maximal exponent with all entries in D(1, |pi|^l): absent when
// some entry falls outside D(1, |pi|), +infinity when every entry equals 1.
struct HypothesisReport {
    std::optional<Valuation> ell;
    Valuation ord_n;
    bool satisfied;
    std::optional<Valuation> margin; // ell - 2 ord(n), when defined

    Valuation ell_or(Valuation fallback) const { return ell ? *ell : fallback; }
};

template <class F>
HypothesisReport check_hypothesis(const ExactMatrix<F>& a, const F& field) {
    const typename F::Exact one = field.exact_from_int(1);
    Valuation lmin = Valuation::infinity();
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            lmin = min(lmin, field.ord_exact(a.at(i, j) - one));

    HypothesisReport r;
    r.ord_n = field.ord_exact(field.exact_from_int(a.dim()));
    if (lmin < Valuation(1)) {
        r.ell = std::nullopt;
        r.satisfied = false;
        r.margin = std::nullopt;
        return r;
    }
    r.ell = lmin;
    r.satisfied = lmin > r.ord_n.times(2);
    if (r.ord_n.is_infinite())
        r.margin = std::nullopt;
    else if (lmin.is_infinite())
        r.margin = Valuation::infinity();
    else
        r.margin = Valuation(lmin.value() - 2 * r.ord_n.value());
    return r;
}

struct StrictMax {
    bool certified = false;
    std::string mode;              // "theorem" or "polygon-only"
    long long root_valuation = 0;  // -slope of the rightmost segment, when certified
    bool rightmost_length_one = false;
    bool slope_strictly_max = false;
    std::optional<bool> line_check; // theorem cross-check against y = ord(n)(n - x)
    std::string explanation;
};

// A simple strictly maximal eigenvalue in K is certified by a rightmost
// Newton polygon segment of horizontal length 1 (its slope strictly exceeds
// every other slope by convexity). Under the satisfied hypothesis the slope
// is additionally pinned to -ord(n) and every point left of x = n-1 must lie
// strictly above the line y = ord(n)(n - x).
inline StrictMax certify_strict_max(const NewtonPolygon& pg, const HypothesisReport& hyp) {
    StrictMax sm;
    sm.mode = hyp.satisfied ? "theorem" : "polygon-only";
    if (pg.segments.empty()) {
        sm.explanation = "Newton polygon has no segments: every root has valuation +infinity";
        return sm;
    }
    const PolygonSegment& last = pg.segments.back();
    sm.rightmost_length_one = last.length == 1;
    sm.slope_strictly_max = true; // hull slopes strictly increase left to right
    std::string slopes;
    for (const auto& s : pg.segments) {
        if (!slopes.empty()) slopes += ", ";
        slopes += rational_str(s.slope) + " (length " + std::to_string(s.length) + ")";
    }
    if (!sm.rightmost_length_one) {
        sm.explanation = "rightmost segment has slope " + rational_str(last.slope) +
                         " and horizontal length " + std::to_string(last.length) +
                         "; a simple strictly maximal eigenvalue requires length 1 [segments: " +
                         slopes + "]";
        return sm;
    }
    sm.root_valuation =
        -static_cast<long long>(boost::multiprecision::numerator(last.slope).convert_to<long long>());
    sm.certified = true;
    if (hyp.satisfied) {
        const long long dn = hyp.ord_n.value();
        bool ok = sm.root_valuation == dn;
        for (const auto& pt : pg.points) {
            if (pt.x > pg.degree - 2) continue;
            if (!(pt.y > dn * (pg.degree - pt.x))) ok = false;
        }
        sm.line_check = ok;
        if (!ok) {
            sm.certified = false;
            sm.explanation =
                "hypothesis satisfied but the polygon contradicts the coefficient bounds "
                "(internal inconsistency) [segments: " + slopes + "]";
            return sm;
        }
    }
    sm.explanation = "rightmost segment has slope " + rational_str(last.slope) +
                     " and length 1, strictly exceeding all other slopes [segments: " + slopes +
                     "]";
    return sm;
}

template <class F>
struct MaxEigen {
    typename F::Elem lambda;
    bool certified_simple;
    long long valuation;      // ord(lambda), equals ord(n) in theorem mode
    long long residual_bound; // ord f(lambda) >= residual_bound
    bool disc_certified;      // lambda in D(n, |pi|^l / |n|)
    int iterations;
};

namespace detail {

// Horner evaluation; coeffs ascending, highest coefficient included.
template <class Elem>
Elem eval_poly(const std::vector<Elem>& coeffs, const Elem& x) {
    Elem acc = coeffs.back();
    for (std::size_t j = coeffs.size() - 1; j-- > 0;) acc = acc * x + coeffs[j];
    return acc;
}

// yes / no / undecidable for ord(diff) >= radius.
template <class Ops>
Containment contains(const Element<Ops>& diff, Valuation radius) {
    if (radius.is_infinite())
        return diff.is_zero() ? Containment::yes : Containment::no;
    if (!diff.is_zero())
        return diff.val() >= radius.value() ? Containment::yes : Containment::no;
    return diff.zero_bound() >= radius.value() ? Containment::yes : Containment::undecidable;
}

} // namespace detail

// Newton iteration x <- x - f(x)/f'(x) from x0 = n (theorem mode; licensed by
// the disc bound on lambda) or from the first-digit approximation read off
// the polygon (polygon-only mode). ord f(x_k) must strictly increase until
// the residual vanishes at precision.
template <class F>
MaxEigen<F> lift_lambda_max(const CharPoly<typename F::Exact>& f, const F& field,
                            const StrictMax& sm, const HypothesisReport& hyp) {
    using Elem = typename F::Elem;
    if (!sm.certified)
        throw CertificationError("lift_lambda_max: no strict-maximality certificate");

    const int n = f.n;
    std::vector<Elem> fc;
    fc.reserve(static_cast<std::size_t>(n) + 1);
    for (const auto& c : f.c) fc.push_back(field.embed(c));
    fc.push_back(field.one());
    const auto dcoeffs = poly_derivative(f, field);
    std::vector<Elem> dfc;
    dfc.reserve(dcoeffs.size());
    for (const auto& c : dcoeffs) dfc.push_back(field.embed(c));

    // The start point is a full-precision number chosen near the root: n
    // itself in theorem mode, else pi^v times the lifted residue of
    // -c_{n-1}/pi^v read off the polygon.
    Elem x0 = field.embed_int(n);
    if (sm.mode != "theorem") {
        const Elem top =
            field.embed(field.exact_from_int(0) - f.c[static_cast<std::size_t>(n - 1)]);
        if (top.is_zero() || top.val() != sm.root_valuation)
            throw CertificationError("lift_lambda_max: polygon and trace coefficient disagree");
        const auto r = field.exact_from_int(top.residue());
        x0 = field.embed(r * field.exact_uniformizer_pow(sm.root_valuation));
    }
    const std::string evidence = "ord f(x0) = " + detail::eval_poly(fc, x0).ord().str() +
                                 ", ord f'(x0) = " + detail::eval_poly(dfc, x0).ord().str();

    Elem x = x0;
    constexpr int kMaxIterations = 256;
    bool have_prev = false;
    long long prev_ord = 0;
    long long residual = 0;
    int iter = 0;
    for (;; ++iter) {
        if (iter > kMaxIterations)
            throw PrecisionError("lift_lambda_max: iteration cap exceeded without convergence");
        const Elem fx = detail::eval_poly(fc, x);
        if (fx.is_zero()) {
            residual = fx.zero_bound();
            break;
        }
        if (have_prev && !(fx.val() > prev_ord)) {
            throw CertificationError(
                "lift_lambda_max: non-contracting Newton iteration (ord f(x_k) stalled at " +
                std::to_string(fx.val()) + " after " + std::to_string(prev_ord) + "; " + evidence +
                ")");
        }
        prev_ord = fx.val();
        have_prev = true;
        const Elem dfx = detail::eval_poly(dfc, x);
        if (dfx.is_zero())
            throw PrecisionError("lift_lambda_max: derivative vanishes at working precision");
        x = x - fx / dfx;
    }

    if (residual < field.precision())
        throw PrecisionError("lift_lambda_max: residual certified only to ord " +
                             std::to_string(residual));
    if (x.is_zero())
        throw CertificationError("lift_lambda_max: iterate collapsed to zero at precision");
    if (x.val() != sm.root_valuation)
        throw CertificationError("lift_lambda_max: lifted root has valuation " +
                                 std::to_string(x.val()) + ", polygon certifies " +
                                 std::to_string(sm.root_valuation));

    MaxEigen<F> me{x, sm.certified, x.val(), residual, false, iter};
    if (sm.mode == "theorem") {
        // lambda must lie in D(n, |pi|^l / |n|).
        const Valuation radius = *hyp.ell + Valuation(-hyp.ord_n.value());
        const Elem diff = x - field.embed_int(n);
        switch (detail::contains(diff, radius)) {
            case Containment::yes:
                me.disc_certified = true;
                break;
            case Containment::no:
                throw CertificationError("lift_lambda_max: lambda escaped D(n, |pi|^l/|n|)");
            case Containment::undecidable:
                throw PrecisionError(
                    "lift_lambda_max: working precision too small to certify the disc bound on "
                    "lambda; increase precision");
        }
    }
    return me;
}

template <class F>
struct PerronEigenvector {
    ValVector<F> x;
    typename F::Elem v_sum;  // coordinate sum of the norm-1 kernel vector
    typename F::Elem factor; // lambda / v_sum when trace-normalized
    bool trace_normalized;
    bool disc_certified;      // every component in D(1, |pi|^l / |n|)
    long long residual_bound; // ord(Ax - lambda x) >= residual_bound
};

// Kernel vector of A - lambda I, normalized per the proof of the eigenvector
// disc bound: scale the norm-1 kernel vector v by lambda / sum(v). In theorem
// mode |sum(v)| = |n| is certified, and every component must land in
// D(1, |pi|^l / |n|).
template <class F>
PerronEigenvector<F> dominant_eigenvector(const ValMatrix<F>& a, const MaxEigen<F>& me,
                                          const F& field, const HypothesisReport& hyp,
                                          const StrictMax& sm) {
    using Elem = typename F::Elem;
    ValMatrix<F> m = a;
    for (int i = 0; i < m.dim(); ++i) m.at(i, i) = m.at(i, i) - me.lambda;
    ValVector<F> v = solve_kernel<typename F::ops_type>(m);

    Elem v_sum = v[0];
    for (std::size_t i = 1; i < v.size(); ++i) v_sum = v_sum + v[i];

    const bool theorem = sm.mode == "theorem";
    Elem factor = field.one();
    bool trace_normalized = false;
    if (theorem) {
        if (v_sum.is_zero() || v_sum.val() != hyp.ord_n.value())
            throw CertificationError(
                "dominant_eigenvector: |sum v| != |n| (got ord " + v_sum.ord().str() +
                ", expected " + hyp.ord_n.str() + "); certification failed");
        factor = me.lambda / v_sum;
        trace_normalized = true;
    } else if (!v_sum.is_zero()) {
        factor = me.lambda / v_sum;
        trace_normalized = true;
    }

    ValVector<F> x;
    x.reserve(v.size());
    for (const auto& vi : v) x.push_back(vi * factor);

    bool disc_certified = false;
    if (hyp.ell && !hyp.ord_n.is_infinite()) {
        const Valuation radius = *hyp.ell + Valuation(-hyp.ord_n.value());
        disc_certified = true;
        for (const auto& xi : x) {
            const Containment c = detail::contains(xi - field.one(), radius);
            if (c == Containment::yes) continue;
            disc_certified = false;
            if (!theorem) continue;
            if (c == Containment::no)
                throw CertificationError(
                    "dominant_eigenvector: component outside D(1, |pi|^l/|n|); certification "
                    "failed");
            throw PrecisionError(
                "dominant_eigenvector: working precision too small to certify the component "
                "disc bound; increase precision");
        }
    }

    // Residual certificate: (A - lambda I) x must vanish at precision.
    long long residual = 0;
    bool first = true;
    const ValVector<F> ax = mat_vec(a, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Elem r = ax[i] - me.lambda * x[i];
        if (!r.is_zero())
            throw CertificationError("dominant_eigenvector: eigen residual nonzero at precision");
        residual = first ? r.zero_bound() : std::min(residual, r.zero_bound());
        first = false;
    }
    return PerronEigenvector<F>{std::move(x), v_sum, factor, trace_normalized, disc_certified,
                                residual};
}

template <class F>
struct ProjectionResult {
    ValMatrix<F> P;
    int iterations;           // squarings performed
    long long certified_abs;  // min of the diagnostic bounds below
    long long idem_bound;     // ord(P^2 - P)  >= idem_bound
    long long eigen_bound;    // ord(AP - lambda P) >= eigen_bound
    long long trace_bound;    // ord(tr P - 1) >= trace_bound
    typename F::Elem trace;
};

namespace detail {

// Entrywise "zero at absolute precision >= target".
template <class F>
bool stabilized(const ValMatrix<F>& a, const ValMatrix<F>& b, long long target) {
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            const auto d = a.at(i, j) - b.at(i, j);
            if (!d.is_zero() || d.zero_bound() < target) return false;
        }
    }
    return true;
}

template <class F>
long long min_zero_bound(const ValMatrix<F>& m, const char* what) {
    long long bound = 0;
    bool first = true;
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            const auto& e = m.at(i, j);
            if (!e.is_zero())
                throw CertificationError(std::string(what) + ": defect nonzero at precision (ord " +
                                         std::to_string(e.val()) + ")");
            bound = first ? e.zero_bound() : std::min(bound, e.zero_bound());
            first = false;
        }
    }
    return bound;
}

} // namespace detail

// P_A as the limit of repeated squaring of lambda^-1 A: k squarings reach
// exponent 2^k and the idempotent is the squaring fixed point, giving a clean
// stopping rule at finite precision.
template <class F>
ProjectionResult<F> projection_limit(const ValMatrix<F>& a, const typename F::Elem& lambda,
                                     const F& field, long long target_abs, int max_squarings) {
    using Elem = typename F::Elem;
    ValMatrix<F> m = scale(a, lambda.inv());
    int iterations = 0;
    bool done = false;
    while (iterations < max_squarings) {
        ValMatrix<F> m2 = mat_mul(m, m);
        ++iterations;
        if (detail::stabilized<F>(m2, m, target_abs)) {
            m = std::move(m2);
            done = true;
            break;
        }
        m = std::move(m2);
    }
    if (!done)
        throw CertificationError(
            "projection_limit: no stabilization within " + std::to_string(max_squarings) +
            " squarings; the spectral gap is too small for the precision budget");

    ValMatrix<F> p2 = mat_mul(m, m);
    for (int i = 0; i < p2.dim(); ++i)
        for (int j = 0; j < p2.dim(); ++j) p2.at(i, j) = p2.at(i, j) - m.at(i, j);
    const long long idem = detail::min_zero_bound<F>(p2, "projection idempotency");

    ValMatrix<F> ap = mat_mul(a, m);
    for (int i = 0; i < ap.dim(); ++i)
        for (int j = 0; j < ap.dim(); ++j) ap.at(i, j) = ap.at(i, j) - lambda * m.at(i, j);
    const long long eig = detail::min_zero_bound<F>(ap, "projection eigen-equation");

    Elem tr = m.at(0, 0);
    for (int i = 1; i < m.dim(); ++i) tr = tr + m.at(i, i);
    const Elem tr_defect = tr - field.one();
    if (!tr_defect.is_zero())
        throw CertificationError("projection trace: tr P != 1 at precision (ord " +
                                 tr_defect.ord().str() + ")");
    const long long trb = tr_defect.zero_bound();

    const long long certified = std::min(idem, std::min(eig, trb));
    return ProjectionResult<F>{std::move(m), iterations, certified, idem, eig, trb, tr};
}

struct AnalyzeOptions {
    int max_squarings = 64;
    bool compute_projection = true;
};

template <class F>
struct PerronReport {
    FieldContext ctx;
    ExactMatrix<F> input;
    std::optional<RescaleInfo<F>> rescale;
    ExactMatrix<F> analyzed; // input, or alpha^-1 input after rescaling
    HypothesisReport hypothesis;
    CharPoly<typename F::Exact> charpoly; // of the analyzed matrix
    NewtonPolygon polygon;
    std::vector<std::pair<Rational, int>> root_vals;
    StrictMax strict_max;
    std::vector<BoundCertificate> certificates;
    std::optional<MaxEigen<F>> eigenvalue;           // of the analyzed matrix
    std::optional<typename F::Elem> lambda_input;    // of the input matrix
    std::optional<PerronEigenvector<F>> eigenvector; // shared line with the input matrix
    std::optional<ProjectionResult<F>> projection;   // identical for input and analyzed
    std::string finding;
};

// Full pipeline. Failure to satisfy the hypothesis or to certify a strictly
// maximal eigenvalue is a finding, not an error; internal certification
// failures throw.
template <class F>
PerronReport<F> analyze(const ExactMatrix<F>& input, const F& field,
                        const AnalyzeOptions& opt = {}) {
    PerronReport<F> rep{field.context(),
                        input,
                        std::nullopt,
                        input,
                        {},
                        {},
                        {},
                        {},
                        {},
                        {},
                        std::nullopt,
                        std::nullopt,
                        std::nullopt,
                        std::nullopt,
                        ""};

    rep.hypothesis = check_hypothesis(input, field);
    if (!rep.hypothesis.ell && !field.exact_is_zero(input.at(0, 0))) {
        // Entries are not near 1; try the zero-free-disc reduction with the
        // top-left entry as center.
        try {
            auto [scaled, info] = rescale_to_unit_disc(input, input.at(0, 0), field);
            rep.analyzed = std::move(scaled);
            rep.rescale = std::move(info);
            rep.hypothesis = check_hypothesis(rep.analyzed, field);
        } catch (const InputError&) {
            // Not reducible; analyze the input as given.
        }
    }

    rep.charpoly = char_poly(rep.analyzed, field);
    rep.polygon = newton_polygon(rep.charpoly, field);
    rep.root_vals = root_valuations(rep.polygon);
    rep.strict_max = certify_strict_max(rep.polygon, rep.hypothesis);
    if (rep.hypothesis.ell) {
        rep.certificates.push_back(check_det_bound(rep.analyzed, field, *rep.hypothesis.ell));
        for (auto& c : check_coeff_bounds(rep.charpoly, field, *rep.hypothesis.ell))
            rep.certificates.push_back(std::move(c));
    }

    if (!rep.strict_max.certified) {
        rep.finding = "no strictly maximal eigenvalue: " + rep.strict_max.explanation;
        return rep;
    }

    // Guard digits: each squaring of lambda^-1 A can cost up to
    // 2 * (d - ord||A||) digits of absolute precision.
    const long long d = rep.strict_max.root_valuation;
    Valuation norm_a = Valuation::infinity();
    for (int i = 0; i < rep.analyzed.dim(); ++i)
        for (int j = 0; j < rep.analyzed.dim(); ++j)
            norm_a = min(norm_a, field.ord_exact(rep.analyzed.at(i, j)));
    const long long w = norm_a.is_infinite() ? 0 : norm_a.value();
    const long long loss = std::max<long long>(0, d - w);
    const long long guard = static_cast<long long>(opt.max_squarings) * 2 * loss;
    const F work = field.with_precision(field.precision() + static_cast<int>(guard));

    MaxEigen<F> me = lift_lambda_max(rep.charpoly, work, rep.strict_max, rep.hypothesis);
    const ValMatrix<F> a_work = embed_matrix(work, rep.analyzed);
    PerronEigenvector<F> eig =
        dominant_eigenvector(a_work, me, work, rep.hypothesis, rep.strict_max);
    std::optional<ProjectionResult<F>> proj;
    if (opt.compute_projection) {
        const long long target_abs = field.precision() + std::min<long long>(w - d, 0);
        proj = projection_limit(a_work, me.lambda, work, target_abs, opt.max_squarings);
    }

    // Rebase to the user context and recompute the certificates the report
    // actually states at that precision.
    const FieldContext& ctx = field.context();
    me.lambda = me.lambda.rebased(ctx);
    rep.eigenvalue = me;

    PerronEigenvector<F> eig_out = eig;
    eig_out.x.clear();
    for (const auto& xi : eig.x) eig_out.x.push_back(xi.rebased(ctx));
    eig_out.v_sum = eig.v_sum.rebased(ctx);
    eig_out.factor = eig.factor.rebased(ctx);

    const ValMatrix<F> a_user = embed_matrix(field, rep.analyzed);
    {
        const auto ax = mat_vec(a_user, eig_out.x);
        long long bound = 0;
        bool first = true;
        for (std::size_t i = 0; i < eig_out.x.size(); ++i) {
            const auto r = ax[i] - me.lambda * eig_out.x[i];
            if (!r.is_zero())
                throw CertificationError("analyze: rebased eigen residual nonzero at precision");
            bound = first ? r.zero_bound() : std::min(bound, r.zero_bound());
            first = false;
        }
        eig_out.residual_bound = bound;
    }
    rep.eigenvector = std::move(eig_out);

    if (proj) {
        ValMatrix<F> p_out = proj->P;
        for (int i = 0; i < p_out.dim(); ++i)
            for (int j = 0; j < p_out.dim(); ++j) p_out.at(i, j) = proj->P.at(i, j).rebased(ctx);
        ValMatrix<F> p2 = mat_mul(p_out, p_out);
        for (int i = 0; i < p2.dim(); ++i)
            for (int j = 0; j < p2.dim(); ++j) p2.at(i, j) = p2.at(i, j) - p_out.at(i, j);
        const long long idem = detail::min_zero_bound<F>(p2, "projection idempotency");
        ValMatrix<F> ap = mat_mul(a_user, p_out);
        for (int i = 0; i < ap.dim(); ++i)
            for (int j = 0; j < ap.dim(); ++j)
                ap.at(i, j) = ap.at(i, j) - me.lambda * p_out.at(i, j);
        const long long eigb = detail::min_zero_bound<F>(ap, "projection eigen-equation");
        typename F::Elem tr = p_out.at(0, 0);
        for (int i = 1; i < p_out.dim(); ++i) tr = tr + p_out.at(i, i);
        const auto tr_defect = tr - field.one();
        if (!tr_defect.is_zero())
            throw CertificationError("analyze: rebased projection trace != 1 at precision");
        const long long trb = tr_defect.zero_bound();
        proj->P = std::move(p_out);
        proj->idem_bound = idem;
        proj->eigen_bound = eigb;
        proj->trace_bound = trb;
        proj->trace = tr.rebased(ctx);
        proj->certified_abs = std::min(idem, std::min(eigb, trb));
        rep.projection = std::move(proj);
    }

    if (rep.rescale)
        rep.lambda_input = (field.embed(rep.rescale->alpha) * me.lambda).rebased(ctx);
    else
        rep.lambda_input = me.lambda;

    rep.finding = rep.strict_max.mode == "theorem"
                      ? "strictly maximal eigenvalue certified"
                      : "strictly maximal eigenvalue certified (theorem hypothesis not "
                        "satisfied; polygon certificate only)";
    return rep;
}

} // namespace perron
