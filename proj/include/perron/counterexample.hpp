#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "perron/perron.hpp"

namespace perron {

// Deterministic RNG: mt19937_64 (bit-exact across platforms) with rejection
// sampling, so campaign reports are reproducible from the seed alone.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t lim = bound == 0 ? 0 : (~std::uint64_t(0)) - (~std::uint64_t(0)) % bound;
        for (;;) {
            const std::uint64_t x = next();
            if (x < lim) return x % bound;
        }
    }

private:
    std::mt19937_64 eng_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t base, long long p, int n, int trial) {
    std::uint64_t x = base;
    x = splitmix64(x ^ (static_cast<std::uint64_t>(p) << 32));
    x = splitmix64(x ^ (static_cast<std::uint64_t>(n) << 16));
    x = splitmix64(x ^ static_cast<std::uint64_t>(trial));
    return x;
}

// Entries 1 + pi^l * r with r drawn uniformly from residues mod pi^(N-l),
// lifted into the ring of integers.
template <class F>
ExactMatrix<F> sample_hypothesis_matrix(const F& field, int n, long long ell, DetRng& rng) {
    const long long p = field.p();
    const int digits = field.precision() - static_cast<int>(ell);
    if (digits <= 0)
        throw InputError("sample_hypothesis_matrix: precision too small for l");
    std::vector<typename F::Exact> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n * n; ++k) {
        if constexpr (F::ops_type::kind == FieldKind::padic) {
            BigInt r = 0;
            BigInt scale = 1;
            for (int i = 0; i < digits; ++i) {
                r += scale * BigInt(static_cast<long long>(rng.below(static_cast<std::uint64_t>(p))));
                scale *= p;
            }
            entries.push_back(Rational(1 + pow_int(p, ell) * r));
        } else {
            std::vector<long long> coeffs(static_cast<std::size_t>(ell), 0);
            for (int i = 0; i < digits; ++i)
                coeffs.push_back(static_cast<long long>(rng.below(static_cast<std::uint64_t>(p))));
            FpPoly poly(p, std::move(coeffs));
            entries.push_back(RatFunc::from_poly(poly + FpPoly::constant(p, 1)));
        }
    }
    return ExactMatrix<F>::from_entries(n, std::move(entries));
}

struct CounterexampleSpec {
    long long p;
    int n;
    long long ell;            // forced to 2 ord_p(n)
    Rational expected_c_top;  // -(n + p^l)
    Rational expected_c_next; // (n-1) p^l
    Rational expected_root_ord;
};

inline CounterexampleSpec make_counterexample_spec(long long p, int n) {
    if (!is_prime(p)) throw InputError("counterexample: p must be prime");
    if (n < 2 || n % p != 0)
        throw InputError("counterexample: requires p | n (got p = " + std::to_string(p) +
                         ", n = " + std::to_string(n) + ")");
    const long long d = ord_int(BigInt(n), p);
    const long long ell = 2 * d;
    CounterexampleSpec s;
    s.p = p;
    s.n = n;
    s.ell = ell;
    s.expected_c_top = -Rational(BigInt(n) + pow_int(p, ell));
    s.expected_c_next = Rational(BigInt(n - 1) * pow_int(p, ell));
    s.expected_root_ord = Rational(ell, 2);
    return s;
}

// All-ones n x n matrix except the top-left entry, which is 1 + p^l.
inline SquareMatrix<Rational> build_counterexample(const CounterexampleSpec& s) {
    SquareMatrix<Rational> a(s.n, Rational(1));
    a.at(0, 0) = Rational(1 + pow_int(s.p, s.ell));
    return a;
}

struct CounterexampleCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct CounterexampleReport {
    CounterexampleSpec spec;
    SquareMatrix<Rational> matrix;
    CharPoly<Rational> charpoly;
    std::vector<CounterexampleCheck> checks;
    bool all_pass;
};

// Verifies the sharpness family at l = 2 ord_p(n): exact three-term
// characteristic polynomial, two roots of valuation l/2, no strict maximum,
// hypothesis margin exactly zero, distinct nonzero eigenvalues.
inline CounterexampleReport verify_counterexample(long long p, int n, int precision = 32) {
    const CounterexampleSpec spec = make_counterexample_spec(p, n);
    const PadicField field(p, precision);
    SquareMatrix<Rational> a = build_counterexample(spec);
    CharPoly<Rational> f = char_poly(a, field);

    std::vector<CounterexampleCheck> checks;
    const Rational c_top = f.c[static_cast<std::size_t>(n - 1)];
    const Rational c_next = f.c[static_cast<std::size_t>(n - 2)];
    checks.push_back({"coeff-top", c_top == spec.expected_c_top,
                      "c_{n-1} = " + rational_str(c_top) + ", expected " +
                          rational_str(spec.expected_c_top)});
    checks.push_back({"coeff-next", c_next == spec.expected_c_next,
                      "c_{n-2} = " + rational_str(c_next) + ", expected " +
                          rational_str(spec.expected_c_next)});
    bool lower_zero = true;
    for (int j = 0; j < n - 2; ++j)
        if (f.c[static_cast<std::size_t>(j)] != 0) lower_zero = false;
    checks.push_back({"lower-coeffs-zero", lower_zero, "c_j = 0 for j < n-2"});

    // Newton polygon of the quadratic factor g(x) = x^2 + c_{n-1} x + c_{n-2}.
    CharPoly<Rational> g{2, {c_next, c_top}};
    const auto rv = root_valuations(newton_polygon(g, field));
    const bool roots_ok =
        rv.size() == 1 && rv[0].first == spec.expected_root_ord && rv[0].second == 2;
    std::string rv_str;
    for (const auto& [v, c] : rv)
        rv_str += "(" + rational_str(v) + ", " + std::to_string(c) + ") ";
    checks.push_back({"root-valuations", roots_ok,
                      "got " + rv_str + "; expected (" + rational_str(spec.expected_root_ord) +
                          ", 2)"});

    const HypothesisReport hyp = check_hypothesis(a, field);
    const StrictMax sm = certify_strict_max(newton_polygon(f, field), hyp);
    checks.push_back({"no-strict-max", !sm.certified, sm.explanation});
    const bool margin_zero =
        hyp.ell.has_value() && hyp.margin.has_value() && *hyp.margin == Valuation(0);
    checks.push_back({"margin-zero", margin_zero,
                      "l = " + (hyp.ell ? hyp.ell->str() : std::string("none")) +
                          ", 2 ord(n) = " + hyp.ord_n.times(2).str()});

    const Rational disc = c_top * c_top - Rational(4) * c_next;
    checks.push_back({"discriminant-nonzero", disc != 0, rational_str(disc)});

    bool all = true;
    for (const auto& c : checks) all = all && c.pass;
    return CounterexampleReport{spec, std::move(a), std::move(f), std::move(checks), all};
}

enum class LPolicy { minimal, minimal_plus_one, random_in_range };

inline const char* l_policy_name(LPolicy p) {
    switch (p) {
        case LPolicy::minimal: return "minimal";
        case LPolicy::minimal_plus_one: return "minimal-plus-one";
        default: return "random-in-range";
    }
}

struct CampaignConfig {
    std::vector<long long> primes;
    int max_dim = 6;
    int trials = 100;
    std::uint64_t seed = 0;
    LPolicy l_policy = LPolicy::minimal_plus_one;
    FieldKind kind = FieldKind::padic;
    int precision = 32;
    int max_squarings = 64;
};

struct CampaignFailure {
    std::uint64_t seed;
    long long p;
    int n;
    long long ell;
    int dim;
    std::vector<std::string> entries; // row-major exact entries
    std::string failed_check;
    std::string message;
};

struct CampaignReport {
    CampaignConfig config;
    int passes;
    int total;
    std::vector<CampaignFailure> failures;
};

namespace detail {

// First failed check name, or empty when the analysis satisfies the full
// invariant suite (bound certificates first, then the eigenpair conclusions).
template <class F>
std::pair<std::string, std::string> run_trial_checks(const PerronReport<F>& rep, long long d,
                                                     int precision) {
    bool det_ok = false, coeff_ok = true, trace_seen = false, trace_ok = false;
    for (const auto& c : rep.certificates) {
        if (c.claim == "det-bound") det_ok = c.holds;
        else if (c.claim == "trace-identity") { trace_seen = true; trace_ok = c.holds; }
        else if (!c.holds) coeff_ok = false;
    }
    if (!det_ok) return {"det-bound", "determinant bound certificate failed"};
    if (!coeff_ok) return {"coeff-bound", "coefficient bound certificate failed"};
    if (!trace_seen || !trace_ok) return {"trace-identity", "trace identity certificate failed"};
    if (!rep.hypothesis.satisfied) return {"hypothesis-satisfied", "sampled matrix rejected"};
    if (!rep.strict_max.certified || rep.strict_max.mode != "theorem")
        return {"strict-max", rep.strict_max.explanation};
    if (!rep.eigenvalue || rep.eigenvalue->valuation != d)
        return {"lambda-valuation", "ord(lambda) != ord(n)"};
    if (!rep.eigenvalue->disc_certified) return {"lambda-disc", "lambda not in D(n, |pi|^l/|n|)"};
    if (!rep.eigenvector || !rep.eigenvector->disc_certified)
        return {"eigenvector-disc", "component not in D(1, |pi|^l/|n|)"};
    const long long floor = precision - 2 * d;
    if (!rep.projection) return {"projection", "missing projection"};
    if (rep.projection->idem_bound < floor)
        return {"projection-idempotent", "ord(P^2 - P) below certified floor"};
    if (rep.projection->eigen_bound < floor)
        return {"projection-eigen", "ord(AP - lambda P) below certified floor"};
    if (rep.projection->trace_bound < floor)
        return {"projection-trace", "ord(tr P - 1) below certified floor"};
    if (rep.projection->certified_abs < floor)
        return {"certified-precision-floor", "certified precision below floor"};
    return {"", ""};
}

template <class F>
void campaign_over(const CampaignConfig& cfg, CampaignReport& out) {
    for (const long long p : cfg.primes) {
        for (int n = 2; n <= cfg.max_dim; ++n) {
            if (cfg.kind == FieldKind::laurent && n % p == 0)
                continue; // ord(n) = +infinity: the hypothesis is unsatisfiable
            const F field(p, cfg.precision);
            const long long d_ll = [&] {
                const Valuation v = field.ord_exact(field.exact_from_int(n));
                return v.is_infinite() ? 0 : v.value();
            }();
            for (int t = 0; t < cfg.trials; ++t) {
                const std::uint64_t seed = trial_seed(cfg.seed, p, n, t);
                DetRng rng(seed);
                long long ell = 2 * d_ll + 1;
                if (cfg.l_policy == LPolicy::minimal_plus_one) ell += 1;
                else if (cfg.l_policy == LPolicy::random_in_range)
                    ell += static_cast<long long>(rng.below(5));
                if (ell > cfg.precision - 8)
                    throw InputError("campaign: precision too small for sampled l");
                const auto a = sample_hypothesis_matrix(field, n, ell, rng);
                ++out.total;
                std::string check, message;
                try {
                    const auto rep = analyze(a, field, AnalyzeOptions{cfg.max_squarings});
                    std::tie(check, message) = run_trial_checks(rep, d_ll, cfg.precision);
                } catch (const Error& e) {
                    check = "exception";
                    message = e.what();
                }
                if (check.empty()) {
                    ++out.passes;
                } else {
                    CampaignFailure fail;
                    fail.seed = seed;
                    fail.p = p;
                    fail.n = n;
                    fail.ell = ell;
                    fail.dim = n;
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            fail.entries.push_back(field.exact_str(a.at(i, j)));
                    fail.failed_check = check;
                    fail.message = message;
                    out.failures.push_back(std::move(fail));
                }
            }
        }
    }
}

} // namespace detail

// Samples hypothesis-satisfying matrices, runs the full pipeline on each, and
// asserts every bound certificate and eigenpair conclusion. Reproducible from
// the seed; any failure is an implementation defect by construction.
inline CampaignReport run_campaign(const CampaignConfig& cfg) {
    if (cfg.trials < 0) throw InputError("campaign: trials must be >= 0");
    if (cfg.primes.empty()) throw InputError("campaign: no primes given");
    CampaignReport out{cfg, 0, 0, {}};
    if (cfg.kind == FieldKind::padic)
        detail::campaign_over<PadicField>(cfg, out);
    else
        detail::campaign_over<LaurentField>(cfg, out);
    return out;
}

} // namespace perron
