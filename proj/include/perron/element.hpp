#pragma once

#include <map>
#include <string>
#include <utility>

#include "perron/context.hpp"
#include "perron/errors.hpp"
#include "perron/fp_poly.hpp"
#include "perron/rational.hpp"
#include "perron/valuation.hpp"

namespace perron {

// Unit-part arithmetic for Q_p. Units are integers reduced into [0, p^k)
// with residue coprime to p; k is the relative precision in play.
struct PadicOps {
    using Unit = BigInt;
    using Exact = Rational;
    static constexpr FieldKind kind = FieldKind::padic;

    static const BigInt& modulus(long long p, int k) {
        thread_local std::map<std::pair<long long, int>, BigInt> cache;
        const auto key = std::make_pair(p, k);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, pow_int(p, k)).first;
        return it->second;
    }

    static Unit reduce(const FieldContext& ctx, Unit u, int k) {
        u %= modulus(ctx.residue_char(), k);
        if (u < 0) u += modulus(ctx.residue_char(), k);
        return u;
    }

    // min(ord_p(u), k) for u already reduced mod p^k.
    static int trailing(const FieldContext& ctx, const Unit& u, int k) {
        if (u == 0) return k;
        return static_cast<int>(ord_int(u, ctx.residue_char()));
    }

    static Unit shift_up(const FieldContext& ctx, const Unit& u, int j) {
        return u * pow_int(ctx.residue_char(), j);
    }
    static Unit shift_down(const FieldContext& ctx, const Unit& u, int j) {
        return u / pow_int(ctx.residue_char(), j);
    }

    static Unit add(const FieldContext& ctx, const Unit& a, const Unit& b, int k) {
        return reduce(ctx, a + b, k);
    }
    static Unit neg(const FieldContext& ctx, const Unit& a, int k) {
        return reduce(ctx, -a, k);
    }
    static Unit mul(const FieldContext& ctx, const Unit& a, const Unit& b, int k) {
        return reduce(ctx, a * b, k);
    }
    static Unit inv(const FieldContext& ctx, const Unit& a, int k) {
        return mod_inverse(a, modulus(ctx.residue_char(), k));
    }

    static long long residue(const FieldContext& ctx, const Unit& u) {
        return static_cast<long long>(u % ctx.residue_char());
    }
    static long long digit(const FieldContext& ctx, const Unit& u, int i) {
        return static_cast<long long>((u / pow_int(ctx.residue_char(), i)) % ctx.residue_char());
    }
    static std::string unit_str(const FieldContext&, const Unit& u) { return u.str(); }

    static Valuation ord_exact(const FieldContext& ctx, const Exact& q) {
        return ord_rational(q, ctx.residue_char());
    }

    // Valuation and unit part (mod p^k) of a nonzero exact rational.
    static std::pair<long long, Unit> unit_of_exact(const FieldContext& ctx, const Exact& q, int k) {
        const long long p = ctx.residue_char();
        BigInt num = boost::multiprecision::numerator(q);
        BigInt den = boost::multiprecision::denominator(q);
        const long long vn = ord_int(num, p);
        const long long vd = ord_int(den, p);
        num /= pow_int(p, vn);
        den /= pow_int(p, vd);
        const BigInt& m = modulus(p, k);
        Unit u = (num % m) * mod_inverse(den, m) % m;
        if (u < 0) u += m;
        return {vn - vd, u};
    }

    static Exact parse_exact(const FieldContext&, const std::string& s) {
        return parse_rational(s);
    }
    static std::string exact_str(const FieldContext&, const Exact& q) { return rational_str(q); }
    static Exact exact_from_int(const FieldContext&, long long v) { return Rational(v); }
};

// Unit-part arithmetic for F_p((t)). Units are truncated power series with
// nonzero constant term, stored as FpPoly of degree < k.
struct LaurentOps {
    using Unit = FpPoly;
    using Exact = RatFunc;
    static constexpr FieldKind kind = FieldKind::laurent;

    static Unit reduce(const FieldContext&, const Unit& u, int k) { return u.truncated(k); }

    static int trailing(const FieldContext&, const Unit& u, int k) {
        const int t = u.trailing_degree();
        return t < 0 ? k : std::min(t, k);
    }

    static Unit shift_up(const FieldContext&, const Unit& u, int j) { return u.shifted(j); }
    static Unit shift_down(const FieldContext&, const Unit& u, int j) { return u.shifted(-j); }

    static Unit add(const FieldContext&, const Unit& a, const Unit& b, int k) {
        return (a + b).truncated(k);
    }
    static Unit neg(const FieldContext&, const Unit& a, int k) { return (-a).truncated(k); }
    static Unit mul(const FieldContext&, const Unit& a, const Unit& b, int k) {
        return (a * b).truncated(k);
    }
    static Unit inv(const FieldContext&, const Unit& a, int k) { return a.series_inverse(k); }

    static long long residue(const FieldContext&, const Unit& u) { return u.coeff(0); }
    static long long digit(const FieldContext&, const Unit& u, int i) { return u.coeff(i); }
    static std::string unit_str(const FieldContext&, const Unit& u) { return u.str(); }

    static Valuation ord_exact(const FieldContext&, const Exact& q) { return q.ord_t(); }

    static std::pair<long long, Unit> unit_of_exact(const FieldContext&, const Exact& q, int k) {
        const int tn = q.num().trailing_degree();
        const int td = q.den().trailing_degree();
        const FpPoly a = q.num().shifted(-tn);
        const FpPoly b = q.den().shifted(-td);
        return {tn - td, (a * b.series_inverse(k)).truncated(k)};
    }

    static Exact parse_exact(const FieldContext& ctx, const std::string& s) {
        return parse_ratfunc(s, ctx.residue_char());
    }
    static std::string exact_str(const FieldContext&, const Exact& q) { return q.str(); }
    static Exact exact_from_int(const FieldContext& ctx, long long v) {
        return RatFunc::from_int(ctx.residue_char(), v);
    }
};

// An element of K known to finite precision: pi^val * (unit + O(pi^k)) with
// unit invertible in the residue ring, or the zero-at-precision state O(pi^m)
// whose true valuation is only known to be >= m. Immutable.
template <class Ops>
class Element {
public:
    using Unit = typename Ops::Unit;

    static Element zero_at(const FieldContext& ctx, long long bound) {
        Element e(ctx);
        e.zero_ = true;
        e.v_ = bound;
        return e;
    }

    static Element make(const FieldContext& ctx, long long val, Unit u, int rel_prec) {
        const int k = std::min(rel_prec, ctx.working_precision());
        // No retained digits: all that survives is the bound ord >= val + k.
        if (k <= 0) return zero_at(ctx, val + k);
        u = Ops::reduce(ctx, std::move(u), k);
        const int j = Ops::trailing(ctx, u, k);
        if (j >= k) return zero_at(ctx, val + k);
        Element e(ctx);
        e.zero_ = false;
        e.v_ = val + j;
        e.prec_ = k - j;
        e.unit_ = j == 0 ? std::move(u) : Ops::shift_down(ctx, u, j);
        return e;
    }

    const FieldContext& context() const { return ctx_; }
    bool is_zero() const { return zero_; }

    Ord ord() const {
        if (zero_) return Ord::at_least(Valuation(v_));
        return Ord::exactly(Valuation(v_));
    }

    // +infinity for the zero-at-precision element, per the canonical-zero rule.
    Valuation valuation() const {
        return zero_ ? Valuation::infinity() : Valuation(v_);
    }

    long long val() const {
        if (zero_) throw Error("Element::val on zero-at-precision element");
        return v_;
    }
    long long zero_bound() const {
        if (!zero_) throw Error("Element::zero_bound on nonzero element");
        return v_;
    }
    int rel_precision() const { return zero_ ? 0 : prec_; }
    long long abs_precision() const { return zero_ ? v_ : v_ + prec_; }

    const Unit& unit() const {
        if (zero_) throw Error("Element::unit on zero-at-precision element");
        return unit_;
    }

    long long residue() const { return zero_ ? 0 : Ops::residue(ctx_, unit_); }

    friend Element operator+(const Element& a, const Element& b) {
        require_same_context(a.ctx_, b.ctx_, "Element::add");
        if (a.zero_ && b.zero_) return zero_at(a.ctx_, std::min(a.v_, b.v_));
        if (a.zero_) return b.truncated_abs(a.v_);
        if (b.zero_) return a.truncated_abs(b.v_);
        const long long v = std::min(a.v_, b.v_);
        const long long m = std::min(a.abs_precision(), b.abs_precision());
        const int k = static_cast<int>(m - v);
        const Unit ua = a.aligned_unit(v, k);
        const Unit ub = b.aligned_unit(v, k);
        return make(a.ctx_, v, Ops::add(a.ctx_, ua, ub, k), k);
    }

    friend Element operator-(const Element& a, const Element& b) { return a + (-b); }

    Element operator-() const {
        if (zero_) return *this;
        Element e(ctx_);
        e.zero_ = false;
        e.v_ = v_;
        e.prec_ = prec_;
        e.unit_ = Ops::neg(ctx_, unit_, prec_);
        return e;
    }

    friend Element operator*(const Element& a, const Element& b) {
        require_same_context(a.ctx_, b.ctx_, "Element::mul");
        // v_ is the valuation (nonzero case) or the O(pi^m) bound (zero case);
        // either way ord of the product is at least the sum.
        if (a.zero_ || b.zero_) return zero_at(a.ctx_, a.v_ + b.v_);
        const int k = std::min(a.prec_, b.prec_);
        Element e(a.ctx_);
        e.zero_ = false;
        e.v_ = a.v_ + b.v_;
        e.prec_ = k;
        e.unit_ = Ops::mul(a.ctx_, a.unit_, b.unit_, k);
        return e;
    }

    Element inv() const {
        if (zero_)
            throw PrecisionError("inversion of zero-at-precision element O(" +
                                 ctx_.uniformizer_symbol() + "^" + std::to_string(v_) + ")");
        Element e(ctx_);
        e.zero_ = false;
        e.v_ = -v_;
        e.prec_ = prec_;
        e.unit_ = Ops::inv(ctx_, unit_, prec_);
        return e;
    }

    friend Element operator/(const Element& a, const Element& b) { return a * b.inv(); }

    // Weaken to absolute precision at most m.
    Element truncated_abs(long long m) const {
        if (zero_) return zero_at(ctx_, std::min(v_, m));
        if (m <= v_) return zero_at(ctx_, m);
        const int k = static_cast<int>(std::min<long long>(prec_, m - v_));
        return make(ctx_, v_, unit_, k);
    }

    // Weaken to relative precision at most k.
    Element truncated_rel(int k) const {
        if (zero_) return *this;
        return make(ctx_, v_, unit_, std::min(k, prec_));
    }

    // Move to another working precision of the same field.
    Element rebased(const FieldContext& target) const {
        if (!ctx_.same_field(target))
            throw InputError("Element::rebased: different field");
        if (zero_) return zero_at(target, v_);
        return make(target, v_, unit_, std::min(prec_, target.working_precision()));
    }

    // True when (*this - o) vanishes to absolute precision >= abs_prec.
    bool agrees_with(const Element& o, long long abs_prec) const {
        const Element d = *this - o;
        return d.is_zero() && d.zero_bound() >= abs_prec;
    }

private:
    explicit Element(const FieldContext& ctx)
        : ctx_(ctx), zero_(true), v_(0), prec_(0), unit_(default_unit(ctx)) {}

    static Unit default_unit(const FieldContext& ctx) {
        if constexpr (Ops::kind == FieldKind::laurent)
            return FpPoly(ctx.residue_char());
        else
            return Unit(0);
    }

    // Unit rescaled from valuation v_ down to base valuation v, with k digits.
    // An element whose valuation clears the precision window contributes 0.
    Unit aligned_unit(long long v, int k) const {
        const long long shift = v_ - v;
        if (shift >= k) return default_unit(ctx_);
        const Unit r = Ops::reduce(ctx_, unit_, k - static_cast<int>(shift));
        return shift == 0 ? r : Ops::shift_up(ctx_, r, static_cast<int>(shift));
    }

    FieldContext ctx_;
    bool zero_;
    long long v_;   // valuation (nonzero case) or absolute bound (zero case)
    int prec_;      // relative precision; 0 in the zero case
    Unit unit_;
};

using PadicElem = Element<PadicOps>;
using LaurentElem = Element<LaurentOps>;

enum class Containment { yes, no, undecidable };

inline const char* containment_name(Containment c) {
    switch (c) {
        case Containment::yes: return "yes";
        case Containment::no: return "no";
        default: return "undecidable";
    }
}

// Closed disc D(center, |pi|^radius_val).
template <class Ops>
struct Disc {
    Element<Ops> center;
    long long radius_val;
};

// Membership x in D(c, |pi|^v)  <=>  ord(x - c) >= v, decided at precision.
template <class Ops>
Containment in_disc(const Element<Ops>& x, const Disc<Ops>& d) {
    const Element<Ops> diff = x - d.center;
    if (!diff.is_zero())
        return diff.val() >= d.radius_val ? Containment::yes : Containment::no;
    return diff.zero_bound() >= d.radius_val ? Containment::yes : Containment::undecidable;
}

} // namespace perron
