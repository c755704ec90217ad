#pragma once

#include <string>

#include "perron/element.hpp"

namespace perron {

// Bundles a FieldContext with exact-subfield arithmetic and the embedding
// into finite-precision elements. Two instances: Field<PadicOps> works over
// Q (dense in Q_p), Field<LaurentOps> over F_p(t) (dense in F_p((t))).
template <class Ops>
class Field {
public:
    using ops_type = Ops;
    using Exact = typename Ops::Exact;
    using Elem = Element<Ops>;

    Field(long long p, int working_precision)
        : ctx_(Ops::kind, p, working_precision) {
        if (p > 2147483647LL)
            throw InputError("residue characteristic too large (must fit in 31 bits)");
    }

    explicit Field(const FieldContext& ctx) : Field(ctx.residue_char(), ctx.working_precision()) {
        if (ctx.kind() != Ops::kind)
            throw InputError("Field: context kind mismatch");
    }

    const FieldContext& context() const { return ctx_; }
    long long p() const { return ctx_.residue_char(); }
    int precision() const { return ctx_.working_precision(); }

    Field with_precision(int n) const { return Field(ctx_.residue_char(), n); }

    Exact exact_from_int(long long v) const { return Ops::exact_from_int(ctx_, v); }

    // pi^v as an exact scalar (v may be negative).
    Exact exact_uniformizer_pow(long long v) const {
        if constexpr (Ops::kind == FieldKind::padic) {
            if (v >= 0) return Rational(pow_int(ctx_.residue_char(), v));
            return Rational(1) / Rational(pow_int(ctx_.residue_char(), -v));
        } else {
            const RatFunc t = RatFunc::from_poly(FpPoly::monomial(ctx_.residue_char(), 1, 1));
            RatFunc out = RatFunc::from_int(ctx_.residue_char(), 1);
            for (long long i = 0; i < (v >= 0 ? v : -v); ++i) out *= t;
            if (v >= 0) return out;
            return RatFunc::from_int(ctx_.residue_char(), 1) / out;
        }
    }

    Exact parse_exact(const std::string& s) const { return Ops::parse_exact(ctx_, s); }
    std::string exact_str(const Exact& q) const { return Ops::exact_str(ctx_, q); }
    Valuation ord_exact(const Exact& q) const { return Ops::ord_exact(ctx_, q); }

    bool exact_is_zero(const Exact& q) const { return ord_exact(q).is_infinite(); }

    // Exact disc membership: ord(x - c) >= radius, always decidable.
    bool in_disc_exact(const Exact& x, const Exact& c, Valuation radius) const {
        return ord_exact(x - c) >= radius;
    }

    // q at full working precision; ord of the result is exact.
    Elem embed(const Exact& q) const {
        if (exact_is_zero(q)) return Elem::zero_at(ctx_, ctx_.working_precision());
        auto [val, unit] = Ops::unit_of_exact(ctx_, q, ctx_.working_precision());
        return Elem::make(ctx_, val, std::move(unit), ctx_.working_precision());
    }

    Elem embed_int(long long v) const { return embed(exact_from_int(v)); }
    Elem zero() const { return Elem::zero_at(ctx_, ctx_.working_precision()); }
    Elem one() const { return embed_int(1); }

private:
    FieldContext ctx_;
};

using PadicField = Field<PadicOps>;
using LaurentField = Field<LaurentOps>;

} // namespace perron
