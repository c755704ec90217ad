#pragma once

#include <optional>
#include <string>

#include "perron/field.hpp"

namespace perron {

enum class RenderStyle { digits, unit_val, rational_guess };

inline std::string superscript(long long n) {
    static const char* sup[10] = {"⁰", "¹", "²", "³", "⁴",
                                  "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string out;
    if (n < 0) {
        out += "⁻";
        n = -n;
    }
    const std::string dec = std::to_string(n);
    for (char c : dec) out += sup[c - '0'];
    return out;
}

// Bounded-height rational reconstruction of a p-adic element from its unit
// part mod p^k, then rescaled by p^val. Returns nothing when no fraction of
// height <= height_bound matches.
inline std::optional<Rational> reconstruct_rational(const PadicElem& x, const BigInt& height_bound) {
    if (x.is_zero()) return Rational(0);
    const long long p = x.context().residue_char();
    const BigInt m = pow_int(p, x.rel_precision());
    BigInt r0 = m, s0 = 0, r1 = x.unit(), s1 = 1;
    while (r1 > height_bound) {
        if (r1 == 0) return std::nullopt;
        const BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        BigInt s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    BigInt a = r1, b = s1;
    if (b == 0) return std::nullopt;
    if (b < 0) { a = -a; b = -b; }
    if (b > height_bound || boost::multiprecision::abs(a) > height_bound) return std::nullopt;
    if (boost::multiprecision::gcd(b, BigInt(p)) != 1) return std::nullopt;
    Rational guess(a, b);
    const BigInt num = boost::multiprecision::numerator(guess);
    const BigInt den = boost::multiprecision::denominator(guess);
    if ((num - x.unit() * den) % m != 0) return std::nullopt;
    const long long v = x.val();
    if (v >= 0)
        return guess * Rational(pow_int(p, v));
    return guess / Rational(pow_int(p, -v));
}

// Pade-style reconstruction of a Laurent-series element as a rational
// function with numerator degree <= max_degree.
inline std::optional<RatFunc> reconstruct_ratfunc(const LaurentElem& x, int max_degree) {
    const long long p = x.context().residue_char();
    if (x.is_zero()) return RatFunc(p);
    const int k = x.rel_precision();
    FpPoly r0 = FpPoly::monomial(p, 1, k), s0 = FpPoly(p);
    FpPoly r1 = x.unit(), s1 = FpPoly::constant(p, 1);
    while (!r1.is_zero() && r1.degree() > max_degree) {
        const auto [q, r2] = FpPoly::divrem(r0, r1);
        const FpPoly s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r1.is_zero() || s1.is_zero()) return std::nullopt;
    if (s1.coeff(0) == 0) return std::nullopt;
    if (s1.degree() > std::max(0, k - 1 - max_degree)) return std::nullopt;
    RatFunc guess(r1, s1);
    // Verify num == unit * den mod t^k on the normalized representative.
    const FpPoly check = (guess.num() - (x.unit() * guess.den()).truncated(k)).truncated(k);
    if (!check.is_zero()) return std::nullopt;
    const long long v = x.val();
    const FpPoly tpow = FpPoly::monomial(p, 1, static_cast<int>(v >= 0 ? v : -v));
    if (v >= 0)
        return guess * RatFunc::from_poly(tpow);
    return guess / RatFunc::from_poly(tpow);
}

inline constexpr long long kDefaultGuessHeight = 1000000;

// Text rendering. Digit style: "d*S^i + ... + O(S^k)" with Unicode
// superscript exponents and zero digits omitted; unit-val style: "(u, v, k)";
// rational-guess style appends " (guess)" or reports failure.
template <class Ops>
std::string render(const Element<Ops>& x, RenderStyle style) {
    const FieldContext& ctx = x.context();
    const std::string sym = ctx.uniformizer_symbol();
    const std::string big_o = "O(" + sym + superscript(x.abs_precision()) + ")";
    if (x.is_zero()) return big_o;

    switch (style) {
        case RenderStyle::digits: {
            std::string out;
            for (int i = 0; i < x.rel_precision(); ++i) {
                const long long d = Ops::digit(ctx, x.unit(), i);
                if (d == 0) continue;
                if (!out.empty()) out += " + ";
                out += std::to_string(d) + "·" + sym + superscript(x.val() + i);
            }
            if (out.empty()) return big_o;
            return out + " + " + big_o;
        }
        case RenderStyle::unit_val:
            return "(" + Ops::unit_str(ctx, x.unit()) + ", " + std::to_string(x.val()) +
                   ", " + std::to_string(x.rel_precision()) + ")";
        case RenderStyle::rational_guess: {
            if constexpr (Ops::kind == FieldKind::padic) {
                const auto guess = reconstruct_rational(x, BigInt(kDefaultGuessHeight));
                if (guess) return rational_str(*guess) + " (guess)";
                return "no rational guess (height <= " + std::to_string(kDefaultGuessHeight) + ")";
            } else {
                const auto guess = reconstruct_ratfunc(x, std::max(0, (x.rel_precision() - 1) / 2));
                if (guess) return guess->str() + " (guess)";
                return "no rational guess (degree <= " +
                       std::to_string(std::max(0, (x.rel_precision() - 1) / 2)) + ")";
            }
        }
    }
    return big_o;
}

} // namespace perron
