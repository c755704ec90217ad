#pragma once

#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "perron/errors.hpp"
#include "perron/valuation.hpp"

namespace perron {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow_int(long long base, long long exp) {
    if (exp < 0) throw Error("pow_int: negative exponent");
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

// Largest e with p^e | x, for nonzero x.
inline long long ord_int(BigInt x, long long p) {
    if (x == 0) throw Error("ord_int: zero argument");
    long long e = 0;
    BigInt q, r;
    for (;;) {
        boost::multiprecision::divide_qr(x, BigInt(p), q, r);
        if (r != 0) return e;
        x = q;
        ++e;
    }
}

inline Valuation ord_rational(const Rational& q, long long p) {
    if (q == 0) return Valuation::infinity();
    return Valuation(ord_int(boost::multiprecision::numerator(q), p) -
                     ord_int(boost::multiprecision::denominator(q), p));
}

inline std::string bigint_str(const BigInt& x) { return x.str(); }

inline std::string rational_str(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline bool parse_bigint(const std::string& s, BigInt& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') return false;
    out = BigInt(s);
    return true;
}

// "a/b" or "a" with optional sign; b > 0 after normalization.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    BigInt num, den = 1;
    if (slash == std::string::npos) {
        if (!parse_bigint(text, num))
            throw InputError("cannot parse rational '" + text + "'");
    } else {
        if (!parse_bigint(text.substr(0, slash), num) ||
            !parse_bigint(text.substr(slash + 1), den))
            throw InputError("cannot parse rational '" + text + "'");
        if (den == 0)
            throw InputError("zero denominator in '" + text + "'");
    }
    return Rational(num, den);
}

// Inverse of a modulo m (gcd(a, m) = 1), via extended Euclid.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt r0 = m, r1 = a % m, s0 = 0, s1 = 1;
    if (r1 < 0) r1 += m;
    while (r1 != 0) {
        const BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        BigInt s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw Error("mod_inverse: arguments not coprime");
    s0 %= m;
    if (s0 < 0) s0 += m;
    return s0;
}

} // namespace perron
