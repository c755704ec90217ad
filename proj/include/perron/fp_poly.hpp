#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "perron/errors.hpp"
#include "perron/valuation.hpp"

namespace perron {

inline long long mod_ll(long long a, long long p) {
    long long r = a % p;
    return r < 0 ? r + p : r;
}

inline long long mod_inverse_ll(long long a, long long p) {
    long long r0 = p, r1 = mod_ll(a, p), s0 = 0, s1 = 1;
    while (r1 != 0) {
        const long long q = r0 / r1;
        const long long r2 = r0 - q * r1;
        const long long s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw Error("mod_inverse_ll: not invertible");
    return mod_ll(s0, p);
}

// Dense univariate polynomial over F_p in the variable t. Coefficients are
// stored ascending by degree, reduced into [0, p); no high-order zeros.
class FpPoly {
public:
    explicit FpPoly(long long p) : p_(p) {}

    FpPoly(long long p, std::vector<long long> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& x : c_) x = mod_ll(x, p_);
        trim();
    }

    static FpPoly constant(long long p, long long v) { return FpPoly(p, {v}); }

    static FpPoly monomial(long long p, long long coeff, int deg) {
        std::vector<long long> c(static_cast<std::size_t>(deg) + 1, 0);
        c.back() = coeff;
        return FpPoly(p, std::move(c));
    }

    long long characteristic() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    long long coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
        return c_[static_cast<std::size_t>(i)];
    }

    // Index of the lowest nonzero coefficient; -1 for the zero polynomial.
    int trailing_degree() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) return static_cast<int>(i);
        return -1;
    }

    long long leading_coeff() const { return c_.empty() ? 0 : c_.back(); }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
        a.check(b);
        std::vector<long long> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = mod_ll(a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i)), a.p_);
        return FpPoly(a.p_, std::move(c));
    }

    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        a.check(b);
        std::vector<long long> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = mod_ll(a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i)), a.p_);
        return FpPoly(a.p_, std::move(c));
    }

    FpPoly operator-() const {
        std::vector<long long> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = mod_ll(-c_[i], p_);
        return FpPoly(p_, std::move(c));
    }

    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
        std::vector<long long> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = mod_ll(c[i + j] + a.c_[i] * b.c_[j], a.p_);
        }
        return FpPoly(a.p_, std::move(c));
    }

    FpPoly times_scalar(long long s) const {
        std::vector<long long> c(c_.size());
        s = mod_ll(s, p_);
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = mod_ll(c_[i] * s, p_);
        return FpPoly(p_, std::move(c));
    }

    // Multiply by t^j (j >= 0) or divide exactly by t^(-j) (j < 0).
    FpPoly shifted(int j) const {
        if (is_zero()) return *this;
        if (j >= 0) {
            std::vector<long long> c(c_.size() + static_cast<std::size_t>(j), 0);
            std::copy(c_.begin(), c_.end(), c.begin() + j);
            return FpPoly(p_, std::move(c));
        }
        const int k = -j;
        if (trailing_degree() < k) throw Error("FpPoly::shifted: inexact division by t^k");
        return FpPoly(p_, std::vector<long long>(c_.begin() + k, c_.end()));
    }

    // Truncate modulo t^k.
    FpPoly truncated(int k) const {
        if (k <= 0) return FpPoly(p_);
        if (static_cast<int>(c_.size()) <= k) return *this;
        return FpPoly(p_, std::vector<long long>(c_.begin(), c_.begin() + k));
    }

    static std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b) {
        a.check(b);
        if (b.is_zero()) throw Error("FpPoly::divrem: division by zero");
        FpPoly r = a;
        std::vector<long long> q(std::max<int>(a.degree() - b.degree() + 1, 0), 0);
        const long long lead_inv = mod_inverse_ll(b.leading_coeff(), a.p_);
        while (!r.is_zero() && r.degree() >= b.degree()) {
            const int shift = r.degree() - b.degree();
            const long long f = mod_ll(r.leading_coeff() * lead_inv, a.p_);
            q[static_cast<std::size_t>(shift)] = f;
            r = r - b.shifted(shift).times_scalar(f);
        }
        return {FpPoly(a.p_, std::move(q)), r};
    }

    FpPoly make_monic() const {
        if (is_zero()) return *this;
        return times_scalar(mod_inverse_ll(leading_coeff(), p_));
    }

    static FpPoly gcd(FpPoly a, FpPoly b) {
        while (!b.is_zero()) {
            FpPoly r = divrem(a, b).second;
            a = b;
            b = r;
        }
        return a.make_monic();
    }

    friend bool operator==(const FpPoly& a, const FpPoly& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }
    friend bool operator!=(const FpPoly& a, const FpPoly& b) { return !(a == b); }

    // Power series inverse modulo t^k; requires a nonzero constant term.
    FpPoly series_inverse(int k) const {
        if (coeff(0) == 0) throw Error("FpPoly::series_inverse: constant term is zero");
        const long long c0inv = mod_inverse_ll(coeff(0), p_);
        std::vector<long long> b(static_cast<std::size_t>(k), 0);
        b[0] = c0inv;
        for (int m = 1; m < k; ++m) {
            long long acc = 0;
            for (int j = 1; j <= m; ++j)
                acc = mod_ll(acc + coeff(j) * b[static_cast<std::size_t>(m - j)], p_);
            b[static_cast<std::size_t>(m)] = mod_ll(-acc * c0inv, p_);
        }
        return FpPoly(p_, std::move(b));
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = 0; i <= degree(); ++i) {
            const long long c = coeff(i);
            if (c == 0) continue;
            if (!out.empty()) out += " + ";
            if (i == 0) {
                out += std::to_string(c);
            } else {
                if (c != 1) out += std::to_string(c) + "*";
                out += "t";
                if (i != 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void check(const FpPoly& o) const {
        if (p_ != o.p_) throw Error("FpPoly: mixed characteristics");
    }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    long long p_;
    std::vector<long long> c_;
};

// Parses sums of terms "c", "t", "c*t^k", "c t^k", "-t^2 + 1" over F_p.
inline FpPoly parse_fp_poly(const std::string& text, long long p) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s += ch;
    if (s.empty()) throw InputError("empty polynomial");

    FpPoly result(p);
    std::size_t i = 0;
    while (i < s.size()) {
        long long sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
        }
        if (i >= s.size()) throw InputError("dangling sign in polynomial '" + text + "'");

        long long coeff = 1;
        bool saw_coeff = false;
        if (s[i] >= '0' && s[i] <= '9') {
            coeff = 0;
            while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
                coeff = coeff * 10 + (s[i] - '0');
                if (coeff > (1LL << 50)) coeff = mod_ll(coeff, p);
                ++i;
            }
            saw_coeff = true;
            if (i < s.size() && s[i] == '*') ++i;
        }

        int deg = 0;
        if (i < s.size() && s[i] == 't') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                if (i >= s.size() || s[i] < '0' || s[i] > '9')
                    throw InputError("bad exponent in polynomial '" + text + "'");
                deg = 0;
                while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
                    deg = deg * 10 + (s[i] - '0');
                    if (deg > 100000) throw InputError("exponent too large in '" + text + "'");
                    ++i;
                }
            }
        } else if (!saw_coeff) {
            throw InputError("unexpected character in polynomial '" + text + "'");
        }

        result = result + FpPoly::monomial(p, mod_ll(sign * mod_ll(coeff, p), p), deg);
        if (i < s.size() && s[i] != '+' && s[i] != '-')
            throw InputError("unexpected character in polynomial '" + text + "'");
    }
    return result;
}

// Rational function over F_p: num/den with monic denominator and gcd 1.
// The exact counterpart of F_p((t)) the way Q is the exact counterpart of Q_p.
class RatFunc {
public:
    explicit RatFunc(long long p) : num_(p), den_(FpPoly::constant(p, 1)) {}

    RatFunc(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw InputError("rational function with zero denominator");
        normalize();
    }

    static RatFunc from_poly(FpPoly p) {
        const long long ch = p.characteristic();
        return RatFunc(std::move(p), FpPoly::constant(ch, 1));
    }

    static RatFunc from_int(long long p, long long v) {
        return from_poly(FpPoly::constant(p, v));
    }

    long long characteristic() const { return num_.characteristic(); }
    const FpPoly& num() const { return num_; }
    const FpPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw Error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc operator-() const { return RatFunc(-num_, den_); }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    Valuation ord_t() const {
        if (is_zero()) return Valuation::infinity();
        return Valuation(num_.trailing_degree() - den_.trailing_degree());
    }

    std::string str() const {
        if (den_ == FpPoly::constant(characteristic(), 1)) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = FpPoly::constant(characteristic(), 1);
            return;
        }
        const FpPoly g = FpPoly::gcd(num_, den_);
        num_ = FpPoly::divrem(num_, g).first;
        den_ = FpPoly::divrem(den_, g).first;
        const long long inv = mod_inverse_ll(den_.leading_coeff(), characteristic());
        num_ = num_.times_scalar(inv);
        den_ = den_.times_scalar(inv);
    }

    FpPoly num_;
    FpPoly den_;
};

// Entry grammar: "P", "P/Q", or "(P)/(Q)" with P, Q per parse_fp_poly.
inline RatFunc parse_ratfunc(const std::string& text, long long p) {
    int depth = 0;
    std::size_t split = std::string::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        else if (text[i] == ')') --depth;
        else if (text[i] == '/' && depth == 0) {
            if (split != std::string::npos)
                throw InputError("multiple '/' in rational function '" + text + "'");
            split = i;
        }
    }
    auto strip = [](std::string s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
            int d = 0;
            bool wraps = true;
            for (std::size_t i = 0; i + 1 < s.size(); ++i) {
                if (s[i] == '(') ++d;
                else if (s[i] == ')') --d;
                if (d == 0) { wraps = false; break; }
            }
            if (wraps) return s.substr(1, s.size() - 2);
        }
        return s;
    };
    if (split == std::string::npos)
        return RatFunc::from_poly(parse_fp_poly(strip(text), p));
    const FpPoly num = parse_fp_poly(strip(text.substr(0, split)), p);
    const FpPoly den = parse_fp_poly(strip(text.substr(split + 1)), p);
    if (den.is_zero()) throw InputError("zero denominator in '" + text + "'");
    return RatFunc(num, den);
}

} // namespace perron
