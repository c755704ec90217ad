#pragma once

#include <algorithm>
#include <limits>
#include <string>

#include "perron/errors.hpp"

namespace perron {

// A discrete valuation value: an integer or +infinity (the valuation of zero).
// +infinity absorbs addition and dominates min/comparisons.
class Valuation {
public:
    constexpr Valuation() : v_(0), inf_(false) {}
    constexpr Valuation(long long v) : v_(v), inf_(false) {}

    static constexpr Valuation infinity() {
        Valuation x;
        x.inf_ = true;
        return x;
    }

    bool is_infinite() const { return inf_; }

    long long value() const {
        if (inf_) throw Error("Valuation::value: valuation is +infinity");
        return v_;
    }

    friend Valuation operator+(Valuation a, Valuation b) {
        if (a.inf_ || b.inf_) return infinity();
        return Valuation(a.v_ + b.v_);
    }

    friend Valuation min(Valuation a, Valuation b) {
        if (a.inf_) return b;
        if (b.inf_) return a;
        return Valuation(std::min(a.v_, b.v_));
    }

    // Scale by a non-negative integer; infinity * 0 = 0, matching the limit
    // semantics of the coefficient bounds (a radius-0 exponent means "<= 1").
    Valuation times(long long k) const {
        if (k == 0) return Valuation(0);
        if (inf_) return infinity();
        return Valuation(v_ * k);
    }

    friend bool operator==(Valuation a, Valuation b) {
        if (a.inf_ != b.inf_) return false;
        return a.inf_ || a.v_ == b.v_;
    }
    friend bool operator!=(Valuation a, Valuation b) { return !(a == b); }
    friend bool operator<(Valuation a, Valuation b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(Valuation a, Valuation b) { return b < a; }
    friend bool operator<=(Valuation a, Valuation b) { return !(b < a); }
    friend bool operator>=(Valuation a, Valuation b) { return !(a < b); }

    std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

private:
    long long v_;
    bool inf_;
};

// Result of a valuation query on finite-precision data. When exact is false
// the true valuation is only known to satisfy ord >= value (zero at
// precision); consumers must not treat the bound as the valuation itself.
struct Ord {
    Valuation value;
    bool exact;

    static Ord exactly(Valuation v) { return Ord{v, true}; }
    static Ord at_least(Valuation v) { return Ord{v, false}; }

    std::string str() const { return exact ? value.str() : ">=" + value.str(); }
};

} // namespace perron
