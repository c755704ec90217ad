#pragma once

#include <string>

#include "perron/errors.hpp"

namespace perron {

enum class FieldKind { padic, laurent };

inline const char* kind_name(FieldKind k) {
    return k == FieldKind::padic ? "p-adic" : "laurent-series";
}

inline bool is_prime(long long p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (long long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

// The ambient complete discretely valued field: Q_p with uniformizer p, or
// F_p((t)) with uniformizer t. Immutable after construction.
class FieldContext {
public:
    FieldContext(FieldKind kind, long long residue_char, int working_precision)
        : kind_(kind), p_(residue_char), prec_(working_precision) {
        if (!is_prime(p_))
            throw InputError("residue characteristic " + std::to_string(p_) + " is not prime");
        if (prec_ < 1)
            throw InputError("working precision must be >= 1");
    }

    FieldKind kind() const { return kind_; }
    long long residue_char() const { return p_; }
    int working_precision() const { return prec_; }

    std::string uniformizer_symbol() const {
        return kind_ == FieldKind::padic ? std::to_string(p_) : "t";
    }

    FieldContext with_precision(int n) const { return FieldContext(kind_, p_, n); }

    // Same field, possibly different working precision.
    bool same_field(const FieldContext& o) const {
        return kind_ == o.kind_ && p_ == o.p_;
    }

    friend bool operator==(const FieldContext& a, const FieldContext& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_ && a.prec_ == b.prec_;
    }
    friend bool operator!=(const FieldContext& a, const FieldContext& b) { return !(a == b); }

private:
    FieldKind kind_;
    long long p_;
    int prec_;
};

inline void require_same_context(const FieldContext& a, const FieldContext& b,
                                 const char* where) {
    if (a != b)
        throw InputError(std::string(where) + ": field context mismatch");
}

} // namespace perron
