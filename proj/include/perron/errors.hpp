#pragma once

#include <stdexcept>
#include <string>

namespace perron {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input: unparseable rationals, non-prime residue
// characteristic, ragged matrices, context mismatches.
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

// A certificate that should hold under the established preconditions failed:
// non-contracting Newton iteration, eigenvector normalization with the wrong
// valuation, disc-membership violations, non-stabilizing projection.
class CertificationError : public Error {
public:
    explicit CertificationError(const std::string& msg) : Error(msg) {}
};

// Working precision ran out before a decision could be made.
class PrecisionError : public Error {
public:
    explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

} // namespace perron
