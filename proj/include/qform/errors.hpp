#pragma once

#include <stdexcept>
#include <string>

namespace qform {

// Base for all domain errors raised by the library. Usage errors (bad
// arguments that violate a documented precondition of the caller's own
// making) use std::invalid_argument instead.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroLeadingCoefficient : Error {
    explicit ZeroLeadingCoefficient(const std::string& msg) : Error(msg) {}
};

struct NonIntegralSeries : Error {
    explicit NonIntegralSeries(const std::string& msg) : Error(msg) {}
};

struct BeyondTruncation : Error {
    explicit BeyondTruncation(const std::string& msg) : Error(msg) {}
};

struct UnsupportedCharacter : Error {
    explicit UnsupportedCharacter(const std::string& msg) : Error(msg) {}
};

struct ParityMismatch : Error {
    explicit ParityMismatch(const std::string& msg) : Error(msg) {}
};

struct WeightTooSmall : Error {
    explicit WeightTooSmall(const std::string& msg) : Error(msg) {}
};

struct ConstantTermNotOne : Error {
    explicit ConstantTermNotOne(const std::string& msg) : Error(msg) {}
};

struct ConditionsNotMet : Error {
    explicit ConditionsNotMet(const std::string& msg) : Error(msg) {}
};

struct ResidualNonzero : Error {
    explicit ResidualNonzero(const std::string& msg) : Error(msg) {}
};

struct NonIntegerResult : Error {
    explicit NonIntegerResult(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace qform
