#pragma once

#include <stdexcept>
#include <string>

namespace mnl {

/// Bad input: out-of-range exponents, mismatched dimensions, malformed files.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A property that must hold mathematically did not hold numerically.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

/// No region of the exponent function matched a point of the hypercube.
class CoverageViolation : public InvariantViolation {
public:
    explicit CoverageViolation(const std::string& what) : InvariantViolation(what) {}
};

}  // namespace mnl
