#pragma once

#include <stdexcept>
#include <string>

namespace semisens {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A polynomial or functional exceeded the truncation degree of its
/// counterpart. Raised instead of truncating silently.
class DegreeError : public Error {
public:
    explicit DegreeError(const std::string& what) : Error(what) {}
};

/// Invalid configuration or construction arguments (nonpositive model
/// parameters, malformed family descriptions, bad CLI input).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Numerical failure inside the semigroup engine: non-finite entries,
/// series or scaling budget exceeded.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(what) {}
};

/// Exponentials are not offered for exact scalar backends.
class ExactScalarError : public Error {
public:
    explicit ExactScalarError(const std::string& what) : Error(what) {}
};

/// A functional that was required to be stationary is not.
class StationarityError : public Error {
public:
    StationarityError(const std::string& what, double residual)
        : Error(what), max_residual(residual) {}
    double max_residual;
};

}  // namespace semisens
