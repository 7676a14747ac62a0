#pragma once

#include <cmath>
#include <concepts>
#include <cstdio>
#include <string>

#include "semisens/rational.hpp"

namespace semisens {

/// Traits mediating between the two scalar backends: exact rationals for
/// algebraic identities, double precision for exponentials. Generic code
/// is written against this surface only.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool is_exact = false;
    static double from_long(long n) { return static_cast<double>(n); }
    static double from_ratio(long num, long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    static double from_double(double x) { return x; }
    static double abs(double x) { return std::fabs(x); }
    static double to_double(double x) { return x; }
    static std::string to_string(double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool is_exact = true;
    static Rational from_long(long n) { return Rational(n); }
    static Rational from_ratio(long num, long den) { return Rational(num, den); }
    static Rational from_double(double x) { return Rational::from_double(x); }
    static Rational abs(const Rational& x) { return semisens::abs(x); }
    static double to_double(const Rational& x) { return x.to_double(); }
    static std::string to_string(const Rational& x) { return x.to_string(); }
};

template <class S>
concept ScalarField = requires(S a, S b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { a / b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
    { a == b } -> std::convertible_to<bool>;
    { a < b } -> std::convertible_to<bool>;
    { ScalarTraits<S>::from_long(1L) } -> std::convertible_to<S>;
};

}  // namespace semisens
