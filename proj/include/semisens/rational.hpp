#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <utility>

#include "semisens/errors.hpp"

namespace semisens {

/// Arbitrary-precision rational scalar. Thin value wrapper around GMP's
/// mpq_class that always returns plain Rational values (no expression
/// templates leaking into generic code) and keeps fractions canonical.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}          // NOLINT: implicit by design
    Rational(long n) : v_(n) {}         // NOLINT
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw ConfigError("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) {
        if (v_.get_den() == 0) throw ConfigError("Rational: zero denominator");
        v_.canonicalize();
    }

    /// Exact conversion: every finite double is a dyadic rational.
    static Rational from_double(double x) {
        if (!std::isfinite(x)) throw ConfigError("Rational: non-finite value");
        return Rational(mpq_class(x));
    }

    /// Parses "num/den" or a plain integer string.
    static Rational from_string(const std::string& s) {
        mpq_class v;
        if (v.set_str(s, 10) != 0)
            throw ConfigError("Rational: cannot parse '" + s + "'");
        return Rational(std::move(v));
    }

    double to_double() const { return v_.get_d(); }
    std::string to_string() const { return v_.get_str(); }  // "num/den" or "num"

    const mpq_class& raw() const { return v_; }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.v_ == 0) throw ConfigError("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& a) { return a < Rational(0) ? -a : a; }

}  // namespace semisens
