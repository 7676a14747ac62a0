#pragma once

#include <initializer_list>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "semisens/scalar.hpp"

namespace semisens {

/// Domain-of-definition metadata attached to polynomials. Never used for
/// clipping or validation; pairings are algebraic.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

/// Dense polynomial in the monomial basis: coeffs()[n] multiplies x^n.
/// Trailing zero coefficients are normalized away; the zero polynomial has
/// an empty coefficient vector and degree() == kZeroDegree (standing in for
/// degree -infinity).
template <ScalarField S>
class Polynomial {
public:
    static constexpr int kZeroDegree = -1;

    Polynomial() = default;
    explicit Polynomial(std::vector<S> coeffs, Interval iv = {})
        : coeffs_(std::move(coeffs)), interval_(iv) {
        normalize();
    }
    Polynomial(std::initializer_list<S> coeffs) : coeffs_(coeffs) { normalize(); }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(S c) { return Polynomial(std::vector<S>{std::move(c)}); }
    /// x^k
    static Polynomial monomial(int k, S scale = ScalarTraits<S>::from_long(1)) {
        std::vector<S> c(static_cast<size_t>(k) + 1, ScalarTraits<S>::from_long(0));
        c.back() = std::move(scale);
        return Polynomial(std::move(c));
    }

    const std::vector<S>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of x^n (zero beyond the stored degree).
    S coeff(int n) const {
        if (n < 0 || n > degree()) return ScalarTraits<S>::from_long(0);
        return coeffs_[static_cast<size_t>(n)];
    }

    const Interval& interval() const { return interval_; }
    void set_interval(Interval iv) { interval_ = iv; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<S> c(std::max(a.coeffs_.size(), b.coeffs_.size()),
                         ScalarTraits<S>::from_long(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] = c[i] + a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] = c[i] + b.coeffs_[i];
        return Polynomial(std::move(c), a.interval_);
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        return a + (b * ScalarTraits<S>::from_long(-1));
    }
    friend Polynomial operator*(const Polynomial& p, const S& s) {
        std::vector<S> c = p.coeffs_;
        for (auto& ci : c) ci = ci * s;
        return Polynomial(std::move(c), p.interval_);
    }
    friend Polynomial operator*(const S& s, const Polynomial& p) { return p * s; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    void normalize() {
        const S zero = ScalarTraits<S>::from_long(0);
        while (!coeffs_.empty() && coeffs_.back() == zero) coeffs_.pop_back();
    }

    std::vector<S> coeffs_;
    Interval interval_;
};

/// order-th derivative. The interval metadata is carried over.
template <ScalarField S>
Polynomial<S> differentiate(const Polynomial<S>& p, int order) {
    if (order < 0) throw ConfigError("differentiate: negative order");
    std::vector<S> c = p.coeffs();
    for (int pass = 0; pass < order; ++pass) {
        if (c.empty()) break;
        std::vector<S> d;
        d.reserve(c.size() - 1);
        for (size_t n = 1; n < c.size(); ++n)
            d.push_back(c[n] * ScalarTraits<S>::from_long(static_cast<long>(n)));
        c = std::move(d);
    }
    return Polynomial<S>(std::move(c), p.interval());
}

/// Coefficient convolution. Result carries the first operand's interval.
template <ScalarField S>
Polynomial<S> multiply(const Polynomial<S>& p, const Polynomial<S>& q) {
    if (p.is_zero() || q.is_zero()) return Polynomial<S>::zero();
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    std::vector<S> c(a.size() + b.size() - 1, ScalarTraits<S>::from_long(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
    return Polynomial<S>(std::move(c), p.interval());
}

/// Horner evaluation at x0.
template <ScalarField S>
S evaluate(const Polynomial<S>& p, const S& x0) {
    S acc = ScalarTraits<S>::from_long(0);
    const auto& c = p.coeffs();
    for (size_t i = c.size(); i-- > 0;) acc = acc * x0 + c[i];
    return acc;
}

}  // namespace semisens
