#pragma once

#include <string>
#include <utility>
#include <vector>

#include "semisens/operator_matrix.hpp"
#include "semisens/polynomial.hpp"

namespace semisens {

/// A linear functional on polynomials, stored by its moment sequence
/// m_n = <x^n | mu> up to a truncation degree N. This is the only faithful
/// finite representation: the functionals of interest are in general not
/// measures or densities.
template <ScalarField S>
class MomentFunctional {
public:
    MomentFunctional() : moments_(1, ScalarTraits<S>::from_long(0)) {}
    explicit MomentFunctional(std::vector<S> moments, bool is_probability = false)
        : moments_(std::move(moments)), is_probability_(is_probability) {
        if (moments_.empty())
            throw ConfigError("MomentFunctional: empty moment vector");
    }

    int truncation_degree() const { return static_cast<int>(moments_.size()) - 1; }
    const std::vector<S>& moments() const { return moments_; }
    const S& moment(int n) const { return moments_[static_cast<size_t>(n)]; }
    bool is_probability() const { return is_probability_; }

    S max_abs_moment() const {
        S m = ScalarTraits<S>::from_long(0);
        for (const auto& x : moments_) {
            S a = ScalarTraits<S>::abs(x);
            if (m < a) m = a;
        }
        return m;
    }

    friend MomentFunctional operator-(const MomentFunctional& a, const MomentFunctional& b) {
        if (a.truncation_degree() != b.truncation_degree())
            throw DegreeError("MomentFunctional operator-: degree mismatch");
        std::vector<S> m(a.moments_.size());
        for (size_t i = 0; i < m.size(); ++i) m[i] = a.moments_[i] - b.moments_[i];
        return MomentFunctional(std::move(m));
    }

private:
    std::vector<S> moments_;
    bool is_probability_ = false;
};

/// The dual pairing <xi | mu> = sum_n coeff_n(xi) * m_n. A polynomial above
/// the functional's truncation degree is an error, never a truncation.
template <ScalarField S>
S pair(const Polynomial<S>& xi, const MomentFunctional<S>& mu) {
    if (xi.degree() > mu.truncation_degree())
        throw DegreeError("pair: polynomial degree " + std::to_string(xi.degree()) +
                          " exceeds functional truncation degree " +
                          std::to_string(mu.truncation_degree()));
    S acc = ScalarTraits<S>::from_long(0);
    for (int n = 0; n <= xi.degree(); ++n)
        acc = acc + xi.coeffs()[static_cast<size_t>(n)] * mu.moment(n);
    return acc;
}

/// Point evaluation at a: m_k = a^k.
template <ScalarField S>
MomentFunctional<S> dirac(const S& a, int n) {
    std::vector<S> m(static_cast<size_t>(n) + 1);
    m[0] = ScalarTraits<S>::from_long(1);
    for (int k = 1; k <= n; ++k) m[static_cast<size_t>(k)] = m[static_cast<size_t>(k - 1)] * a;
    return MomentFunctional<S>(std::move(m), /*is_probability=*/true);
}

/// Beta(theta, kappa) moments by the telescoping product
/// m_k = prod_{i=0}^{k-1} (theta+i)/(theta+kappa+i). No Gamma evaluation:
/// the product is exact for rational inputs and overflow-free.
template <ScalarField S>
MomentFunctional<S> beta_moments(const S& theta, const S& kappa, int n) {
    const S zero = ScalarTraits<S>::from_long(0);
    if (!(theta > zero) || !(kappa > zero))
        throw ConfigError("beta_moments: parameters must be positive");
    std::vector<S> m(static_cast<size_t>(n) + 1);
    m[0] = ScalarTraits<S>::from_long(1);
    for (int k = 1; k <= n; ++k) {
        S i = ScalarTraits<S>::from_long(k - 1);
        m[static_cast<size_t>(k)] = m[static_cast<size_t>(k - 1)] * (theta + i) / (theta + kappa + i);
    }
    return MomentFunctional<S>(std::move(m), /*is_probability=*/true);
}

/// The theta-derivative of the Beta(theta, kappa) moments at theta = 0:
/// m_0 = 0 and m_k = (k-1)! / prod_{i=0}^{k-1} (kappa+i) for k >= 1,
/// i.e. the limit of m_k(theta)/theta. Closed product form; the differencing
/// version lives in the finite-difference oracle as an independent check.
template <ScalarField S>
MomentFunctional<S> wf_stationary_derivative(const S& kappa, int n) {
    if (!(kappa > ScalarTraits<S>::from_long(0)))
        throw ConfigError("wf_stationary_derivative: kappa must be positive");
    std::vector<S> m(static_cast<size_t>(n) + 1, ScalarTraits<S>::from_long(0));
    if (n >= 1) {
        // m_1 = 1/kappa, then m_k = m_{k-1} * (k-1)/(kappa+k-1).
        m[1] = ScalarTraits<S>::from_long(1) / kappa;
        for (int k = 2; k <= n; ++k) {
            S km1 = ScalarTraits<S>::from_long(k - 1);
            m[static_cast<size_t>(k)] = m[static_cast<size_t>(k - 1)] * km1 / (kappa + km1);
        }
    }
    return MomentFunctional<S>(std::move(m));
}

/// Gaussian moments via m_k = mean*m_{k-1} + (k-1)*variance*m_{k-2}.
template <ScalarField S>
MomentFunctional<S> gaussian_moments(const S& mean, const S& variance, int n) {
    if (!(variance > ScalarTraits<S>::from_long(0)))
        throw ConfigError("gaussian_moments: variance must be positive");
    std::vector<S> m(static_cast<size_t>(n) + 1);
    m[0] = ScalarTraits<S>::from_long(1);
    if (n >= 1) m[1] = mean;
    for (int k = 2; k <= n; ++k)
        m[static_cast<size_t>(k)] = mean * m[static_cast<size_t>(k - 1)] +
                                    ScalarTraits<S>::from_long(k - 1) * variance * m[static_cast<size_t>(k - 2)];
    return MomentFunctional<S>(std::move(m), /*is_probability=*/true);
}

/// The functional xi -> xi'(0): m_1 = 1, all other moments zero.
template <ScalarField S>
MomentFunctional<S> derivative_at_zero(int n) {
    std::vector<S> m(static_cast<size_t>(n) + 1, ScalarTraits<S>::from_long(0));
    if (n >= 1) m[1] = ScalarTraits<S>::from_long(1);
    return MomentFunctional<S>(std::move(m));
}

/// Adjoint action on a moment vector: <S xi | mu> = <xi | S* mu> realized as
/// the transpose action, (S* mu)_j = sum_i entries[i][j] * m_i.
template <ScalarField S>
MomentFunctional<S> adjoint_apply(const OperatorMatrix<S>& m, const MomentFunctional<S>& mu) {
    if (m.truncation_degree() != mu.truncation_degree())
        throw DegreeError("adjoint_apply: matrix degree " +
                          std::to_string(m.truncation_degree()) +
                          " vs functional degree " + std::to_string(mu.truncation_degree()));
    const int n = m.truncation_degree();
    std::vector<S> out(static_cast<size_t>(n) + 1, ScalarTraits<S>::from_long(0));
    for (int j = 0; j <= n; ++j) {
        S acc = ScalarTraits<S>::from_long(0);
        for (int i = 0; i <= j; ++i) acc = acc + m.at(i, j) * mu.moment(i);
        out[static_cast<size_t>(j)] = acc;
    }
    return MomentFunctional<S>(std::move(out));
}

}  // namespace semisens
