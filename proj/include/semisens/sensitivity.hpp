#pragma once

#include <functional>
#include <string>
#include <vector>

#include "semisens/moment_functional.hpp"
#include "semisens/semigroup.hpp"

namespace semisens {

/// The weak derivative of theta -> A_theta* pi0 at theta = 0, as a moment
/// functional: the adjoint of the derivative family applied to pi0. Exact
/// for exact scalars, since the theta-dependence is affine.
template <ScalarField S>
MomentFunctional<S> sensitivity_functional(const GeneratorFamily<S>& family,
                                           const MomentFunctional<S>& pi0, int n) {
    return adjoint_apply(matrix(derivative_family_at_zero(family), ScalarTraits<S>::from_long(0), n),
                         pi0);
}

/// Residual of the derivative-equivalence identity A_0* pi0' = -nu:
/// max over j <= n of |<x^j | A_0* pi0'> + <x^j | nu>|. Zero (exactly, for
/// exact scalars) when pi0' is the stationary-vector derivative and nu the
/// sensitivity functional of the same family.
template <ScalarField S>
S stationary_derivative_residual(const GeneratorFamily<S>& family,
                                 const MomentFunctional<S>& pi0_prime,
                                 const MomentFunctional<S>& nu, int n) {
    if (pi0_prime.truncation_degree() != n || nu.truncation_degree() != n)
        throw DegreeError("stationary_derivative_residual: functional degrees must equal n");
    MomentFunctional<S> lhs =
        adjoint_apply(matrix(family, ScalarTraits<S>::from_long(0), n), pi0_prime);
    S worst = ScalarTraits<S>::from_long(0);
    for (int j = 0; j <= n; ++j) {
        S r = ScalarTraits<S>::abs(lhs.moment(j) + nu.moment(j));
        if (worst < r) worst = r;
    }
    return worst;
}

/// The product condition: for each theta, the size of
/// theta^{-1} <[A_theta - A_0] x^j | pi_theta - pi_0>, maximized over
/// j <= n. The caller asserts the returned sequence decreases toward zero.
template <ScalarField S>
std::vector<S> product_condition_residuals(
    const GeneratorFamily<S>& family,
    const std::function<MomentFunctional<S>(const S&)>& pi_theta_provider,
    const MomentFunctional<S>& pi0, const std::vector<S>& thetas, int n) {
    const S zero = ScalarTraits<S>::from_long(0);
    for (size_t k = 0; k < thetas.size(); ++k) {
        if (!(thetas[k] > zero))
            throw ConfigError("product_condition_residuals: thetas must be positive");
        if (k > 0 && !(thetas[k] < thetas[k - 1]))
            throw ConfigError("product_condition_residuals: thetas must be strictly decreasing");
    }
    std::vector<S> out;
    out.reserve(thetas.size());
    for (const S& theta : thetas) {
        MomentFunctional<S> diff = pi_theta_provider(theta) - pi0;
        S worst = zero;
        for (int j = 0; j <= n; ++j) {
            Polynomial<S> xj = Polynomial<S>::monomial(j);
            Polynomial<S> gap = apply(family, theta, xj) - apply(family, zero, xj);
            S r = ScalarTraits<S>::abs(pair(gap, diff) / theta);
            if (worst < r) worst = r;
        }
        out.push_back(worst);
    }
    return out;
}

namespace detail {

template <ScalarField S>
S adjoint_residual(const GeneratorFamily<S>& family, const S& theta,
                   const MomentFunctional<S>& mu, int n) {
    return adjoint_apply(matrix(family, theta, n), mu).max_abs_moment();
}

}  // namespace detail

/// d/dtheta of <xi | U_theta(t)* pi0> at theta = 0, evaluated as
/// <V_0(t) xi | nu>. pi0 must be stationary for A_0; the residual is checked
/// against tol and a violation is a typed error, not a warning, because a
/// non-stationary pi0 silently invalidates the formula.
template <ScalarField S>
S semigroup_sensitivity(const GeneratorFamily<S>& family, const MomentFunctional<S>& pi0,
                        const Polynomial<S>& xi, double t, int n, double tol = 1e-12,
                        EngineStats* stats = nullptr) {
    if (xi.degree() > n)
        throw DegreeError("semigroup_sensitivity: degree(xi) = " + std::to_string(xi.degree()) +
                          " exceeds truncation degree " + std::to_string(n));
    double residual = ScalarTraits<S>::to_double(
        detail::adjoint_residual(family, ScalarTraits<S>::from_long(0), pi0, n));
    if (!(residual <= tol))
        throw StationarityError("semigroup_sensitivity: pi0 is not stationary for A_0 "
                                "(max adjoint residual " +
                                    std::to_string(residual) + " > tol " + std::to_string(tol) + ")",
                                residual);
    return pair(apply_v0(family, xi, t, n, tol, stats), sensitivity_functional(family, pi0, n));
}

/// First-order expansion <xi | U_theta(t)* pi0> ~ <U_0(t) xi | pi0>
/// + theta * sensitivity.
template <ScalarField S>
S first_order_prediction(const GeneratorFamily<S>& family, const MomentFunctional<S>& pi0,
                         const Polynomial<S>& xi, double t, const S& theta, int n,
                         double tol = 1e-12, EngineStats* stats = nullptr) {
    if (xi.degree() > n)
        throw DegreeError("first_order_prediction: degree(xi) exceeds truncation degree");
    OperatorMatrix<S> u =
        propagator(matrix(family, ScalarTraits<S>::from_long(0), n), t, tol, stats);
    S zeroth = pair(u.apply_to(xi), pi0);
    return zeroth + theta * semigroup_sensitivity(family, pi0, xi, t, n, tol, stats);
}

/// Grid of sensitivities over test functions and times, with optional
/// oracle values filled in by the finite-difference module.
struct SensitivityReport {
    std::vector<std::string> xi_labels;
    std::vector<Polynomial<double>> test_functions;
    std::vector<double> times;
    std::vector<std::vector<double>> values;         // [xi][time]
    std::vector<std::vector<double>> oracle_values;  // empty when no oracle ran
    double max_abs_discrepancy = 0.0;
    EngineStats stats;

    bool has_oracle() const { return !oracle_values.empty(); }
};

}  // namespace semisens
