#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "semisens/moment_functional.hpp"
#include "semisens/semigroup.hpp"

namespace semisens {

/// Finite-difference configuration. Central differences with one Richardson
/// level are the double-precision sweet spot here; forward differences carry
/// a first-order bias comparable to the sensitivities themselves at the
/// default step sizes.
struct OracleConfig {
    std::vector<double> thetas{1e-2, 1e-3, 1e-4};
    int richardson_levels = 1;
    double tol_report = 1e-6;

    void validate() const {
        if (thetas.empty()) throw ConfigError("OracleConfig: empty theta sequence");
        for (size_t i = 0; i < thetas.size(); ++i) {
            if (!(thetas[i] > 0)) throw ConfigError("OracleConfig: thetas must be positive");
            if (i > 0 && !(thetas[i] < thetas[i - 1]))
                throw ConfigError("OracleConfig: thetas must be strictly decreasing");
        }
        if (richardson_levels < 0)
            throw ConfigError("OracleConfig: richardson_levels must be >= 0");
    }
};

/// <U_theta(t) xi | pi0>, the evolved pairing the sensitivities differentiate.
inline double evolved_pairing(const GeneratorFamily<double>& family,
                              const MomentFunctional<double>& pi0,
                              const Polynomial<double>& xi, double theta, double t, int n,
                              double tol = 1e-12, EngineStats* stats = nullptr) {
    if (xi.degree() > n)
        throw DegreeError("evolved_pairing: degree(xi) exceeds truncation degree");
    OperatorMatrix<double> u = propagator(matrix(family, theta, n), t, tol, stats);
    return pair(u.apply_to(xi), pi0);
}

struct OracleResult {
    double value = 0.0;
    double error_estimate = 0.0;
    /// Set when the extrapolation residuals fail to decrease; the value is
    /// then the best available estimate, not a converged one.
    bool non_decreasing_residuals = false;
    std::vector<double> central_differences;
};

/// Richardson-extrapolated central differences of
/// theta -> <U_theta(t) xi | pi0> at theta = 0. Negative theta enters only
/// as a formal matrix parameter: the family is affine in theta, so the
/// two-sided limit is well-defined even where the probabilistic model
/// requires theta >= 0.
inline OracleResult central_difference_sensitivity(const GeneratorFamily<double>& family,
                                                   const MomentFunctional<double>& pi0,
                                                   const Polynomial<double>& xi, double t, int n,
                                                   const OracleConfig& config = {},
                                                   double tol = 1e-12,
                                                   EngineStats* stats = nullptr) {
    config.validate();
    auto f = [&](double theta) {
        return evolved_pairing(family, pi0, xi, theta, t, n, tol, stats);
    };

    OracleResult out;
    std::vector<double> table;
    table.reserve(config.thetas.size());
    for (double h : config.thetas) {
        double d = (f(h) - f(-h)) / (2.0 * h);
        table.push_back(d);
        out.central_differences.push_back(d);
    }

    // Ratio-aware Richardson on the even error expansion d(h) = L + c2 h^2
    // + c4 h^4 + ...: each level cancels the leading power using the actual
    // step ratios (the default sequence is decade-spaced, not halved).
    int levels = std::min<int>(config.richardson_levels,
                               static_cast<int>(config.thetas.size()) - 1);
    std::vector<double> steps = config.thetas;
    double prev_residual = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= levels; ++level) {
        std::vector<double> next(table.size() - 1);
        for (size_t i = 0; i + 1 < table.size(); ++i) {
            double r = steps[i] / steps[i + 1];
            double w = std::pow(r, 2.0 * level);
            next[i] = (w * table[i + 1] - table[i]) / (w - 1.0);
        }
        double residual = std::fabs(next.back() - table.back());
        if (level > 1 && residual > prev_residual) out.non_decreasing_residuals = true;
        prev_residual = residual;
        table = std::move(next);
        steps.erase(steps.begin());
    }

    out.value = table.back();
    out.error_estimate = table.size() >= 2 ? std::fabs(table.back() - table[table.size() - 2])
                                           : prev_residual;
    return out;
}

/// max over j <= n of |<x^j | A_theta* mu>|: zero exactly when mu is
/// stationary for A_theta.
template <ScalarField S>
S stationarity_residual(const GeneratorFamily<S>& family, const S& theta,
                        const MomentFunctional<S>& mu, int n) {
    return adjoint_apply(matrix(family, theta, n), mu).max_abs_moment();
}

}  // namespace semisens
