#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "semisens/errata.hpp"
#include "semisens/fd_oracle.hpp"
#include "semisens/models.hpp"
#include "semisens/sensitivity.hpp"

namespace semisens {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline bool all_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace detail

/// Beta(theta, kappa) is stationary for the WF adjoint: exactly, in
/// rational arithmetic, up to degree 16.
inline CheckResult check_wf_beta_stationarity_exact() {
    Rational worst(0);
    for (const Rational& theta : {Rational(1, 10), Rational(1), Rational(3)})
        for (const Rational& kappa : {Rational(1, 2), Rational(1), Rational(2)}) {
            Rational r = stationarity_residual(wf_family<Rational>(kappa), theta,
                                               beta_moments(theta, kappa, 16), 16);
            if (worst < r) worst = r;
        }
    return {"wf-beta-stationarity-exact", worst == Rational(0),
            "max exact residual " + worst.to_string() +
                " over theta in {1/10,1,3}, kappa in {1/2,1,2}, degree 16"};
}

/// The Gaussian stationary law of the OU adjoint at double precision
/// (dyadic means keep even that computation exact).
inline CheckResult check_ou_gaussian_stationarity() {
    double worst = 0.0;
    auto family = ou_family<double>();
    for (double theta : {0.0, 0.5, 1.0, 3.0}) {
        double r = stationarity_residual(family, theta, gaussian_moments(theta, 0.5, 12), 12);
        if (r > worst) worst = r;
    }
    return {"ou-gaussian-stationarity", worst <= 1e-12,
            "max residual " + detail::fmt(worst) +
                " over theta in {0,1/2,1,3}, degree 12 (bound 1e-12)"};
}

/// The derivative-equivalence identity A_0* pi0' = -nu, exact in rationals.
inline CheckResult check_stationary_derivative_identity() {
    Rational worst(0);
    const int n = 16;
    for (const Rational& kappa :
         {Rational(1, 2), Rational(1), Rational(2), Rational(7, 3)}) {
        auto family = wf_family<Rational>(kappa);
        Rational r = stationary_derivative_residual(
            family, wf_stationary_derivative(kappa, n),
            sensitivity_functional(family, dirac(Rational(0), n), n), n);
        if (worst < r) worst = r;
    }
    return {"wf-stationary-derivative-identity-exact", worst == Rational(0),
            "max exact residual " + worst.to_string() +
                " over kappa in {1/2,1,2,7/3}, degree 16"};
}

/// The sensitivity formula against Richardson central differences across
/// both models; this also pins the sign of the formula.
inline CheckResult check_sensitivity_vs_oracle() {
    const int n = 16;
    double worst = 0.0;
    std::string worst_at;
    auto run_grid = [&](const GeneratorFamily<double>& family,
                        const MomentFunctional<double>& pi0, const std::string& label) {
        for (int p = 0; p <= 3; ++p)
            for (double t : {0.1, 0.5, 1.0, 2.0}) {
                auto xi = Polynomial<double>::monomial(p);
                double s = semigroup_sensitivity(family, pi0, xi, t, n);
                double o = central_difference_sensitivity(family, pi0, xi, t, n).value;
                if (std::fabs(s - o) > worst) {
                    worst = std::fabs(s - o);
                    worst_at = label + " x^" + std::to_string(p) + " t=" + detail::fmt(t);
                }
            }
    };
    for (double kappa : {0.5, 1.0, 2.0})
        run_grid(wf_family<double>(kappa), dirac(0.0, n), "wf(kappa=" + detail::fmt(kappa) + ")");
    run_grid(ou_family<double>(), gaussian_moments(0.0, 0.5, n), "ou");
    return {"sensitivity-vs-central-differences", worst <= 1e-6,
            "max |analytic - oracle| " + detail::fmt(worst) + " at " + worst_at +
                " (bound 1e-6)"};
}

/// The WF first-moment sensitivity against the solution of the moment ODE
/// dM1/dt = theta - (theta + kappa) M1.
inline CheckResult check_wf_first_moment_closed_form() {
    const int n = 16;
    double worst = 0.0;
    for (double kappa : {0.5, 1.0, 2.0}) {
        auto family = wf_family<double>(kappa);
        auto pi0 = dirac(0.0, n);
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
            double s = semigroup_sensitivity(family, pi0, Polynomial<double>::monomial(1), t, n);
            worst = std::max(worst, std::fabs(s - (1.0 - std::exp(-kappa * t)) / kappa));
        }
    }
    return {"wf-first-moment-closed-form", worst <= 1e-10,
            "max |value - (1-e^{-kappa t})/kappa| " + detail::fmt(worst) + " (bound 1e-10)"};
}

/// V_0(t) applied to constants is exactly t (the generator kills constants,
/// so only the leading series term survives).
inline CheckResult check_integral_propagator_on_constants() {
    double worst = 0.0;
    auto family = wf_family<double>(1.0);
    for (double t : {0.1, 1.0, 5.0}) {
        Polynomial<double> v1 = apply_v0(family, Polynomial<double>::constant(1.0), t, 8);
        worst = std::max(worst, std::fabs(v1.coeff(0) - t));
        for (int j = 1; j <= v1.degree(); ++j) worst = std::max(worst, std::fabs(v1.coeff(j)));
    }
    return {"integral-propagator-on-constants", worst <= 1e-14,
            "max |V_0(t) 1 - t| " + detail::fmt(worst) + " over t in {0.1,1,5} (bound 1e-14)"};
}

/// OU sensitivities against the closed form from the explicitly evolved
/// Gaussian law.
inline CheckResult check_ou_closed_form() {
    double worst = 0.0;
    const int nd = 12;
    auto family = ou_family<double>();
    auto pi0 = gaussian_moments(0.0, 0.5, nd);
    for (int p = 0; p <= 8; ++p)
        for (double t : {0.1, 1.0, 2.0}) {
            double s = semigroup_sensitivity(family, pi0, Polynomial<double>::monomial(p), t, nd);
            worst = std::max(worst, std::fabs(s - ou_moment_sensitivity_closed_form(p, t)));
        }
    return {"ou-moment-sensitivity-closed-form", worst <= 1e-9,
            "max deviation " + detail::fmt(worst) + " over n <= 8, t in {0.1,1,2} (bound 1e-9)"};
}

/// Repeated exact application of the WF generator reproduces
/// lambda_n^k xi_n + b_{n,k} x bit-for-bit, and pairing with the
/// derivative functional reproduces the b recursion.
inline CheckResult check_quasi_eigen_recursion_exact() {
    bool exact = true;
    std::string fail_at;
    for (const Rational& kappa :
         {Rational(1, 2), Rational(1), Rational(2), Rational(7, 3)}) {
        auto family = wf_family<Rational>(kappa);
        auto nu = derivative_at_zero<Rational>(12);
        for (int n = 2; n <= 10 && exact; ++n) {
            auto basis = wf_basis(n, kappa);
            for (const Rational& b0 : {Rational(0), Rational(1)})
                for (const Rational& a : {Rational(0), Rational(1)}) {
                    auto bs = wf_b_sequence(n, kappa, b0, 10);
                    Polynomial<Rational> p = basis.xi + Polynomial<Rational>::monomial(1) * b0 +
                                             Polynomial<Rational>::constant(a);
                    for (int k = 1; k <= 10; ++k) {
                        p = apply(family, Rational(0), p);
                        if (!(p == wf_quasi_eigen_power(n, kappa, k, b0, a)) ||
                            !(pair(p, nu) == bs.values[static_cast<size_t>(k)])) {
                            exact = false;
                            fail_at = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                      " kappa=" + kappa.to_string();
                            break;
                        }
                    }
                    if (!exact) break;
                }
        }
    }
    return {"wf-quasi-eigen-recursion-exact", exact,
            exact ? "bit-exact for n <= 10, k <= 10, kappa in {1/2,1,2,7/3}, b0, a in {0,1}"
                  : "first failure at " + fail_at};
}

/// The series sensitivity over the quasi-eigenbasis against the generic
/// engine and the finite-difference oracle.
inline std::vector<CheckResult> check_series_sensitivity() {
    double worst_engine = 0.0, worst_oracle = 0.0;
    const Rational kappa(1);
    const int nd = 12;
    auto family = wf_family<double>(1.0);
    auto pi0 = dirac(0.0, nd);
    auto nu = sensitivity_functional(family, pi0, nd);
    for (int n = 2; n <= 6; ++n) {
        auto basis = wf_basis(n, kappa);
        std::vector<double> coeffs;
        for (const auto& g : basis.xi.coeffs()) coeffs.push_back(g.to_double());
        Polynomial<double> xi(std::move(coeffs));
        for (double t : {0.5, 1.0, 2.0}) {
            double series = wf_xi_sensitivity(n, kappa, t).value;
            double engine = pair(apply_v0(family, xi, t, nd), nu);
            double oracle = central_difference_sensitivity(family, pi0, xi, t, nd).value;
            worst_engine = std::max(worst_engine, std::fabs(series - engine));
            worst_oracle = std::max(worst_oracle, std::fabs(series - oracle));
        }
    }
    return {{"wf-series-vs-engine", worst_engine <= 1e-8,
             "max |series - engine| " + detail::fmt(worst_engine) +
                 " for n <= 6, t <= 2, kappa=1 (bound 1e-8)"},
            {"wf-series-vs-oracle", worst_oracle <= 1e-6,
             "max |series - oracle| " + detail::fmt(worst_oracle) + " (bound 1e-6)"}};
}

inline std::vector<CheckResult> validate_stationarity() {
    return {check_wf_beta_stationarity_exact(), check_ou_gaussian_stationarity()};
}

inline std::vector<CheckResult> validate_lemma() {
    return {check_stationary_derivative_identity()};
}

inline std::vector<CheckResult> validate_theorem() {
    return {check_sensitivity_vs_oracle(), check_wf_first_moment_closed_form(),
            check_integral_propagator_on_constants(), check_ou_closed_form()};
}

inline std::vector<CheckResult> validate_recursion() {
    std::vector<CheckResult> out{check_quasi_eigen_recursion_exact()};
    for (auto& r : check_series_sensitivity()) out.push_back(std::move(r));
    return out;
}

inline std::vector<CheckResult> validate_errata() {
    std::vector<CheckResult> out;
    auto errata = run_errata_checks();
    for (const auto& e : errata)
        out.push_back({"erratum-" + e.id, e.confirmed,
                       "implemented margin " + detail::fmt(e.margin_implemented) +
                           ", variant margin " + detail::fmt(e.margin_variant)});
    out.push_back({"errata-count", errata.size() == 6,
                   std::to_string(errata.size()) + " documented discrepancies checked"});
    return out;
}

}  // namespace semisens
