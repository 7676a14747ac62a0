#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "semisens/generator_family.hpp"
#include "semisens/moment_functional.hpp"
#include "semisens/rational.hpp"

namespace semisens {

/// Wright-Fisher mutation generator family
///   A_theta = (1-x) theta d/dx - kappa x d/dx + x(1-x) d^2/dx^2
/// on [0, 1]. kappa is the forward mutation rate, theta the back-mutation
/// rate. The stationary law is Beta(theta, kappa) for theta > 0 and the
/// point mass at 0 for theta = 0.
///
/// half_diffusion switches the diffusion coefficient to x(1-x)/2 (the
/// population-genetics normalization). That variant rescales time and is
/// not Beta(theta, kappa)-stationary as printed; it is excluded from every
/// closed-form check in this library.
template <ScalarField S>
GeneratorFamily<S> wf_family(const S& kappa, bool half_diffusion = false) {
    if (!(kappa > ScalarTraits<S>::from_long(0)))
        throw ConfigError("wf_family: kappa must be positive");
    const S one = ScalarTraits<S>::from_long(1);
    const S zero = ScalarTraits<S>::from_long(0);
    const Interval unit{0.0, 1.0};
    Polynomial<S> one_minus_x({one, -one});
    one_minus_x.set_interval(unit);
    Polynomial<S> x({zero, one});
    x.set_interval(unit);
    Polynomial<S> x_one_minus_x({zero, one, -one});
    x_one_minus_x.set_interval(unit);
    std::vector<GeneratorTerm<S>> terms{
        {one_minus_x, 1, zero, one},
        {x, 1, -kappa, zero},
        {x_one_minus_x, 2, half_diffusion ? ScalarTraits<S>::from_ratio(1, 2) : one, zero},
    };
    return GeneratorFamily<S>(std::move(terms));
}

/// Ornstein-Uhlenbeck generator family
///   A_theta = (theta - x) d/dx + (1/2) d^2/dx^2
/// on the real line (unit diffusion coefficient fixed). The stationary law
/// is the normal distribution with mean theta and variance 1/2.
template <ScalarField S>
GeneratorFamily<S> ou_family() {
    const S one = ScalarTraits<S>::from_long(1);
    const S zero = ScalarTraits<S>::from_long(0);
    std::vector<GeneratorTerm<S>> terms{
        {Polynomial<S>::constant(one), 1, zero, one},
        {Polynomial<S>::monomial(1), 1, -one, zero},
        {Polynomial<S>::constant(one), 2, ScalarTraits<S>::from_ratio(1, 2), zero},
    };
    return GeneratorFamily<S>(std::move(terms));
}

/// WF quasi-eigenvalue for the degree-n basis element: lambda_n = n(-kappa-n+1).
template <ScalarField S>
S wf_eigenvalue(int n, const S& kappa) {
    return ScalarTraits<S>::from_long(n) * (-kappa - ScalarTraits<S>::from_long(n - 1));
}

/// Basis element on which A_0 is almost diagonal:
///   A_0 xi_n = lambda_n xi_n + 2 gamma_{n,2} x,
/// with xi_n = sum_{m=2}^n gamma_{n,m} x^m, gamma_{n,n} = 1 and the
/// downward recursion gamma_{n,m-1} = m(m-1)/(lambda_n - lambda_{m-1})
/// * gamma_{n,m} for m = n, ..., 3. For kappa > 0 the denominators never
/// vanish; they are guarded anyway for generic kappa.
template <ScalarField S>
struct WfBasisElement {
    int n = 2;
    S kappa = ScalarTraits<S>::from_long(1);
    std::vector<S> gammas;  // gammas[m-2] = gamma_{n,m}, m = 2..n
    Polynomial<S> xi;
    S lambda = ScalarTraits<S>::from_long(0);

    const S& gamma(int m) const { return gammas[static_cast<size_t>(m - 2)]; }
};

template <ScalarField S>
WfBasisElement<S> wf_basis(int n, const S& kappa) {
    if (n < 2) throw ConfigError("wf_basis: n must be >= 2");
    WfBasisElement<S> out;
    out.n = n;
    out.kappa = kappa;
    out.lambda = wf_eigenvalue(n, kappa);
    out.gammas.assign(static_cast<size_t>(n - 1), ScalarTraits<S>::from_long(0));
    out.gammas.back() = ScalarTraits<S>::from_long(1);  // gamma_{n,n}
    for (int m = n; m >= 3; --m) {
        S denom = out.lambda - wf_eigenvalue(m - 1, kappa);
        if (denom == ScalarTraits<S>::from_long(0))
            throw ConfigError("wf_basis: zero recursion denominator at n = " + std::to_string(n) +
                              ", m = " + std::to_string(m));
        out.gammas[static_cast<size_t>(m - 3)] =
            ScalarTraits<S>::from_long(static_cast<long>(m) * (m - 1)) / denom *
            out.gammas[static_cast<size_t>(m - 2)];
    }
    std::vector<S> coeffs(static_cast<size_t>(n) + 1, ScalarTraits<S>::from_long(0));
    for (int m = 2; m <= n; ++m) coeffs[static_cast<size_t>(m)] = out.gamma(m);
    out.xi = Polynomial<S>(std::move(coeffs), Interval{0.0, 1.0});
    return out;
}

/// The x-coefficients under repeated application of A_0 to
/// xi_n + b_0 x + a:  b_k = -kappa b_{k-1} + lambda_n^{k-1} * 2 gamma_{n,2}.
template <ScalarField S>
struct WfBSequence {
    int n = 2;
    S kappa = ScalarTraits<S>::from_long(1);
    S b0 = ScalarTraits<S>::from_long(0);
    std::vector<S> values;  // values[k] = b_{n,k}, k = 0..kmax
};

template <ScalarField S>
WfBSequence<S> wf_b_sequence(int n, const S& kappa, const S& b0, int kmax) {
    if (kmax < 0) throw ConfigError("wf_b_sequence: kmax must be >= 0");
    WfBasisElement<S> basis = wf_basis(n, kappa);
    const S two_gamma2 = ScalarTraits<S>::from_long(2) * basis.gamma(2);
    WfBSequence<S> out;
    out.n = n;
    out.kappa = kappa;
    out.b0 = b0;
    out.values.reserve(static_cast<size_t>(kmax) + 1);
    out.values.push_back(b0);
    S lambda_pow = ScalarTraits<S>::from_long(1);  // lambda^{k-1}
    for (int k = 1; k <= kmax; ++k) {
        out.values.push_back(-kappa * out.values.back() + lambda_pow * two_gamma2);
        lambda_pow = lambda_pow * basis.lambda;
    }
    return out;
}

/// Closed form of A_0^k [xi_n + b0 x + a]: lambda_n^k xi_n + b_{n,k} x.
/// The constant a is annihilated by the first application, so the result is
/// independent of it; the parameter is kept to mirror the identity being
/// checked.
template <ScalarField S>
Polynomial<S> wf_quasi_eigen_power(int n, const S& kappa, int k, const S& b0,
                                   [[maybe_unused]] const S& a = ScalarTraits<S>::from_long(0)) {
    if (k < 1) throw ConfigError("wf_quasi_eigen_power: k must be >= 1");
    WfBasisElement<S> basis = wf_basis(n, kappa);
    WfBSequence<S> bs = wf_b_sequence(n, kappa, b0, k);
    S lambda_pow = ScalarTraits<S>::from_long(1);
    for (int i = 0; i < k; ++i) lambda_pow = lambda_pow * basis.lambda;
    return basis.xi * lambda_pow +
           Polynomial<S>::monomial(1) * bs.values[static_cast<size_t>(k)];
}

/// Result of the series sum_{k>=1} t^k/k! b_{n,k-1}.
struct WfSeriesResult {
    double value = 0.0;
    int kmax_used = 0;
    double tail_bound = 0.0;
};

namespace detail {

/// log of (x^k / k!)
inline double log_term(double x, int k) { return k * std::log(x) - std::lgamma(k + 1.0); }

}  // namespace detail

/// d/dtheta at 0 of <xi_n | U_theta(t)* pi0> by the recursion series
/// sum_{k>=1} t^k/k! b_{n,k-1} with b_{n,0} = 0.
///
/// The partial sum is evaluated in exact rational arithmetic (t is a double
/// and hence an exact dyadic rational): the terms alternate and grow to
/// around (t |lambda_n|)^k / k! before they decay, which destroys every
/// significant digit in double precision once t |lambda_n| is moderately
/// large. kmax = 0 selects the smallest truncation whose tail bound is
/// below tol * 1e-2 (capped at 400); an explicit kmax whose tail bound
/// misses tol is an error, never a silent partial result.
inline WfSeriesResult wf_xi_sensitivity(int n, const Rational& kappa, double t, int kmax = 0,
                                        double tol = 1e-12) {
    if (n < 2) throw ConfigError("wf_xi_sensitivity: n must be >= 2");
    if (!(t >= 0)) throw ConfigError("wf_xi_sensitivity: time must be nonnegative");
    if (!(tol > 0)) throw ConfigError("wf_xi_sensitivity: tol must be positive");
    constexpr int kCap = 400;

    WfBasisElement<Rational> basis = wf_basis(n, kappa);
    const double lam = std::fabs(basis.lambda.to_double());
    const double x = t * lam;

    // |b_{n,k}| <= c * |lambda_n|^k with c = 2|gamma_{n,2}| / (|lambda_n| - kappa),
    // by induction over the recursion (|lambda_n| > kappa always holds).
    const double c = 2.0 * std::fabs(basis.gamma(2).to_double()) /
                     (lam - kappa.to_double());

    auto tail_bound_after = [&](int km) {
        // sum_{k > km} t^k/k! |b_{n,k-1}| <= (c/lam) sum_{k > km} x^k/k!,
        // closed off geometrically once the term ratio x/(k+1) < 1.
        if (x == 0.0) return 0.0;
        double r = x / (km + 2);
        if (r >= 1.0) return std::numeric_limits<double>::infinity();
        return c / lam * std::exp(detail::log_term(x, km + 1)) / (1.0 - r);
    };

    int km = kmax;
    if (km == 0) {
        km = 1;
        while (km < kCap && !(tail_bound_after(km) < tol * 1e-2)) ++km;
    }
    const double tail = tail_bound_after(km);
    if (!(tail < tol))
        throw NumericError("wf_xi_sensitivity: tail bound " + std::to_string(tail) +
                           " at kmax = " + std::to_string(km) + " does not meet tol = " +
                           std::to_string(tol) + " (n = " + std::to_string(n) +
                           ", t|lambda| = " + std::to_string(x) + ")");

    WfBSequence<Rational> bs = wf_b_sequence(n, kappa, Rational(0), km - 1);
    const Rational tr = Rational::from_double(t);
    Rational factor = tr;  // t^k / k!
    Rational sum(0);
    for (int k = 1; k <= km; ++k) {
        sum += factor * bs.values[static_cast<size_t>(k - 1)];
        factor = factor * tr / Rational(k + 1);
    }

    WfSeriesResult out;
    out.value = sum.to_double();
    out.kmax_used = km;
    out.tail_bound = tail;
    return out;
}

inline WfSeriesResult wf_xi_sensitivity(int n, double kappa, double t, int kmax = 0,
                                        double tol = 1e-12) {
    return wf_xi_sensitivity(n, Rational::from_double(kappa), t, kmax, tol);
}

/// d/dtheta at 0 of the n-th moment of the OU evolution started in its
/// theta = 0 stationary law: the evolved law is normal with mean
/// (1 - e^{-t}) theta and variance 1/2, so the derivative is
/// (1 - e^{-t}) * n * g_{n-1} with g the centered moments.
inline double ou_moment_sensitivity_closed_form(int n, double t) {
    if (n < 0) throw ConfigError("ou_moment_sensitivity_closed_form: n must be >= 0");
    if (n == 0) return 0.0;
    double g = gaussian_moments<double>(0.0, 0.5, n >= 1 ? n - 1 : 0).moment(n - 1);
    return (1.0 - std::exp(-t)) * n * g;
}

}  // namespace semisens
