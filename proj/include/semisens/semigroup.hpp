#pragma once

#include <cmath>
#include <string>

#include "semisens/generator_family.hpp"
#include "semisens/operator_matrix.hpp"

namespace semisens {

/// Engine diagnostics accumulated across exponential evaluations.
struct EngineStats {
    int max_terms_used = 0;
    int max_squarings = 0;
    long calls = 0;

    void record(int terms, int squarings) {
        if (terms > max_terms_used) max_terms_used = terms;
        if (squarings > max_squarings) max_squarings = squarings;
        ++calls;
    }
};

struct ExpmOptions {
    double tol = 1e-12;
    int max_terms = 200;
    int max_squarings = 40;
};

namespace detail {

template <ScalarField S>
void require_floating_scalar(const char* where) {
    if constexpr (ScalarTraits<S>::is_exact)
        throw ExactScalarError(std::string(where) +
                               ": exponentials are transcendental; not offered for "
                               "exact scalar backends");
}

template <ScalarField S>
void check_finite(const OperatorMatrix<S>& m, const char* where) {
    // entry-wise: a NaN never compares greater, so it would slip past any
    // norm built from comparisons
    for (int i = 0; i <= m.truncation_degree(); ++i)
        for (int j = 0; j <= m.truncation_degree(); ++j)
            if (!std::isfinite(ScalarTraits<S>::to_double(m.at(i, j))))
                throw NumericError(std::string(where) + ": non-finite matrix entries");
}

/// exp(B) by scaling and squaring: pick s with ||B||_inf / 2^s <= 1/2, sum
/// the Taylor series of exp(B/2^s) until the term norm drops below
/// tol * (current sum norm), then square s times. The raw series at full
/// scale is unusable here: generator spectra reach magnitudes in the
/// hundreds where it loses all significance to cancellation.
template <ScalarField S>
OperatorMatrix<S> expm_scaled_squared(const OperatorMatrix<S>& b, const ExpmOptions& opt,
                                      int* terms_out, int* squarings_out) {
    require_floating_scalar<S>("expm");
    check_finite(b, "expm input");

    const double nrm = ScalarTraits<S>::to_double(b.inf_norm());
    int s = 0;
    while (std::ldexp(nrm, -s) > 0.5) {
        if (++s > opt.max_squarings)
            throw NumericError("expm: scaling budget exceeded (||B|| = " +
                               std::to_string(nrm) + ", max squarings " +
                               std::to_string(opt.max_squarings) + ")");
    }
    const OperatorMatrix<S> scaled = b * ScalarTraits<S>::from_double(std::ldexp(1.0, -s));

    OperatorMatrix<S> sum = OperatorMatrix<S>::identity(b.truncation_degree());
    OperatorMatrix<S> term = sum;
    int terms = 0;
    bool converged = false;
    for (int k = 1; k <= opt.max_terms; ++k) {
        term = (term * scaled) * ScalarTraits<S>::from_double(1.0 / k);
        sum = sum + term;
        terms = k;
        double tn = ScalarTraits<S>::to_double(term.max_abs());
        double sn = ScalarTraits<S>::to_double(sum.max_abs());
        if (tn < opt.tol * sn) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericError("expm: series did not converge within " +
                           std::to_string(opt.max_terms) + " terms");

    for (int i = 0; i < s; ++i) sum = sum * sum;
    check_finite(sum, "expm result");

    if (terms_out) *terms_out = terms;
    if (squarings_out) *squarings_out = s;
    return sum;
}

inline ExpmOptions options_for(double tol) {
    ExpmOptions opt;
    if (!(tol > 0)) throw ConfigError("semigroup engine: tolerance must be positive");
    opt.tol = tol;
    return opt;
}

inline void check_time(double t, const char* where) {
    if (!(t >= 0)) throw ConfigError(std::string(where) + ": time must be nonnegative");
}

/// Embeds [[tM, tI], [0, 0]] whose exponential is [[exp(tM), V(t)], [0, I]].
/// The block matrix is still upper triangular, so no fill-in occurs below
/// any diagonal and the extracted blocks stay exactly triangular.
template <ScalarField S>
OperatorMatrix<S> augmented_block(const OperatorMatrix<S>& m, double t) {
    const int n = m.truncation_degree();
    OperatorMatrix<S> c(2 * n + 1);
    const S ts = ScalarTraits<S>::from_double(t);
    for (int i = 0; i <= n; ++i) {
        for (int j = i; j <= n; ++j) c.at(i, j) = m.at(i, j) * ts;
        c.at(i, n + 1 + i) = ts;
    }
    return c;
}

}  // namespace detail

/// U(t) = exp(t M) to relative tolerance tol in the max-norm.
template <ScalarField S>
OperatorMatrix<S> propagator(const OperatorMatrix<S>& m, double t, double tol = 1e-12,
                             EngineStats* stats = nullptr) {
    detail::require_floating_scalar<S>("propagator");
    detail::check_time(t, "propagator");
    const ExpmOptions opt = detail::options_for(tol);
    int terms = 0, squarings = 0;
    OperatorMatrix<S> u = detail::expm_scaled_squared(
        m * ScalarTraits<S>::from_double(t), opt, &terms, &squarings);
    if (stats) stats->record(terms, squarings);
    return u;
}

/// Debug mode: the Taylor series of exp(t M) summed without scaling.
/// Only meaningful for small ||t M||.
template <ScalarField S>
OperatorMatrix<S> propagator_series(const OperatorMatrix<S>& m, double t, double tol = 1e-12,
                                    int max_terms = 200) {
    detail::require_floating_scalar<S>("propagator_series");
    detail::check_time(t, "propagator_series");
    const OperatorMatrix<S> b = m * ScalarTraits<S>::from_double(t);
    OperatorMatrix<S> sum = OperatorMatrix<S>::identity(m.truncation_degree());
    OperatorMatrix<S> term = sum;
    for (int k = 1; k <= max_terms; ++k) {
        term = (term * b) * ScalarTraits<S>::from_double(1.0 / k);
        sum = sum + term;
        if (ScalarTraits<S>::to_double(term.max_abs()) <
            tol * ScalarTraits<S>::to_double(sum.max_abs()))
            return sum;
    }
    throw NumericError("propagator_series: no convergence within " +
                       std::to_string(max_terms) + " terms");
}

/// V(t) = sum_{k>=1} t^k/k! M^{k-1} = integral of exp(s M) over [0, t],
/// computed as the upper-right block of the augmented block exponential so
/// it inherits the scaled-and-squared exponential's stability.
template <ScalarField S>
OperatorMatrix<S> integral_propagator(const OperatorMatrix<S>& m, double t, double tol = 1e-12,
                                      EngineStats* stats = nullptr) {
    detail::require_floating_scalar<S>("integral_propagator");
    detail::check_time(t, "integral_propagator");
    const ExpmOptions opt = detail::options_for(tol);
    int terms = 0, squarings = 0;
    OperatorMatrix<S> e =
        detail::expm_scaled_squared(detail::augmented_block(m, t), opt, &terms, &squarings);
    if (stats) stats->record(terms, squarings);
    const int n = m.truncation_degree();
    OperatorMatrix<S> v(n);
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) v.at(i, j) = e.at(i, n + 1 + j);
    return v;
}

/// Cross-check mode: V(t) from its series directly, without the block
/// embedding. Subject to the same cancellation limits as propagator_series.
template <ScalarField S>
OperatorMatrix<S> integral_propagator_series(const OperatorMatrix<S>& m, double t,
                                             double tol = 1e-12, int max_terms = 200) {
    detail::require_floating_scalar<S>("integral_propagator_series");
    detail::check_time(t, "integral_propagator_series");
    // term_k = t^k/k! M^{k-1}; term_1 = t I.
    OperatorMatrix<S> term =
        OperatorMatrix<S>::identity(m.truncation_degree()) * ScalarTraits<S>::from_double(t);
    OperatorMatrix<S> sum = term;
    for (int k = 2; k <= max_terms; ++k) {
        term = (term * m) * ScalarTraits<S>::from_double(t / k);
        sum = sum + term;
        if (ScalarTraits<S>::to_double(term.max_abs()) <
            tol * ScalarTraits<S>::to_double(sum.max_abs()))
            return sum;
    }
    throw NumericError("integral_propagator_series: no convergence within " +
                       std::to_string(max_terms) + " terms");
}

/// Composite Simpson quadrature of s -> exp(s M) over [0, t]. Validation
/// helper for the integral representation of V; node count must be odd.
template <ScalarField S>
OperatorMatrix<S> integral_propagator_quadrature(const OperatorMatrix<S>& m, double t,
                                                 int nodes = 129, double tol = 1e-12) {
    detail::require_floating_scalar<S>("integral_propagator_quadrature");
    detail::check_time(t, "integral_propagator_quadrature");
    if (nodes < 3 || nodes % 2 == 0)
        throw ConfigError("integral_propagator_quadrature: node count must be odd and >= 3");
    const int n = m.truncation_degree();
    OperatorMatrix<S> acc(n);
    if (t == 0.0) return acc;
    const double h = t / (nodes - 1);
    for (int i = 0; i < nodes; ++i) {
        double w = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc = acc + propagator(m, h * i, tol) * ScalarTraits<S>::from_double(w * h / 3.0);
    }
    return acc;
}

/// U(t) and V(t) extracted from one augmented block exponential, with the
/// engine diagnostics that produced them.
struct PropagatorPair {
    OperatorMatrix<double> u;
    OperatorMatrix<double> v;
    double t = 0.0;
    double tol = 0.0;
    int terms_used = 0;
    int squarings = 0;
};

inline PropagatorPair make_propagator_pair(const OperatorMatrix<double>& m, double t,
                                           double tol = 1e-12) {
    detail::check_time(t, "make_propagator_pair");
    const ExpmOptions opt = detail::options_for(tol);
    int terms = 0, squarings = 0;
    OperatorMatrix<double> e =
        detail::expm_scaled_squared(detail::augmented_block(m, t), opt, &terms, &squarings);
    const int n = m.truncation_degree();
    PropagatorPair out;
    out.u = OperatorMatrix<double>(n);
    out.v = OperatorMatrix<double>(n);
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            out.u.at(i, j) = e.at(i, j);
            out.v.at(i, j) = e.at(i, n + 1 + j);
        }
    out.t = t;
    out.tol = tol;
    out.terms_used = terms;
    out.squarings = squarings;
    return out;
}

/// V_0(t) applied to a test polynomial for the family at theta = 0.
template <ScalarField S>
Polynomial<S> apply_v0(const GeneratorFamily<S>& family, const Polynomial<S>& xi, double t,
                       int n, double tol = 1e-12, EngineStats* stats = nullptr) {
    if (xi.degree() > n)
        throw DegreeError("apply_v0: degree(xi) = " + std::to_string(xi.degree()) +
                          " exceeds truncation degree " + std::to_string(n));
    OperatorMatrix<S> v =
        integral_propagator(matrix(family, ScalarTraits<S>::from_long(0), n), t, tol, stats);
    return v.apply_to(xi);
}

}  // namespace semisens
