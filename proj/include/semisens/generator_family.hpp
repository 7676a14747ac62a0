#pragma once

#include <string>
#include <utility>
#include <vector>

#include "semisens/operator_matrix.hpp"
#include "semisens/polynomial.hpp"

namespace semisens {

/// One term p(x) * q(theta) * d^order/dx^order of a parametric generator.
/// q is affine: q(theta) = q0 + dq0 * theta. Requires degree(p) <= order so
/// that the term maps polynomials of degree <= k to degree <= k.
template <ScalarField S>
struct GeneratorTerm {
    Polynomial<S> p;
    int order = 1;
    S q0 = ScalarTraits<S>::from_long(0);
    S dq0 = ScalarTraits<S>::from_long(0);
};

/// A parametric family theta -> A_theta of degree-preserving differential
/// operators with polynomial coefficients, represented as a sum of terms.
/// Immutable after construction.
template <ScalarField S>
class GeneratorFamily {
public:
    GeneratorFamily() = default;
    explicit GeneratorFamily(std::vector<GeneratorTerm<S>> terms)
        : terms_(std::move(terms)) {
        for (size_t k = 0; k < terms_.size(); ++k) {
            const auto& t = terms_[k];
            if (t.order < 1)
                throw ConfigError("GeneratorFamily: term #" + std::to_string(k) +
                                  " has order " + std::to_string(t.order) + " < 1");
            if (t.p.degree() > t.order)
                throw ConfigError("GeneratorFamily: term #" + std::to_string(k) +
                                  " violates degree preservation: degree(p) = " +
                                  std::to_string(t.p.degree()) + " exceeds order " +
                                  std::to_string(t.order));
        }
    }

    const std::vector<GeneratorTerm<S>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

private:
    std::vector<GeneratorTerm<S>> terms_;
};

/// A_theta applied to a polynomial: sum_i q_i(theta) * p_i * d^i p / dx^i.
/// Degree never increases.
template <ScalarField S>
Polynomial<S> apply(const GeneratorFamily<S>& family, const S& theta,
                    const Polynomial<S>& p) {
    Polynomial<S> acc;
    acc.set_interval(p.interval());
    for (const auto& term : family.terms()) {
        S q = term.q0 + term.dq0 * theta;
        if (q == ScalarTraits<S>::from_long(0)) continue;
        acc = acc + multiply(term.p, differentiate(p, term.order)) * q;
    }
    return acc;
}

/// Matrix of A_theta on the basis (1, x, ..., x^n): column j holds the
/// coefficients of A_theta x^j. Upper triangular by the term invariant.
template <ScalarField S>
OperatorMatrix<S> matrix(const GeneratorFamily<S>& family, const S& theta, int n) {
    if (n < 0) throw ConfigError("matrix: negative truncation degree");
    OperatorMatrix<S> m(n);
    for (int j = 0; j <= n; ++j) {
        Polynomial<S> col = apply(family, theta, Polynomial<S>::monomial(j));
        for (int i = 0; i <= col.degree(); ++i) m.at(i, j) = col.coeffs()[static_cast<size_t>(i)];
    }
    return m;
}

/// The theta-derivative of the family at theta = 0: since every q is affine,
/// this is the theta-independent operator sum_i dq0_i * p_i * d^i/dx^i.
/// Terms with dq0 = 0 drop out, so a theta-independent family maps to the
/// zero family.
template <ScalarField S>
GeneratorFamily<S> derivative_family_at_zero(const GeneratorFamily<S>& family) {
    std::vector<GeneratorTerm<S>> terms;
    for (const auto& term : family.terms()) {
        if (term.dq0 == ScalarTraits<S>::from_long(0)) continue;
        terms.push_back({term.p, term.order, term.dq0, ScalarTraits<S>::from_long(0)});
    }
    return GeneratorFamily<S>(std::move(terms));
}

}  // namespace semisens
