#pragma once

#include <vector>

#include "semisens/polynomial.hpp"
#include "semisens/scalar.hpp"

namespace semisens {

/// (N+1)x(N+1) matrix of a degree-preserving operator on the monomial basis
/// (1, x, ..., x^N). Column j holds the coefficients of the image of x^j, so
/// degree preservation makes the matrix upper triangular. Stored dense,
/// row-major; truncation degrees stay small.
template <ScalarField S>
class OperatorMatrix {
public:
    OperatorMatrix() : n_(0), e_(1, ScalarTraits<S>::from_long(0)) {}
    explicit OperatorMatrix(int truncation_degree)
        : n_(truncation_degree),
          e_(static_cast<size_t>(truncation_degree + 1) * (truncation_degree + 1),
             ScalarTraits<S>::from_long(0)) {
        if (truncation_degree < 0) throw ConfigError("OperatorMatrix: negative degree");
    }

    static OperatorMatrix identity(int n) {
        OperatorMatrix m(n);
        for (int i = 0; i <= n; ++i) m.at(i, i) = ScalarTraits<S>::from_long(1);
        return m;
    }

    int truncation_degree() const { return n_; }
    int dim() const { return n_ + 1; }

    S& at(int i, int j) { return e_[static_cast<size_t>(i) * dim() + j]; }
    const S& at(int i, int j) const { return e_[static_cast<size_t>(i) * dim() + j]; }

    bool is_upper_triangular() const {
        const S zero = ScalarTraits<S>::from_long(0);
        for (int i = 1; i <= n_; ++i)
            for (int j = 0; j < i; ++j)
                if (!(at(i, j) == zero)) return false;
        return true;
    }

    /// Applies the matrix to the coefficient vector of p (degree(p) <= N).
    Polynomial<S> apply_to(const Polynomial<S>& p) const {
        if (p.degree() > n_)
            throw DegreeError("OperatorMatrix::apply_to: polynomial degree " +
                              std::to_string(p.degree()) + " exceeds truncation degree " +
                              std::to_string(n_));
        std::vector<S> out(static_cast<size_t>(n_) + 1, ScalarTraits<S>::from_long(0));
        for (int j = 0; j <= p.degree(); ++j) {
            const S& cj = p.coeffs()[static_cast<size_t>(j)];
            for (int i = 0; i <= j; ++i) out[static_cast<size_t>(i)] = out[static_cast<size_t>(i)] + at(i, j) * cj;
        }
        return Polynomial<S>(std::move(out), p.interval());
    }

    friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
        check_same_dim(a, b, "operator+");
        OperatorMatrix c(a.n_);
        for (size_t k = 0; k < a.e_.size(); ++k) c.e_[k] = a.e_[k] + b.e_[k];
        return c;
    }
    friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
        check_same_dim(a, b, "operator-");
        OperatorMatrix c(a.n_);
        for (size_t k = 0; k < a.e_.size(); ++k) c.e_[k] = a.e_[k] - b.e_[k];
        return c;
    }
    friend OperatorMatrix operator*(const OperatorMatrix& a, const S& s) {
        OperatorMatrix c(a.n_);
        for (size_t k = 0; k < a.e_.size(); ++k) c.e_[k] = a.e_[k] * s;
        return c;
    }

    /// Matrix product, restricted to the upper triangle (sums k in [i, j];
    /// both operands are upper triangular by construction).
    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
        check_same_dim(a, b, "operator*");
        OperatorMatrix c(a.n_);
        for (int i = 0; i <= a.n_; ++i)
            for (int j = i; j <= a.n_; ++j) {
                S acc = ScalarTraits<S>::from_long(0);
                for (int k = i; k <= j; ++k) acc = acc + a.at(i, k) * b.at(k, j);
                c.at(i, j) = acc;
            }
        return c;
    }

    friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }

    /// Largest absolute entry.
    S max_abs() const {
        S m = ScalarTraits<S>::from_long(0);
        for (const auto& x : e_) {
            S a = ScalarTraits<S>::abs(x);
            if (m < a) m = a;
        }
        return m;
    }

    /// Induced infinity norm (max absolute row sum).
    S inf_norm() const {
        S m = ScalarTraits<S>::from_long(0);
        for (int i = 0; i <= n_; ++i) {
            S row = ScalarTraits<S>::from_long(0);
            for (int j = 0; j <= n_; ++j) row = row + ScalarTraits<S>::abs(at(i, j));
            if (m < row) m = row;
        }
        return m;
    }

private:
    static void check_same_dim(const OperatorMatrix& a, const OperatorMatrix& b,
                               const char* op) {
        if (a.n_ != b.n_)
            throw DegreeError(std::string("OperatorMatrix ") + op + ": dimension mismatch " +
                              std::to_string(a.n_) + " vs " + std::to_string(b.n_));
    }

    int n_;
    std::vector<S> e_;
};

}  // namespace semisens
