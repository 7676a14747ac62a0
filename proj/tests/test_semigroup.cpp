#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include <semisens/models.hpp>
#include <semisens/semigroup.hpp>

using namespace semisens;

namespace {

using DMat = OperatorMatrix<double>;

DMat random_triangular(std::mt19937& rng, int max_n, double lo, double hi) {
    std::uniform_int_distribution<int> dim(2, max_n);
    std::uniform_real_distribution<double> entry(lo, hi);
    DMat m(dim(rng));
    for (int i = 0; i <= m.truncation_degree(); ++i)
        for (int j = i; j <= m.truncation_degree(); ++j) m.at(i, j) = entry(rng);
    return m;
}

}  // namespace

TEST_CASE("propagator basics") {
    DMat zero(3);
    CHECK(propagator(zero, 2.5) == DMat::identity(3));

    DMat diag(1);
    diag.at(1, 1) = -1.0;
    for (double t : {0.1, 1.0, 3.0}) {
        auto u = propagator(diag, t);
        CHECK(u.at(0, 0) == Approx(1.0).margin(1e-15));
        // the engine contract is tol relative to the max-norm, not per entry
        CHECK(u.at(1, 1) == Approx(std::exp(-t)).margin(1e-11));
        CHECK(u.at(0, 1) == 0.0);
    }

    DMat nil(1);
    nil.at(0, 1) = 2.5;
    auto u = propagator(nil, 3.0);
    CHECK(u.at(0, 1) == Approx(7.5).epsilon(1e-14));
    CHECK(u.at(0, 0) == 1.0);
    CHECK(u.at(1, 1) == 1.0);
}

TEST_CASE("propagator rejects bad input") {
    DMat m(2);
    CHECK_THROWS_AS(propagator(m, -1.0), ConfigError);
    CHECK_THROWS_AS(propagator(m, 1.0, 0.0), ConfigError);

    OperatorMatrix<Rational> rm(2);
    CHECK_THROWS_AS(propagator(rm, 1.0), ExactScalarError);
    CHECK_THROWS_AS(integral_propagator(rm, 1.0), ExactScalarError);

    DMat huge(1);
    huge.at(0, 0) = 1e15;  // would need > 40 halvings
    CHECK_THROWS_AS(propagator(huge, 1.0), NumericError);

    DMat nan_mat(1);
    nan_mat.at(0, 1) = std::nan("");
    CHECK_THROWS_AS(propagator(nan_mat, 1.0), NumericError);
}

TEST_CASE("integral propagator basics") {
    auto wf = matrix(wf_family<double>(2.0), 0.0, 4);
    CHECK(integral_propagator(wf, 0.0).max_abs() == 0.0);

    for (double t : {0.1, 1.0, 5.0}) {
        auto v = integral_propagator(wf, t);
        // column of 1: exactly t times the first basis vector
        CHECK(v.at(0, 0) == t);
        for (int i = 1; i <= 4; ++i) CHECK(v.at(i, 0) == 0.0);
        // column of x: (1 - e^{-kappa t})/kappa on the diagonal
        CHECK(v.at(1, 1) == Approx((1.0 - std::exp(-2.0 * t)) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("block form and direct series agree") {
    auto wf = matrix(wf_family<double>(1.0), 0.0, 4);
    auto ou = matrix(ou_family<double>(), 0.0, 5);
    for (double t : {0.2, 0.8}) {
        CHECK((integral_propagator(wf, t) - integral_propagator_series(wf, t)).max_abs() <=
              1e-12);
        CHECK((propagator(ou, t) - propagator_series(ou, t)).max_abs() <= 1e-12);
    }
}

TEST_CASE("semigroup law on random triangular matrices") {
    std::mt19937 rng(20240817u);
    const double t = 0.3, s = 0.7, tol = 1e-12;
    for (int trial = 0; trial < 100; ++trial) {
        DMat m = random_triangular(rng, 16, -10.0, 10.0);
        auto uts = propagator(m, t + s, tol);
        double scale = std::max(1.0, uts.max_abs());
        CHECK((uts - propagator(m, t, tol) * propagator(m, s, tol)).max_abs() <=
              10.0 * tol * scale);
    }
}

TEST_CASE("M V(t) = U(t) - I") {
    std::mt19937 rng(777u);
    const double tol = 1e-12;
    for (int trial = 0; trial < 100; ++trial) {
        DMat m = random_triangular(rng, 16, -10.0, 10.0);
        auto pp = make_propagator_pair(m, 0.25, tol);
        auto rhs = pp.u - DMat::identity(m.truncation_degree());
        double scale = std::max(1.0, rhs.max_abs());
        CHECK((m * pp.v - rhs).max_abs() <= 10.0 * tol * scale);
    }
}

TEST_CASE("quadrature representation of the integral propagator") {
    // 129-node composite Simpson resolves 1e-8 where h^4/180 * |M|^3 stays
    // small: moderate norms at t = 0.5, small norms out to t = 2.
    auto wf3 = matrix(wf_family<double>(1.0), 0.0, 3);
    auto ou4 = matrix(ou_family<double>(), 0.0, 4);
    auto wf1 = matrix(wf_family<double>(1.0), 0.0, 1);
    CHECK((integral_propagator(wf3, 0.5) - integral_propagator_quadrature(wf3, 0.5)).max_abs() <=
          1e-8);
    CHECK((integral_propagator(ou4, 0.5) - integral_propagator_quadrature(ou4, 0.5)).max_abs() <=
          1e-8);
    CHECK((integral_propagator(wf1, 2.0) - integral_propagator_quadrature(wf1, 2.0)).max_abs() <=
          1e-8);

    CHECK_THROWS_AS(integral_propagator_quadrature(wf1, 1.0, 128), ConfigError);
}

TEST_CASE("no fill-in below the diagonal") {
    std::mt19937 rng(100u);
    for (int trial = 0; trial < 20; ++trial) {
        DMat m = random_triangular(rng, 10, -8.0, 8.0);
        auto pp = make_propagator_pair(m, 0.6);
        for (int i = 1; i <= m.truncation_degree(); ++i)
            for (int j = 0; j < i; ++j) {
                CHECK(pp.u.at(i, j) == 0.0);
                CHECK(pp.v.at(i, j) == 0.0);
            }
    }
}

TEST_CASE("time derivative of the propagator is M U(t)") {
    auto m = matrix(wf_family<double>(1.0), 0.0, 3);
    const double t = 1.0, h = 1e-4;
    auto num = (propagator(m, t + h) - propagator(m, t - h)) * (1.0 / (2.0 * h));
    CHECK((num - m * propagator(m, t)).max_abs() <= 1e-7);
}

TEST_CASE("apply_v0") {
    auto wf = wf_family<double>(1.0);
    for (double t : {0.3, 1.0}) {
        auto v1 = apply_v0(wf, Polynomial<double>::constant(1.0), t, 6);
        CHECK(v1.degree() == 0);
        CHECK(v1.coeff(0) == t);
    }
    auto vx = apply_v0(wf, Polynomial<double>::monomial(1), 1.0, 6);
    CHECK(vx.degree() == 1);
    CHECK(vx.coeff(1) == Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(vx.coeff(0) == 0.0);

    CHECK(apply_v0(wf, Polynomial<double>::monomial(2), 0.0, 6).is_zero());
    CHECK_THROWS_AS(apply_v0(wf, Polynomial<double>::monomial(7), 1.0, 6), DegreeError);
}

TEST_CASE("engine diagnostics are recorded") {
    EngineStats stats;
    auto m = matrix(wf_family<double>(1.0), 0.0, 8);
    propagator(m, 1.0, 1e-12, &stats);
    integral_propagator(m, 1.0, 1e-12, &stats);
    CHECK(stats.calls == 2);
    CHECK(stats.max_terms_used > 0);
    CHECK(stats.max_squarings > 0);
}
