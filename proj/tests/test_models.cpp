#include <catch2/catch.hpp>

#include <cmath>

#include <semisens/fd_oracle.hpp>
#include <semisens/models.hpp>
#include <semisens/sensitivity.hpp>

using namespace semisens;

namespace {
using RPoly = Polynomial<Rational>;
using DPoly = Polynomial<double>;
}

TEST_CASE("model constructors validate their parameters") {
    CHECK_THROWS_AS(wf_family<double>(0.0), ConfigError);
    CHECK_THROWS_AS(wf_family<Rational>(Rational(-1)), ConfigError);
    CHECK(wf_family<Rational>(Rational(1)).terms().size() == 3);
    CHECK(ou_family<double>().terms().size() == 3);
}

TEST_CASE("half-diffusion flag halves only the diffusion term") {
    auto half = wf_family<Rational>(Rational(1), /*half_diffusion=*/true);
    // A_0 x^2 = -kappa x * 2x + (1/2) x(1-x) * 2 = x - (2 kappa + 1) x^2
    CHECK(apply(half, Rational(0), RPoly::monomial(2)) ==
          RPoly({Rational(0), Rational(1), Rational(-3)}));
    // drift on x is unchanged
    CHECK(apply(half, Rational(0), RPoly::monomial(1)) == RPoly::monomial(1) * Rational(-1));
}

TEST_CASE("ou generator action") {
    auto ou = ou_family<Rational>();
    CHECK(apply(ou, Rational(0), RPoly::monomial(1)) == RPoly::monomial(1) * Rational(-1));
    CHECK(apply(ou, Rational(0), RPoly::monomial(2)) ==
          RPoly({Rational(1), Rational(0), Rational(-2)}));
}

TEST_CASE("quasi-eigenbasis construction") {
    auto b2 = wf_basis(2, Rational(1));
    CHECK(b2.gamma(2) == Rational(1));
    CHECK(b2.xi == RPoly::monomial(2));
    CHECK(b2.lambda == Rational(-4));

    auto b3 = wf_basis(3, Rational(1));
    CHECK(b3.gamma(3) == Rational(1));
    CHECK(b3.gamma(2) == Rational(-6, 5));
    CHECK(b3.lambda == Rational(-9));

    CHECK_THROWS_AS(wf_basis(1, Rational(1)), ConfigError);
    // lambda_3 = lambda_2 at kappa = -4: the recursion denominator vanishes
    // (impossible for kappa > 0, guarded for generic kappa)
    CHECK_THROWS_AS(wf_basis(3, Rational(-4)), ConfigError);

    // A_0 xi_3 = lambda_3 xi_3 + 2 gamma_{3,2} x, exactly
    auto wf = wf_family<Rational>(Rational(1));
    CHECK(apply(wf, Rational(0), b3.xi) ==
          b3.xi * b3.lambda + RPoly::monomial(1) * (Rational(2) * b3.gamma(2)));
}

TEST_CASE("x-coefficient recursion") {
    auto bs = wf_b_sequence(2, Rational(1), Rational(0), 2);
    REQUIRE(bs.values.size() == 3);
    CHECK(bs.values[0] == Rational(0));
    CHECK(bs.values[1] == Rational(2));
    CHECK(bs.values[2] == Rational(-10));
    CHECK_THROWS_AS(wf_b_sequence(2, Rational(1), Rational(0), -1), ConfigError);

    // recursion invariant, division-free, for a nontrivial seed
    auto basis = wf_basis(5, Rational(7, 3));
    auto seq = wf_b_sequence(5, Rational(7, 3), Rational(1), 8);
    Rational lambda_pow(1);
    for (int k = 1; k <= 8; ++k) {
        CHECK(seq.values[static_cast<size_t>(k)] ==
              -Rational(7, 3) * seq.values[static_cast<size_t>(k - 1)] +
                  lambda_pow * Rational(2) * basis.gamma(2));
        lambda_pow *= basis.lambda;
    }
}

TEST_CASE("closed form of repeated generator application") {
    CHECK(wf_quasi_eigen_power(2, Rational(1), 1, Rational(0)) ==
          RPoly({Rational(0), Rational(2), Rational(-4)}));
    CHECK(wf_quasi_eigen_power(2, Rational(1), 2, Rational(0)) ==
          RPoly({Rational(0), Rational(-10), Rational(16)}));

    // independent of the constant offset
    CHECK(wf_quasi_eigen_power(4, Rational(2), 3, Rational(1), Rational(0)) ==
          wf_quasi_eigen_power(4, Rational(2), 3, Rational(1), Rational(9)));

    // matches actual repeated application, including nonzero b0 and offset
    auto wf = wf_family<Rational>(Rational(7, 3));
    auto basis = wf_basis(6, Rational(7, 3));
    RPoly p = basis.xi + RPoly::monomial(1) + RPoly::constant(Rational(1));
    for (int k = 1; k <= 6; ++k) {
        p = apply(wf, Rational(0), p);
        CHECK(p == wf_quasi_eigen_power(6, Rational(7, 3), k, Rational(1), Rational(1)));
    }
}

TEST_CASE("pairing the powers with the derivative functional yields the recursion") {
    auto wf = wf_family<Rational>(Rational(2));
    auto nu = derivative_at_zero<Rational>(8);
    auto basis = wf_basis(7, Rational(2));
    auto bs = wf_b_sequence(7, Rational(2), Rational(1), 5);
    RPoly p = basis.xi + RPoly::monomial(1);
    for (int k = 1; k <= 5; ++k) {
        p = apply(wf, Rational(0), p);
        CHECK(pair(p, nu) == bs.values[static_cast<size_t>(k)]);
    }
}

TEST_CASE("series sensitivity") {
    // leading terms t^2 - (10/6) t^3 at kappa = 1, n = 2 (b1 = 2, b2 = -10)
    const double t = 0.01;
    auto r = wf_xi_sensitivity(2, 1.0, t);
    CHECK(std::fabs(r.value - (t * t - 10.0 / 6.0 * t * t * t)) <= 3e-8);  // next term O(t^4)
    CHECK(r.tail_bound < 1e-12);

    // the k = 1 term always vanishes: value ~ t^2, not t
    auto tiny = wf_xi_sensitivity(5, 1.0, 1e-7);
    CHECK(std::fabs(tiny.value) <= 1e-10);

    // agreement with the generic engine at t = 1
    auto wf = wf_family<double>(1.0);
    auto pi0 = dirac(0.0, 12);
    auto nu = sensitivity_functional(wf, pi0, 12);
    double engine = pair(apply_v0(wf, DPoly::monomial(2), 1.0, 12), nu);
    CHECK(std::fabs(wf_xi_sensitivity(2, 1.0, 1.0).value - engine) <= 1e-8);

    // exact kappa = 7/3 runs through the rational path
    auto exact = wf_xi_sensitivity(3, Rational(7, 3), 0.5);
    CHECK(std::isfinite(exact.value));
    CHECK(exact.tail_bound < 1e-12);

    // an explicit kmax too small for the tail bound is an error
    CHECK_THROWS_AS(wf_xi_sensitivity(6, 1.0, 2.0, 5), NumericError);
    CHECK_THROWS_AS(wf_xi_sensitivity(1, 1.0, 1.0), ConfigError);
}

TEST_CASE("series against engine and oracle across the basis") {
    auto wf = wf_family<double>(1.0);
    auto pi0 = dirac(0.0, 10);
    auto nu = sensitivity_functional(wf, pi0, 10);
    for (int n = 2; n <= 5; ++n) {
        auto basis = wf_basis(n, Rational(1));
        std::vector<double> coeffs;
        for (const auto& g : basis.xi.coeffs()) coeffs.push_back(g.to_double());
        DPoly xi(std::move(coeffs));
        for (double t : {0.5, 1.5}) {
            double series = wf_xi_sensitivity(n, 1.0, t).value;
            CHECK(std::fabs(series - pair(apply_v0(wf, xi, t, 10), nu)) <= 1e-8);
            CHECK(std::fabs(series - central_difference_sensitivity(wf, pi0, xi, t, 10).value) <=
                  1e-6);
        }
    }
}

TEST_CASE("integral propagator on x^2: derived series constants vs quoted form") {
    const double kappa = 1.0, t = 1.0;
    const double lam2 = -2.0 * kappa - 2.0;
    auto v = integral_propagator(matrix(wf_family<double>(kappa), 0.0, 4), t);

    double series_x2 = (std::exp(lam2 * t) - 1.0) / lam2;
    CHECK(v.at(2, 2) == Approx(series_x2).epsilon(1e-12));

    double series_x = 2.0 / (-kappa - 2.0) *
                      ((std::exp(lam2 * t) - 1.0) / lam2 - (std::exp(-kappa * t) - 1.0) / (-kappa));
    CHECK(v.at(1, 2) == Approx(series_x).epsilon(1e-12));

    // known discrepancy: the often-quoted closed forms miss the -1 constants
    double quoted_x2 = std::exp(lam2 * t);
    double quoted_x = -2.0 / (kappa + 2.0) * std::exp(-kappa * t) * (std::exp(-(kappa + 2.0) * t) - 1.0);
    CHECK(std::fabs(v.at(2, 2) - quoted_x2) > 1e-2);
    CHECK(std::fabs(v.at(1, 2) - quoted_x) > 1e-2);
}

TEST_CASE("ou closed-form moment sensitivities") {
    CHECK(ou_moment_sensitivity_closed_form(0, 1.7) == 0.0);
    CHECK(ou_moment_sensitivity_closed_form(1, 1.0) == Approx(1.0 - std::exp(-1.0)));
    CHECK(ou_moment_sensitivity_closed_form(2, 0.6) == 0.0);
    CHECK_THROWS_AS(ou_moment_sensitivity_closed_form(-1, 1.0), ConfigError);

    auto ou = ou_family<double>();
    auto pi0 = gaussian_moments(0.0, 0.5, 12);
    for (int p : {3, 4, 8})
        for (double t : {0.1, 1.0, 2.0})
            CHECK(std::fabs(semigroup_sensitivity(ou, pi0, DPoly::monomial(p), t, 12) -
                            ou_moment_sensitivity_closed_form(p, t)) <= 1e-9);
}
