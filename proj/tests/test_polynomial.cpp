#include <catch2/catch.hpp>

#include <random>
#include <vector>

#include <semisens/polynomial.hpp>

using namespace semisens;

namespace {

using RPoly = Polynomial<Rational>;
using DPoly = Polynomial<double>;

// Independent power-rule differentiation on raw coefficient vectors.
std::vector<Rational> power_rule(const std::vector<Rational>& c) {
    std::vector<Rational> d;
    for (size_t n = 1; n < c.size(); ++n) d.push_back(c[n] * Rational(static_cast<long>(n)));
    return d;
}

RPoly random_poly(std::mt19937& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    std::vector<Rational> c(static_cast<size_t>(deg(rng)) + 1);
    for (auto& ci : c) ci = Rational(num(rng), den(rng));
    return RPoly(std::move(c));
}

}  // namespace

TEST_CASE("zero polynomial and normalization") {
    RPoly z;
    CHECK(z.is_zero());
    CHECK(z.degree() == RPoly::kZeroDegree);
    CHECK(RPoly({Rational(0), Rational(0)}).is_zero());
    CHECK(RPoly({Rational(1), Rational(2), Rational(0)}).degree() == 1);
    CHECK(RPoly::monomial(3).degree() == 3);
}

TEST_CASE("differentiate") {
    CHECK(differentiate(RPoly::monomial(2), 1) == RPoly({Rational(0), Rational(2)}));
    CHECK(differentiate(RPoly::constant(Rational(1)), 1).is_zero());
    // x^3 - x, twice
    RPoly p({Rational(0), Rational(-1), Rational(0), Rational(1)});
    CHECK(differentiate(p, 2) == RPoly({Rational(0), Rational(6)}));
    CHECK(differentiate(p, 0) == p);
    CHECK_THROWS_AS(differentiate(p, -1), ConfigError);

    std::mt19937 rng(1234u);
    for (int trial = 0; trial < 50; ++trial) {
        RPoly q = random_poly(rng, 10);
        CHECK(differentiate(q, 1) == RPoly(power_rule(q.coeffs())));
    }
}

TEST_CASE("multiply") {
    RPoly x = RPoly::monomial(1);
    RPoly one_minus_x({Rational(1), Rational(-1)});
    CHECK(multiply(x, one_minus_x) == RPoly({Rational(0), Rational(1), Rational(-1)}));
    CHECK(multiply(RPoly(), x).is_zero());
    RPoly one_plus_x({Rational(1), Rational(1)});
    CHECK(multiply(one_plus_x, one_plus_x) ==
          RPoly({Rational(1), Rational(2), Rational(1)}));

    std::mt19937 rng(99u);
    for (int trial = 0; trial < 30; ++trial) {
        RPoly p = random_poly(rng, 8), q = random_poly(rng, 8);
        if (p.is_zero() || q.is_zero()) continue;
        CHECK(multiply(p, q).degree() == p.degree() + q.degree());
    }
}

TEST_CASE("evaluate") {
    CHECK(evaluate(RPoly({Rational(-1), Rational(0), Rational(1)}), Rational(0)) == Rational(-1));
    CHECK(evaluate(RPoly::monomial(1), Rational(1)) == Rational(1));
    CHECK(evaluate(RPoly({Rational(2), Rational(3), Rational(1)}), Rational(2)) == Rational(12));

    // Horner agrees with the naive power sum.
    std::mt19937 rng(7u);
    for (int trial = 0; trial < 30; ++trial) {
        RPoly p = random_poly(rng, 10);
        Rational x0(trial - 15, 4);
        Rational naive(0), xp(1);
        for (const auto& c : p.coeffs()) {
            naive += c * xp;
            xp *= x0;
        }
        CHECK(evaluate(p, x0) == naive);
    }
}

TEST_CASE("product rule holds bit-exactly") {
    std::mt19937 rng(2024u);
    for (int trial = 0; trial < 60; ++trial) {
        RPoly p = random_poly(rng, 10), q = random_poly(rng, 10);
        RPoly lhs = differentiate(multiply(p, q), 1);
        RPoly rhs = multiply(differentiate(p, 1), q) + multiply(p, differentiate(q, 1));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("evaluate is linear") {
    std::mt19937 rng(31u);
    for (int trial = 0; trial < 30; ++trial) {
        RPoly p = random_poly(rng, 9), q = random_poly(rng, 9);
        Rational a(3, 2), b(-5, 7), x0(trial - 10, 3);
        CHECK(evaluate(p * a + q * b, x0) == a * evaluate(p, x0) + b * evaluate(q, x0));
    }
}

TEST_CASE("repeated differentiation composes") {
    std::mt19937 rng(55u);
    for (int trial = 0; trial < 30; ++trial) {
        RPoly p = random_poly(rng, 10);
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b)
                CHECK(differentiate(p, a + b) == differentiate(differentiate(p, a), b));
    }
}

TEST_CASE("interval metadata is carried, never enforced") {
    DPoly p({1.0, 2.0}, Interval{0.0, 1.0});
    CHECK(p.interval().lo == 0.0);
    CHECK(p.interval().hi == 1.0);
    CHECK(differentiate(p, 1).interval().lo == 0.0);
    CHECK(evaluate(p, 7.0) == 15.0);  // far outside [0, 1]; evaluation is unclipped
}
