#include "catch_amalgamated.hpp"

#include <random>

#include "arr/characteristic.hpp"
#include "arr/identities.hpp"
#include "oracles.hpp"

using arr::GradedSeries;
using arr::KElement;
using arr::Monomial;
using arr::Rational;
using arr::Root;

TEST_CASE("Chern character", "[characteristic]") {
    CHECK(arr::ch(KElement::unit(2), 3) == GradedSeries::one(2, 3));
    CHECK(arr::ch(KElement::line(Root::basis(1, 0)), 2) == oracle::exp_linear({1}, 2));
    const auto c = arr::ch(KElement::line(Root::basis(1, 0)), 2);
    CHECK(c.coefficient(Monomial{{2}}) == Rational(1, 2));
    // Rank lives in degree zero.
    const KElement x = KElement::generic_lines(3) - KElement::integer(3, 5);
    CHECK(arr::ch(x, 3).constant_term() == -2);
}

TEST_CASE("Chern classes", "[characteristic]") {
    for (std::size_t n = 1; n <= 5; ++n) {
        const KElement x = KElement::generic_lines(n);
        const auto total = arr::total_chern(x, static_cast<unsigned>(n));
        for (unsigned k = 0; k <= n; ++k) {
            CHECK(arr::component(total, k) == oracle::elementary(n, k, static_cast<unsigned>(n)));
        }
    }
    const KElement x = KElement::line(Root{{2, -1}}) + KElement::line(Root{{0, 3}}, 2);
    CHECK(arr::chern_class(arr::dual(x), 1) == -arr::chern_class(x, 1));

    // c2([a1] + [-a1]) = (1 + a1)(1 - a1) in degree 2 = -a1^2
    const KElement pair = KElement::line(Root{{1}}) + KElement::line(Root{{-1}});
    CHECK(arr::chern_class(pair, 2) == -(GradedSeries::symbol(1, 2, 0) * GradedSeries::symbol(1, 2, 0)));
}

TEST_CASE("Todd class of a line", "[characteristic]") {
    const auto td = arr::todd(KElement::line(Root::basis(1, 0)), 2);
    const auto a = GradedSeries::symbol(1, 2, 0);
    CHECK(td == GradedSeries::one(1, 2) + Rational(1, 2) * a + Rational(1, 12) * a * a);
    CHECK(arr::component(td, 2) == Rational(1, 12) * a * a);

    CHECK(arr::todd(KElement::unit(2), 4) == GradedSeries::one(2, 4));

    const std::vector<Rational> frozen{1, Rational(1, 2), Rational(1, 12), 0, Rational(-1, 720), 0,
                                       Rational(1, 30240), 0, Rational(-1, 1209600)};
    CHECK(arr::todd_coefficients(8) == frozen);
    CHECK(oracle::todd_by_division(8) == frozen);

    // Todd of a line with a general root against the multinomial oracle.
    const std::vector<std::int64_t> form{1, -2};
    CHECK(arr::todd(KElement::line(Root{form}), 5) == oracle::univariate_of_linear(oracle::todd_by_division(5), form, 5));
}

TEST_CASE("ch is a ring homomorphism", "[characteristic][property]") {
    std::mt19937 rng(201);
    for (int trial = 0; trial < 120; ++trial) {
        const KElement x = arr::random_kelement(rng, 2, 3, false);
        const KElement y = arr::random_kelement(rng, 2, 3, false);
        REQUIRE(arr::ch(x + y, 4) == arr::ch(x, 4) + arr::ch(y, 4));
        REQUIRE(arr::ch(x * y, 4) == arr::ch(x, 4) * arr::ch(y, 4));
    }
}

TEST_CASE("dual sign rule for Chern classes", "[characteristic][property]") {
    std::mt19937 rng(202);
    for (int trial = 0; trial < 120; ++trial) {
        const KElement x = arr::random_kelement(rng, 3, 3, false);
        const auto c = arr::total_chern(x, 4);
        const auto cd = arr::total_chern(arr::dual(x), 4);
        for (unsigned k = 0; k <= 4; ++k) {
            REQUIRE(arr::component(cd, k) == Rational(k % 2 == 0 ? 1 : -1) * arr::component(c, k));
        }
    }
}

TEST_CASE("Todd class is multiplicative", "[characteristic][property]") {
    std::mt19937 rng(203);
    for (int trial = 0; trial < 120; ++trial) {
        const KElement x = arr::random_kelement(rng, 2, 2, false);
        const KElement y = arr::random_kelement(rng, 2, 2, false);
        REQUIRE(arr::todd(x + y, 4) == arr::todd(x, 4) * arr::todd(y, 4));
        REQUIRE(arr::todd(x, 4) * arr::todd(-x, 4) == GradedSeries::one(2, 4));
    }
}

TEST_CASE("total Chern class is multiplicative", "[characteristic][property]") {
    std::mt19937 rng(204);
    for (int trial = 0; trial < 60; ++trial) {
        const KElement x = arr::random_kelement(rng, 2, 2, false);
        const KElement y = arr::random_kelement(rng, 2, 2, false);
        REQUIRE(arr::total_chern(x + y, 4) == arr::total_chern(x, 4) * arr::total_chern(y, 4));
    }
}
