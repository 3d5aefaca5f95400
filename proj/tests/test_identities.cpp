#include "catch_amalgamated.hpp"

#include <random>

#include "arr/identities.hpp"
#include "oracles.hpp"

using arr::GradedSeries;
using arr::KElement;
using arr::Rational;
using arr::Root;

namespace {

// Σ_j (Π_{k≠j} a_k)·a_j/(e^{a_j} − 1), expanded from the closed-form
// coefficients of a/(e^a − 1).
GradedSeries prop_chtd_oracle(std::size_t n) {
    const unsigned top = static_cast<unsigned>(n);
    std::vector<Rational> bernoulli = oracle::todd_by_division(top);
    for (unsigned k = 1; k <= top; k += 2) {
        bernoulli[k] = -bernoulli[k];
    }
    GradedSeries out(n, top);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::int64_t> form(n, 0);
        form[j] = 1;
        const GradedSeries factor = oracle::univariate_of_linear(bernoulli, form, top);
        // multiply by the monomial Π_{k≠j} a_k by shifting exponents
        GradedSeries::TermMap shifted;
        for (const auto& [m, c] : factor.terms()) {
            arr::Monomial moved = m;
            for (std::size_t k = 0; k < n; ++k) {
                moved.exponents[k] += (k == j ? 0 : 1);
            }
            shifted.emplace(moved, c);
        }
        out += GradedSeries(n, top, std::move(shifted));
    }
    return out;
}

} // namespace

TEST_CASE("Borel-Serre identity", "[identities]") {
    for (unsigned n = 1; n <= 5; ++n) {
        CAPTURE(n);
        CHECK(arr::verify_borel_serre(n, n).passed);
    }
    CHECK(arr::verify_borel_serre(2, 4).passed);
    CHECK_FALSE(arr::verify_borel_serre(3, 2).passed);
    CHECK_FALSE(arr::verify_borel_serre(0, 2).passed);
}

TEST_CASE("Chern character of gamma^(n-1)", "[identities]") {
    for (unsigned n = 1; n <= 5; ++n) {
        CAPTURE(n);
        CHECK(arr::verify_ch_gamma(n, n + 1).passed);
    }
    CHECK(arr::verify_ch_gamma(4, 5).passed);
    // n = 1: γ^0 = 1, the right side is the empty product.
    CHECK(arr::ch(arr::gamma_power(KElement::generic_lines(1) - KElement::unit(1), 0), 3) ==
          GradedSeries::one(1, 3));
}

TEST_CASE("ch(gamma) Td(dual) concentrates in degrees n-1 and n", "[identities]") {
    for (unsigned n = 1; n <= 6; ++n) {
        CAPTURE(n);
        const auto v = arr::verify_prop_chtd(n);
        CHECK(v.passed);
        CHECK(v.details.size() == 3);
    }
}

TEST_CASE("product P against the closed-form oracle", "[identities]") {
    for (std::size_t n = 1; n <= 5; ++n) {
        CAPTURE(n);
        const unsigned top = static_cast<unsigned>(n);
        const KElement x = KElement::generic_lines(n);
        const GradedSeries p = arr::ch(arr::gamma_power(x - KElement::integer(n, static_cast<std::int64_t>(n)), top - 1),
                                       top) *
                               arr::todd(arr::dual(x), top);
        CHECK(p == prop_chtd_oracle(n));
    }
    // n = 1 by hand: a/(e^a - 1) = 1 - a/2 + ... truncated at degree 1.
    const auto a = GradedSeries::symbol(1, 1, 0);
    CHECK(prop_chtd_oracle(1) == GradedSeries::one(1, 1) - Rational(1, 2) * a);
}

TEST_CASE("degree count kills top-degree products", "[identities]") {
    const unsigned n = 3;
    const GradedSeries top = oracle::elementary(n, n, n);
    CHECK(arr::top_degree_vanishing(top, GradedSeries::symbol(n, n, 0), n));
    CHECK(arr::top_degree_vanishing(top, GradedSeries(n, n), n));
    CHECK_THROWS_AS(arr::top_degree_vanishing(top, GradedSeries::one(n, n), n), arr::DomainError);

    std::mt19937 rng(301);
    for (int trial = 0; trial < 100; ++trial) {
        const GradedSeries y = oracle::random_series(rng, n, n, true);
        REQUIRE(arr::top_degree_vanishing(top, y, n));
    }
    // The Borel-Serre product is exactly c_n, so multiplying by any
    // positive-degree series leaves nothing in degree n.
    const KElement e = KElement::generic_lines(n);
    const GradedSeries bs = arr::ch(arr::alternating_lambda_sum(arr::dual(e)), n) * arr::todd(e, n);
    CHECK(arr::top_degree_vanishing(bs, oracle::random_series(rng, n, n, true), n));
    // Without the degree hypothesis the check can fail.
    CHECK_FALSE(arr::top_degree_vanishing(GradedSeries::symbol(1, 2, 0), GradedSeries::symbol(1, 2, 0), 2));
}

TEST_CASE("gamma^k of rank-zero elements starts in degree k", "[identities][property]") {
    std::mt19937 rng(302);
    std::uniform_int_distribution<std::int64_t> coord(-2, 2);
    std::uniform_int_distribution<int> count(1, 3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2;
        const int lines = count(rng);
        KElement y(n);
        for (int i = 0; i < lines; ++i) {
            y += KElement::line(Root{{coord(rng), coord(rng)}});
            y -= KElement::line(Root{{coord(rng), coord(rng)}});
        }
        REQUIRE(y.rank() == 0);
        for (unsigned k = 1; k <= 3; ++k) {
            const GradedSeries c = arr::ch(arr::gamma_power(y, k), 4);
            for (unsigned j = 0; j < k; ++j) {
                REQUIRE(arr::component(c, j).is_zero());
            }
        }
    }
}

TEST_CASE("homomorphism verifier", "[identities]") {
    for (unsigned n = 1; n <= 3; ++n) {
        CHECK(arr::verify_homomorphism(n, n + 1).passed);
    }
}
