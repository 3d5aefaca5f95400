#pragma once

// Exact verifiers for the characteristic-class identities behind the
// Riemann–Roch computation of the alternating λ-sum of the cotangent
// element.  All comparisons are equalities of canonical forms.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arr/characteristic.hpp"
#include "arr/graded_series.hpp"
#include "arr/lambda_ring.hpp"

namespace arr {

/// Outcome of one identity check.  Failures are reported, never thrown.
struct Verdict {
    std::string check;
    bool passed = true;
    std::vector<std::string> details;

    explicit operator bool() const noexcept { return passed; }

    void expect(bool ok, std::string what) {
        details.push_back((ok ? "ok: " : "FAILED: ") + std::move(what));
        passed = passed && ok;
    }
};

/// (−1)^d γ^d(x − d) = Σ_{i=0}^{d} (−1)^i λ^i(x) for x of rank d ≥ 0.
inline Verdict verify_gala(const KElement& x) {
    Verdict v{"gala", true, {}};
    const std::int64_t d = x.rank();
    if (d < 0) {
        v.expect(false, "rank " + std::to_string(d) + " is negative");
        return v;
    }
    const auto top = static_cast<unsigned>(d);
    const KElement reduced = x - KElement::integer(x.symbol_count(), d);
    const KElement lhs = (d % 2 == 0 ? 1 : -1) * gamma_power(reduced, top);
    const KElement rhs = alternating_lambda_sum(x);
    v.expect(lhs == rhs, "(-1)^" + std::to_string(d) + " gamma^" + std::to_string(d) + "(x - " + std::to_string(d) +
                             ") = " + lhs.to_string() + " vs sum (-1)^i lambda^i(x) = " + rhs.to_string());
    return v;
}

/// ch(λ_{−1}(E*))·Td(E) = c_n(E) for E = [a1] + ... + [an], in all degrees ≤ D.
inline Verdict verify_borel_serre(unsigned n, unsigned truncation) {
    Verdict v{"borel_serre", true, {}};
    if (n < 1 || truncation < n) {
        v.expect(false, "need n >= 1 and D >= n, got n=" + std::to_string(n) + " D=" + std::to_string(truncation));
        return v;
    }
    const KElement bundle = KElement::generic_lines(n);
    const GradedSeries lhs = ch(alternating_lambda_sum(dual(bundle)), truncation) * todd(bundle, truncation);
    const GradedSeries top = chern_class(bundle, n, truncation);
    v.expect(lhs == top, "n=" + std::to_string(n) + " D=" + std::to_string(truncation) + ": ch(lambda_-1(E*))Td(E) = " +
                             lhs.to_string() + " vs c_n(E) = " + top.to_string());
    return v;
}

/// ch(γ^{n−1}(x − n)) = Σ_i Π_{j≠i} (e^{a_j} − 1) for x = [a1] + ... + [an].
inline Verdict verify_ch_gamma(unsigned n, unsigned truncation) {
    Verdict v{"ch_gamma", true, {}};
    if (n < 1) {
        v.expect(false, "need n >= 1");
        return v;
    }
    const KElement x = KElement::generic_lines(n);
    const GradedSeries lhs = ch(gamma_power(x - KElement::integer(n, n), n - 1), truncation);

    const GradedSeries one = GradedSeries::one(n, truncation);
    std::vector<GradedSeries> shifted;
    for (std::size_t j = 0; j < n; ++j) {
        shifted.push_back(exp(GradedSeries::symbol(n, truncation, j)) - one);
    }
    GradedSeries rhs(n, truncation);
    for (std::size_t i = 0; i < n; ++i) {
        GradedSeries product = one;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                product *= shifted[j];
            }
        }
        rhs += product;
    }
    v.expect(lhs == rhs, "n=" + std::to_string(n) + " D=" + std::to_string(truncation) +
                             ": ch(gamma^(n-1)(x-n)) matches sum_i prod_{j!=i}(e^a_j - 1)");
    return v;
}

/// P = ch(γ^{n−1}(x − n))·Td(x*) at truncation n vanishes below degree n−1,
/// equals c_{n−1}(x) in degree n−1 and −(n/2)·c_n(x) in degree n.
inline Verdict verify_prop_chtd(unsigned n) {
    Verdict v{"prop_chtd", true, {}};
    if (n < 1) {
        v.expect(false, "need n >= 1");
        return v;
    }
    const unsigned top = n;
    const KElement x = KElement::generic_lines(n);
    const GradedSeries product = ch(gamma_power(x - KElement::integer(n, n), n - 1), top) * todd(dual(x), top);
    const GradedSeries chern = total_chern(x, top);

    bool vanishes = true;
    for (unsigned k = 0; k + 1 < n; ++k) {
        vanishes = vanishes && component(product, k).is_zero();
    }
    v.expect(vanishes, "n=" + std::to_string(n) + ": components below degree " + std::to_string(n - 1) + " vanish");

    const GradedSeries sub_top = component(product, n - 1);
    v.expect(sub_top == component(chern, n - 1), "n=" + std::to_string(n) + ": degree " + std::to_string(n - 1) +
                                                      " part " + sub_top.to_string() + " equals c_" +
                                                      std::to_string(n - 1) + "(x)");

    const GradedSeries top_part = component(product, n);
    const GradedSeries expected = Rational(-static_cast<std::int64_t>(n), 2) * component(chern, n);
    v.expect(top_part == expected, "n=" + std::to_string(n) + ": degree " + std::to_string(n) + " part " +
                                       top_part.to_string() + " equals -(" + std::to_string(n) + "/2) c_" +
                                       std::to_string(n) + "(x)");
    return v;
}

/// Degree count: the degree-d part of form·positive vanishes when form lives
/// in degrees ≥ d and positive has no constant term.  Returns whether
/// component(form·positive, d) is zero.
inline bool top_degree_vanishing(const GradedSeries& form, const GradedSeries& positive, unsigned d) {
    if (positive.constant_term() != 0) {
        throw DomainError("second factor must have zero degree-0 part");
    }
    if (d > form.truncation()) {
        throw DomainError("degree " + std::to_string(d) + " exceeds truncation " + std::to_string(form.truncation()));
    }
    return component(form * positive, d).is_zero();
}

/// Random K-element over n symbols: `lines` lines with roots drawn from
/// [-2, 2]^n, multiplicities in [1, 2] (effective) or [-2, 2] otherwise.
template <typename Engine>
KElement random_kelement(Engine& rng, std::size_t n, unsigned lines, bool effective) {
    std::uniform_int_distribution<std::int64_t> coord(-2, 2);
    std::uniform_int_distribution<std::int64_t> mult(effective ? 1 : -2, 2);
    KElement x(n);
    for (unsigned l = 0; l < lines; ++l) {
        Root r = Root::trivial(n);
        for (auto& c : r.lattice) {
            c = coord(rng);
        }
        x += KElement::line(r, mult(rng));
    }
    return x;
}

/// ch(x + y) = ch(x) + ch(y) and ch(x·y) = ch(x)·ch(y) on `samples`
/// deterministic pseudo-random pairs over n symbols.
inline Verdict verify_homomorphism(unsigned n, unsigned truncation, unsigned samples = 8, std::uint32_t seed = 1) {
    Verdict v{"homomorphism", true, {}};
    std::mt19937 rng(seed + n * 7919U + truncation);
    bool additive = true;
    bool multiplicative = true;
    for (unsigned s = 0; s < samples; ++s) {
        const KElement x = random_kelement(rng, n, 3, false);
        const KElement y = random_kelement(rng, n, 3, false);
        additive = additive && ch(x + y, truncation) == ch(x, truncation) + ch(y, truncation);
        multiplicative = multiplicative && ch(x * y, truncation) == ch(x, truncation) * ch(y, truncation);
    }
    v.expect(additive, "n=" + std::to_string(n) + ": ch(x+y) = ch(x)+ch(y) on " + std::to_string(samples) + " pairs");
    v.expect(multiplicative,
             "n=" + std::to_string(n) + ": ch(xy) = ch(x)ch(y) on " + std::to_string(samples) + " pairs");
    return v;
}

/// Rank-d K-elements with repeated roots: [a1] taken twice, then the
/// remaining generic lines.
inline KElement repeated_root_sample(unsigned d) {
    if (d == 0) {
        return KElement(1);
    }
    const std::size_t n = d == 1 ? 1 : d - 1;
    KElement x = KElement::line(Root::basis(n, 0), d == 1 ? 1 : 2);
    for (std::size_t i = 1; i < n; ++i) {
        x += KElement::line(Root::basis(n, i));
    }
    return x;
}

} // namespace arr
