#pragma once

// Chern character, Chern classes and Todd class of formal K-elements.

#include <cstdint>
#include <vector>

#include "arr/graded_series.hpp"
#include "arr/lambda_ring.hpp"

namespace arr {

/// First Chern class of a line as a linear form in the roots.
inline GradedSeries first_chern(const Root& r, unsigned truncation) {
    return GradedSeries::linear_form(truncation, r.lattice);
}

/// ch(x) = Σ mult(r)·e^{c1(r)}.
inline GradedSeries ch(const KElement& x, unsigned truncation) {
    GradedSeries out(x.symbol_count(), truncation);
    for (const auto& [r, m] : x.terms()) {
        out += Rational(m) * exp(first_chern(r, truncation));
    }
    return out;
}

/// c(x) = Π (1 + c1(r))^{mult(r)}.
inline GradedSeries total_chern(const KElement& x, unsigned truncation) {
    const std::size_t n = x.symbol_count();
    GradedSeries out = GradedSeries::one(n, truncation);
    for (const auto& [r, m] : x.terms()) {
        out *= pow(GradedSeries::one(n, truncation) + first_chern(r, truncation), m);
    }
    return out;
}

/// c_k(x), carried at the given truncation (default: k itself).
inline GradedSeries chern_class(const KElement& x, unsigned k, unsigned truncation) {
    return component(total_chern(x, truncation), k);
}

inline GradedSeries chern_class(const KElement& x, unsigned k) { return chern_class(x, k, k); }

/// Coefficients of Q(z) = z/(1 − e^{−z}) up to z^degree, obtained by
/// inverting (1 − e^{−z})/z = Σ (−1)^k z^k/(k+1)! as a one-symbol series.
inline std::vector<Rational> todd_coefficients(unsigned degree) {
    GradedSeries::TermMap terms;
    for (unsigned k = 0; k <= degree; ++k) {
        terms.emplace(Monomial{{k}}, Rational(k % 2 == 0 ? 1 : -1) / factorial(k + 1));
    }
    const GradedSeries q = inverse(GradedSeries(1, degree, std::move(terms)));
    std::vector<Rational> out;
    out.reserve(degree + 1);
    for (unsigned k = 0; k <= degree; ++k) {
        out.push_back(q.coefficient(Monomial{{k}}));
    }
    return out;
}

/// Td(x) = Π Q(c1(r))^{mult(r)}.
inline GradedSeries todd(const KElement& x, unsigned truncation) {
    const std::size_t n = x.symbol_count();
    const std::vector<Rational> q = todd_coefficients(truncation);
    GradedSeries out = GradedSeries::one(n, truncation);
    for (const auto& [r, m] : x.terms()) {
        if (r.is_trivial()) {
            continue;
        }
        out *= pow(evaluate_power_series(q, first_chern(r, truncation)), m);
    }
    return out;
}

} // namespace arr
