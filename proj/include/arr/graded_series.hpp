#pragma once

// Truncated multivariate polynomials with exact rational coefficients in
// formal degree-one symbols a1..an.  Every series carries its own symbol
// count and truncation degree; operands must agree on both.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arr/errors.hpp"
#include "arr/rational.hpp"

namespace arr {

struct Monomial {
    std::vector<unsigned> exponents;

    static Monomial unit(std::size_t symbol_count) { return Monomial{std::vector<unsigned>(symbol_count, 0)}; }

    static Monomial symbol(std::size_t symbol_count, std::size_t index, unsigned power = 1) {
        Monomial m = unit(symbol_count);
        m.exponents.at(index) = power;
        return m;
    }

    std::size_t symbol_count() const noexcept { return exponents.size(); }

    unsigned degree() const noexcept { return std::accumulate(exponents.begin(), exponents.end(), 0U); }

    friend Monomial operator*(const Monomial& lhs, const Monomial& rhs) {
        Monomial out = lhs;
        for (std::size_t i = 0; i < out.exponents.size(); ++i) {
            out.exponents[i] += rhs.exponents[i];
        }
        return out;
    }

    // Graded order: lower total degree first, then lexicographic.
    friend std::strong_ordering operator<=>(const Monomial& lhs, const Monomial& rhs) {
        if (auto c = lhs.degree() <=> rhs.degree(); c != 0) {
            return c;
        }
        return lhs.exponents <=> rhs.exponents;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            if (exponents[i] == 0) {
                continue;
            }
            if (!out.empty()) {
                out += '*';
            }
            out += 'a' + std::to_string(i + 1);
            if (exponents[i] > 1) {
                out += '^' + std::to_string(exponents[i]);
            }
        }
        return out.empty() ? "1" : out;
    }
};

class GradedSeries {
public:
    using TermMap = std::map<Monomial, Rational>;

    GradedSeries(std::size_t symbol_count, unsigned truncation) : symbols_(symbol_count), truncation_(truncation) {}

    /// Builds a canonical series: zero coefficients and monomials above the
    /// truncation degree are dropped.
    GradedSeries(std::size_t symbol_count, unsigned truncation, TermMap terms)
        : symbols_(symbol_count), truncation_(truncation) {
        for (auto& [m, c] : terms) {
            if (m.symbol_count() != symbols_) {
                throw StructuralError("monomial " + m.to_string() + " has " + std::to_string(m.symbol_count()) +
                                      " exponents, series has " + std::to_string(symbols_) + " symbols");
            }
        }
        std::erase_if(terms, [&](const auto& kv) { return kv.second == 0 || kv.first.degree() > truncation_; });
        terms_ = std::move(terms);
    }

    static GradedSeries constant(std::size_t symbol_count, unsigned truncation, const Rational& value) {
        return GradedSeries(symbol_count, truncation, TermMap{{Monomial::unit(symbol_count), value}});
    }

    static GradedSeries one(std::size_t symbol_count, unsigned truncation) {
        return constant(symbol_count, truncation, Rational(1));
    }

    /// The symbol a_{index+1}.
    static GradedSeries symbol(std::size_t symbol_count, unsigned truncation, std::size_t index) {
        if (index >= symbol_count) {
            throw DomainError("symbol index " + std::to_string(index) + " out of range");
        }
        return GradedSeries(symbol_count, truncation, TermMap{{Monomial::symbol(symbol_count, index), Rational(1)}});
    }

    /// Σ coefficients[i]·a_{i+1}.
    static GradedSeries linear_form(unsigned truncation, std::span<const std::int64_t> coefficients) {
        TermMap terms;
        for (std::size_t i = 0; i < coefficients.size(); ++i) {
            if (coefficients[i] != 0) {
                terms.emplace(Monomial::symbol(coefficients.size(), i), Rational(coefficients[i]));
            }
        }
        return GradedSeries(coefficients.size(), truncation, std::move(terms));
    }

    std::size_t symbol_count() const noexcept { return symbols_; }
    unsigned truncation() const noexcept { return truncation_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const {
        const auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const { return coefficient(Monomial::unit(symbols_)); }

    /// Re-truncates to a lower degree.
    GradedSeries truncated(unsigned degree) const {
        if (degree > truncation_) {
            throw DomainError("cannot raise truncation from " + std::to_string(truncation_) + " to " +
                              std::to_string(degree));
        }
        return GradedSeries(symbols_, degree, terms_);
    }

    GradedSeries& operator+=(const GradedSeries& rhs) {
        require_compatible(rhs, "add");
        for (const auto& [m, c] : rhs.terms_) {
            auto [it, inserted] = terms_.try_emplace(m, c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) {
                    terms_.erase(it);
                }
            }
        }
        return *this;
    }

    GradedSeries& operator-=(const GradedSeries& rhs) { return *this += -rhs; }

    GradedSeries& operator*=(const Rational& scalar) {
        if (scalar == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& kv : terms_) {
            kv.second *= scalar;
        }
        return *this;
    }

    friend GradedSeries operator+(GradedSeries lhs, const GradedSeries& rhs) { return lhs += rhs; }
    friend GradedSeries operator-(GradedSeries lhs, const GradedSeries& rhs) { return lhs -= rhs; }
    friend GradedSeries operator-(GradedSeries x) { return x *= Rational(-1); }
    friend GradedSeries operator*(GradedSeries x, const Rational& scalar) { return x *= scalar; }
    friend GradedSeries operator*(const Rational& scalar, GradedSeries x) { return x *= scalar; }

    /// Truncated product.
    friend GradedSeries operator*(const GradedSeries& lhs, const GradedSeries& rhs) {
        lhs.require_compatible(rhs, "multiply");
        const unsigned top = lhs.truncation_;
        std::vector<std::pair<const Monomial*, const Rational*>> right;
        std::vector<unsigned> right_degree;
        right.reserve(rhs.terms_.size());
        for (const auto& [m, c] : rhs.terms_) {
            right.emplace_back(&m, &c);
            right_degree.push_back(m.degree());
        }
        TermMap out;
        for (const auto& [lm, lc] : lhs.terms_) {
            const unsigned ld = lm.degree();
            // rhs is in graded order, so the first overflow ends the row.
            for (std::size_t j = 0; j < right.size() && ld + right_degree[j] <= top; ++j) {
                Rational prod = lc * *right[j].second;
                auto [it, inserted] = out.try_emplace(lm * *right[j].first, std::move(prod));
                if (!inserted) {
                    it->second += prod;
                }
            }
        }
        return GradedSeries(lhs.symbols_, top, std::move(out));
    }

    GradedSeries& operator*=(const GradedSeries& rhs) { return *this = *this * rhs; }

    friend bool operator==(const GradedSeries& lhs, const GradedSeries& rhs) {
        return lhs.symbols_ == rhs.symbols_ && lhs.truncation_ == rhs.truncation_ && lhs.terms_ == rhs.terms_;
    }

    std::string to_string() const {
        if (terms_.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            const bool negative = c < 0;
            const Rational magnitude = negative ? Rational(-c) : c;
            if (first) {
                os << (negative ? "-" : "");
            } else {
                os << (negative ? " - " : " + ");
            }
            first = false;
            if (m.degree() == 0) {
                os << magnitude.str();
            } else if (magnitude == 1) {
                os << m.to_string();
            } else {
                os << magnitude.str() << '*' << m.to_string();
            }
        }
        return os.str();
    }

private:
    void require_compatible(const GradedSeries& rhs, const char* op) const {
        if (symbols_ != rhs.symbols_ || truncation_ != rhs.truncation_) {
            throw StructuralError(std::string("cannot ") + op + " series over (" + std::to_string(symbols_) +
                                  " symbols, degree " + std::to_string(truncation_) + ") and (" +
                                  std::to_string(rhs.symbols_) + " symbols, degree " +
                                  std::to_string(rhs.truncation_) + ")");
        }
    }

    std::size_t symbols_;
    unsigned truncation_;
    TermMap terms_;
};

/// Homogeneous degree-k part.
inline GradedSeries component(const GradedSeries& x, unsigned k) {
    if (k > x.truncation()) {
        throw DomainError("degree " + std::to_string(k) + " exceeds truncation " + std::to_string(x.truncation()));
    }
    GradedSeries::TermMap out;
    for (const auto& [m, c] : x.terms()) {
        if (m.degree() == k) {
            out.emplace(m, c);
        }
    }
    return GradedSeries(x.symbol_count(), x.truncation(), std::move(out));
}

/// Σ coefficients[k]·arg^k for an argument with zero constant term; terms
/// past the truncation degree vanish and are not evaluated.
inline GradedSeries evaluate_power_series(std::span<const Rational> coefficients, const GradedSeries& arg) {
    if (arg.constant_term() != 0) {
        throw DomainError("power series argument must have zero constant term");
    }
    const std::size_t n = arg.symbol_count();
    const unsigned top = arg.truncation();
    GradedSeries result(n, top);
    GradedSeries power = GradedSeries::one(n, top);
    for (std::size_t k = 0; k < coefficients.size() && k <= top; ++k) {
        if (k > 0) {
            power = power * arg;
            if (power.is_zero()) {
                break;
            }
        }
        if (coefficients[k] != 0) {
            result += coefficients[k] * power;
        }
    }
    return result;
}

/// Multiplicative inverse, by Neumann iteration on 1 − x/c0.
inline GradedSeries inverse(const GradedSeries& x) {
    const Rational c0 = x.constant_term();
    if (c0 == 0) {
        throw NonInvertibleError("series with zero constant term is not invertible: " + x.to_string());
    }
    const Rational inv_c0 = 1 / c0;
    const GradedSeries u = GradedSeries::one(x.symbol_count(), x.truncation()) - x * inv_c0;
    const std::vector<Rational> geometric(x.truncation() + 1, Rational(1));
    return evaluate_power_series(geometric, u) * inv_c0;
}

/// exp of a series with zero constant term.
inline GradedSeries exp(const GradedSeries& x) {
    if (x.constant_term() != 0) {
        throw DomainError("exp requires zero constant term, got " + x.to_string());
    }
    std::vector<Rational> coefficients;
    for (unsigned k = 0; k <= x.truncation(); ++k) {
        coefficients.push_back(1 / factorial(k));
    }
    return evaluate_power_series(coefficients, x);
}

/// Integer power; negative exponents go through the inverse.
inline GradedSeries pow(const GradedSeries& x, std::int64_t exponent) {
    GradedSeries base = exponent < 0 ? inverse(x) : x;
    std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-exponent) : static_cast<std::uint64_t>(exponent);
    GradedSeries result = GradedSeries::one(x.symbol_count(), x.truncation());
    while (e > 0) {
        if (e & 1U) {
            result *= base;
        }
        e >>= 1U;
        if (e > 0) {
            base *= base;
        }
    }
    return result;
}

} // namespace arr
