#pragma once

// Formal λ-ring of virtual bundles split into line symbols.  A line is named
// by its first Chern class, an integer combination of the roots a1..an; the
// tensor product of lines adds these lattice vectors.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arr/errors.hpp"

namespace arr {

struct Root {
    std::vector<std::int64_t> lattice;

    static Root trivial(std::size_t symbol_count) { return Root{std::vector<std::int64_t>(symbol_count, 0)}; }

    static Root basis(std::size_t symbol_count, std::size_t index) {
        Root r = trivial(symbol_count);
        r.lattice.at(index) = 1;
        return r;
    }

    std::size_t symbol_count() const noexcept { return lattice.size(); }

    bool is_trivial() const noexcept {
        for (auto v : lattice) {
            if (v != 0) {
                return false;
            }
        }
        return true;
    }

    friend Root operator+(const Root& lhs, const Root& rhs) {
        Root out = lhs;
        for (std::size_t i = 0; i < out.lattice.size(); ++i) {
            out.lattice[i] += rhs.lattice[i];
        }
        return out;
    }

    friend Root operator-(const Root& r) {
        Root out = r;
        for (auto& v : out.lattice) {
            v = -v;
        }
        return out;
    }

    friend Root operator*(std::int64_t k, const Root& r) {
        Root out = r;
        for (auto& v : out.lattice) {
            v *= k;
        }
        return out;
    }

    friend auto operator<=>(const Root&, const Root&) = default;

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < lattice.size(); ++i) {
            const auto v = lattice[i];
            if (v == 0) {
                continue;
            }
            if (!out.empty() || v < 0) {
                out += v < 0 ? "-" : "+";
            }
            if (v != 1 && v != -1) {
                out += std::to_string(v < 0 ? -v : v);
            }
            out += 'a' + std::to_string(i + 1);
        }
        return out.empty() ? "0" : out;
    }
};

/// Element of the group ring Z[lattice]: a virtual sum of lines.
class KElement {
public:
    using TermMap = std::map<Root, std::int64_t>;

    explicit KElement(std::size_t symbol_count) : symbols_(symbol_count) {}

    KElement(std::size_t symbol_count, const TermMap& terms) : symbols_(symbol_count) {
        for (const auto& [r, m] : terms) {
            add_term(r, m);
        }
    }

    static KElement line(const Root& r, std::int64_t multiplicity = 1) {
        KElement x(r.symbol_count());
        x.add_term(r, multiplicity);
        return x;
    }

    /// m copies of the trivial line.
    static KElement integer(std::size_t symbol_count, std::int64_t m) {
        return line(Root::trivial(symbol_count), m);
    }

    static KElement unit(std::size_t symbol_count) { return integer(symbol_count, 1); }

    /// [a1] + ... + [an] over n independent symbols.
    static KElement generic_lines(std::size_t n) {
        KElement x(n);
        for (std::size_t i = 0; i < n; ++i) {
            x.add_term(Root::basis(n, i), 1);
        }
        return x;
    }

    std::size_t symbol_count() const noexcept { return symbols_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Augmentation: the virtual rank.
    std::int64_t rank() const noexcept {
        std::int64_t r = 0;
        for (const auto& kv : terms_) {
            r += kv.second;
        }
        return r;
    }

    bool is_effective() const noexcept {
        for (const auto& kv : terms_) {
            if (kv.second < 0) {
                return false;
            }
        }
        return true;
    }

    std::int64_t multiplicity(const Root& r) const {
        const auto it = terms_.find(r);
        return it == terms_.end() ? 0 : it->second;
    }

    KElement& operator+=(const KElement& rhs) {
        require_compatible(rhs);
        for (const auto& [r, m] : rhs.terms_) {
            add_term(r, m);
        }
        return *this;
    }

    KElement& operator-=(const KElement& rhs) {
        require_compatible(rhs);
        for (const auto& [r, m] : rhs.terms_) {
            add_term(r, -m);
        }
        return *this;
    }

    friend KElement operator+(KElement lhs, const KElement& rhs) { return lhs += rhs; }
    friend KElement operator-(KElement lhs, const KElement& rhs) { return lhs -= rhs; }
    friend KElement operator-(const KElement& x) { return KElement(x.symbols_) - x; }

    friend KElement operator*(std::int64_t k, const KElement& x) {
        KElement out(x.symbols_);
        if (k == 0) {
            return out;
        }
        for (const auto& [r, m] : x.terms_) {
            out.terms_.emplace(r, k * m);
        }
        return out;
    }

    /// Group-ring product: multiplicities multiply, roots add.
    friend KElement operator*(const KElement& lhs, const KElement& rhs) {
        lhs.require_compatible(rhs);
        KElement out(lhs.symbols_);
        for (const auto& [r, m] : lhs.terms_) {
            for (const auto& [s, k] : rhs.terms_) {
                out.add_term(r + s, m * k);
            }
        }
        return out;
    }

    friend bool operator==(const KElement&, const KElement&) = default;

    std::string to_string() const {
        if (terms_.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto& [r, m] : terms_) {
            const auto mag = m < 0 ? -m : m;
            os << (first ? (m < 0 ? "-" : "") : (m < 0 ? " - " : " + "));
            first = false;
            if (mag != 1) {
                os << mag << '*';
            }
            os << '[' << r.to_string() << ']';
        }
        return os.str();
    }

private:
    void add_term(const Root& r, std::int64_t m) {
        if (r.symbol_count() != symbols_) {
            throw StructuralError("root " + r.to_string() + " has length " + std::to_string(r.symbol_count()) +
                                  ", expected " + std::to_string(symbols_));
        }
        if (m == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(r, m);
        if (!inserted) {
            it->second += m;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    void require_compatible(const KElement& rhs) const {
        if (symbols_ != rhs.symbols_) {
            throw StructuralError("K-elements over " + std::to_string(symbols_) + " and " +
                                  std::to_string(rhs.symbols_) + " symbols");
        }
    }

    std::size_t symbols_;
    TermMap terms_;
};

/// Dual: every root negated.
inline KElement dual(const KElement& x) {
    KElement::TermMap terms;
    for (const auto& [r, m] : x.terms()) {
        terms.emplace(-r, m);
    }
    return KElement(x.symbol_count(), terms);
}

/// Polynomial in t with K-element coefficients, truncated at t^max_power.
class TSeries {
public:
    TSeries(std::size_t symbol_count, unsigned max_power)
        : symbols_(symbol_count), coefficients_(max_power + 1, KElement(symbol_count)) {}

    static TSeries one(std::size_t symbol_count, unsigned max_power) {
        TSeries s(symbol_count, max_power);
        s.coefficients_[0] = KElement::unit(symbol_count);
        return s;
    }

    /// 1 + t·[r]
    static TSeries one_plus_t_line(const Root& r, unsigned max_power) {
        TSeries s = one(r.symbol_count(), max_power);
        if (max_power >= 1) {
            s.coefficients_[1] = KElement::line(r);
        }
        return s;
    }

    std::size_t symbol_count() const noexcept { return symbols_; }
    unsigned max_power() const noexcept { return static_cast<unsigned>(coefficients_.size() - 1); }
    const std::vector<KElement>& coefficients() const noexcept { return coefficients_; }

    const KElement& coefficient(unsigned k) const {
        if (k > max_power()) {
            throw DomainError("t-power " + std::to_string(k) + " beyond truncation " + std::to_string(max_power()));
        }
        return coefficients_[k];
    }

    void set_coefficient(unsigned k, KElement value) {
        if (k > max_power()) {
            throw DomainError("t-power " + std::to_string(k) + " beyond truncation " + std::to_string(max_power()));
        }
        if (value.symbol_count() != symbols_) {
            throw StructuralError("coefficient symbol count mismatch");
        }
        coefficients_[k] = std::move(value);
    }

    TSeries& operator+=(const TSeries& rhs) {
        require_compatible(rhs);
        for (std::size_t k = 0; k < coefficients_.size(); ++k) {
            coefficients_[k] += rhs.coefficients_[k];
        }
        return *this;
    }

    friend TSeries operator+(TSeries lhs, const TSeries& rhs) { return lhs += rhs; }
    friend TSeries operator-(TSeries lhs, const TSeries& rhs) {
        lhs.require_compatible(rhs);
        for (std::size_t k = 0; k < lhs.coefficients_.size(); ++k) {
            lhs.coefficients_[k] -= rhs.coefficients_[k];
        }
        return lhs;
    }

    friend TSeries operator*(const TSeries& lhs, const TSeries& rhs) {
        lhs.require_compatible(rhs);
        const unsigned top = lhs.max_power();
        TSeries out(lhs.symbols_, top);
        for (unsigned i = 0; i <= top; ++i) {
            if (lhs.coefficients_[i].is_zero()) {
                continue;
            }
            for (unsigned j = 0; i + j <= top; ++j) {
                if (!rhs.coefficients_[j].is_zero()) {
                    out.coefficients_[i + j] += lhs.coefficients_[i] * rhs.coefficients_[j];
                }
            }
        }
        return out;
    }

    TSeries& operator*=(const TSeries& rhs) { return *this = *this * rhs; }

    friend bool operator==(const TSeries&, const TSeries&) = default;

    std::string to_string() const {
        std::string out;
        for (std::size_t k = 0; k < coefficients_.size(); ++k) {
            if (coefficients_[k].is_zero()) {
                continue;
            }
            if (!out.empty()) {
                out += " + ";
            }
            out += '(' + coefficients_[k].to_string() + ")";
            if (k > 0) {
                out += "*t^" + std::to_string(k);
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    void require_compatible(const TSeries& rhs) const {
        if (symbols_ != rhs.symbols_ || coefficients_.size() != rhs.coefficients_.size()) {
            throw StructuralError("t-series over mismatched symbols or truncation");
        }
    }

    std::size_t symbols_;
    std::vector<KElement> coefficients_;
};

/// Inverse of a t-series whose constant coefficient is a unit ±[r] of the
/// group ring.
inline TSeries inverse(const TSeries& s) {
    const KElement& c0 = s.coefficient(0);
    if (c0.terms().size() != 1 || (c0.terms().begin()->second != 1 && c0.terms().begin()->second != -1)) {
        throw NonInvertibleError("t-series constant coefficient " + c0.to_string() + " is not a unit");
    }
    const auto& [root, sign] = *c0.terms().begin();
    const KElement c0_inv = KElement::line(-root, sign);
    const unsigned top = s.max_power();
    TSeries normalized(s.symbol_count(), top);
    for (unsigned k = 0; k <= top; ++k) {
        normalized.set_coefficient(k, c0_inv * s.coefficient(k));
    }
    // normalized = 1 - u with u divisible by t, so 1/normalized = Σ u^k.
    const TSeries u = TSeries::one(s.symbol_count(), top) - normalized;
    TSeries sum = TSeries::one(s.symbol_count(), top);
    TSeries power = sum;
    for (unsigned k = 1; k <= top; ++k) {
        power *= u;
        sum += power;
    }
    TSeries out(s.symbol_count(), top);
    for (unsigned k = 0; k <= top; ++k) {
        out.set_coefficient(k, c0_inv * sum.coefficient(k));
    }
    return out;
}

/// λ_t(x) to t^max_power: λ_t([r]) = 1 + t[r], extended multiplicatively;
/// negative multiplicities use the inverse series.
inline TSeries lambda_t(const KElement& x, unsigned max_power) {
    const std::size_t n = x.symbol_count();
    TSeries result = TSeries::one(n, max_power);
    for (const auto& [r, m] : x.terms()) {
        TSeries factor = TSeries::one_plus_t_line(r, max_power);
        if (m < 0) {
            // (1 + t[r])^{-1} = Σ (-1)^k [k·r] t^k
            factor = TSeries(n, max_power);
            for (unsigned k = 0; k <= max_power; ++k) {
                factor.set_coefficient(k, KElement::line(static_cast<std::int64_t>(k) * r, k % 2 == 0 ? 1 : -1));
            }
        }
        const std::int64_t count = m < 0 ? -m : m;
        for (std::int64_t i = 0; i < count; ++i) {
            result *= factor;
        }
    }
    return result;
}

/// γ_t(x) = λ_{t/(1−t)}(x), truncated at t^max_power.
inline TSeries gamma_t(const KElement& x, unsigned max_power) {
    const std::size_t n = x.symbol_count();
    const TSeries lambda = lambda_t(x, max_power);
    // s = t/(1 - t) = t + t^2 + ...
    TSeries s(n, max_power);
    for (unsigned k = 1; k <= max_power; ++k) {
        s.set_coefficient(k, KElement::unit(n));
    }
    TSeries result(n, max_power);
    TSeries s_power = TSeries::one(n, max_power);
    for (unsigned k = 0; k <= max_power; ++k) {
        if (k > 0) {
            s_power *= s;
        }
        for (unsigned j = k; j <= max_power; ++j) {
            const KElement& c = s_power.coefficient(j);
            if (c.is_zero()) {
                continue;
            }
            // c is an integer multiple of the unit line.
            KElement updated = result.coefficient(j) + c.multiplicity(Root::trivial(n)) * lambda.coefficient(k);
            result.set_coefficient(j, std::move(updated));
        }
    }
    return result;
}

inline KElement lambda_power(const KElement& x, unsigned k) { return lambda_t(x, k).coefficient(k); }

inline KElement gamma_power(const KElement& x, unsigned k) { return gamma_t(x, k).coefficient(k); }

/// Σ_{i=0}^{d} (−1)^i λ^i(x) where d = rank(x) ≥ 0.
inline KElement alternating_lambda_sum(const KElement& x) {
    const std::int64_t d = x.rank();
    if (d < 0) {
        throw DomainError("alternating λ-sum needs non-negative rank, got " + std::to_string(d));
    }
    const TSeries lambda = lambda_t(x, static_cast<unsigned>(d));
    KElement sum(x.symbol_count());
    for (unsigned i = 0; i <= static_cast<unsigned>(d); ++i) {
        sum += (i % 2 == 0 ? 1 : -1) * lambda.coefficient(i);
    }
    return sum;
}

} // namespace arr
