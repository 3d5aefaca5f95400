#pragma once

// Bloch conductor, A(X) and log|ε(X)| from the combinatorics of tame
// strict-normal-crossings fibers.
//
// A fiber over p has components T_i of multiplicity m_i.  For a non-empty
// set J of components, T_J is the intersection and T*_J the open stratum
// obtained by removing deeper intersections.  The user supplies Euler
// characteristics χ(T_J) or χ_c(T*_J); the two are related by
//
//     χ(T_J) = Σ_{J' ⊇ J} χ_c(T*_{J'}),
//
// where absent strata are empty.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arr/errors.hpp"
#include "arr/rational.hpp"

namespace arr::conductor {

using ComponentSet = std::set<std::string>;

struct Component {
    std::string id;
    std::int64_t multiplicity = 1;
    std::optional<std::int64_t> chi_open;

    friend bool operator==(const Component&, const Component&) = default;
};

struct Stratum {
    ComponentSet components;
    std::optional<std::int64_t> chi_closed;
    std::optional<std::int64_t> chi_open;

    friend bool operator==(const Stratum&, const Stratum&) = default;
};

struct FiberModel {
    std::int64_t prime = 2;
    std::vector<Component> components;
    std::vector<Stratum> strata;

    friend bool operator==(const FiberModel&, const FiberModel&) = default;
};

struct ArithmeticModel {
    unsigned relative_dimension = 1;
    std::optional<std::int64_t> generic_euler;
    std::vector<FiberModel> fibers;

    friend bool operator==(const ArithmeticModel&, const ArithmeticModel&) = default;
};

inline std::string label(const ComponentSet& j) {
    std::string out = "{";
    for (const auto& id : j) {
        out += (out.size() > 1 ? "," : "") + id;
    }
    return out + "}";
}

inline bool is_prime(std::int64_t p) {
    if (p < 2) {
        return false;
    }
    for (std::int64_t q = 2; q <= p / q; ++q) {
        if (p % q == 0) {
            return false;
        }
    }
    return true;
}

namespace detail {

inline bool is_subset(const ComponentSet& small, const ComponentSet& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline std::string where(const FiberModel& f) { return "fiber p=" + std::to_string(f.prime); }

// Strata by decreasing |J|; ties broken lexicographically.
inline std::vector<std::size_t> deepest_first(const FiberModel& f) {
    std::vector<std::size_t> order(f.strata.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ja = f.strata[a].components;
        const auto& jb = f.strata[b].components;
        if (ja.size() != jb.size()) {
            return ja.size() > jb.size();
        }
        return ja < jb;
    });
    return order;
}

inline std::int64_t open_sum_strict_supersets(const FiberModel& f, const ComponentSet& j) {
    std::int64_t sum = 0;
    for (const auto& s : f.strata) {
        if (s.components.size() > j.size() && is_subset(j, s.components)) {
            sum += s.chi_open.value();
        }
    }
    return sum;
}

inline void sync_components(FiberModel& f) {
    for (auto& c : f.components) {
        for (const auto& s : f.strata) {
            if (s.components.size() == 1 && *s.components.begin() == c.id) {
                c.chi_open = s.chi_open;
            }
        }
    }
}

} // namespace detail

/// Structural checks: declared ids, multiplicities, downward-closed strata
/// lattice with every singleton present, no duplicates, |J| ≤ d + 1 when a
/// relative dimension is given, and Euler data on every stratum.
inline void validate(const FiberModel& f, std::optional<unsigned> relative_dimension = std::nullopt) {
    const std::string at = detail::where(f);
    if (!is_prime(f.prime)) {
        throw ValidationError(at + ": " + std::to_string(f.prime) + " is not a prime");
    }
    if (f.components.empty()) {
        throw ValidationError(at + ": no components");
    }
    ComponentSet ids;
    for (const auto& c : f.components) {
        if (c.id.empty()) {
            throw ValidationError(at + ": component with empty id");
        }
        if (!ids.insert(c.id).second) {
            throw ValidationError(at + ": duplicate component id '" + c.id + "'");
        }
        if (c.multiplicity < 1) {
            throw ValidationError(at + ": component '" + c.id + "' has multiplicity " +
                                  std::to_string(c.multiplicity) + " < 1");
        }
    }
    std::set<ComponentSet> seen;
    for (const auto& s : f.strata) {
        if (s.components.empty()) {
            throw ValidationError(at + ": stratum with empty component set");
        }
        for (const auto& id : s.components) {
            if (!ids.contains(id)) {
                throw ValidationError(at + ": stratum " + label(s.components) + " references undeclared component '" +
                                      id + "'");
            }
        }
        if (!seen.insert(s.components).second) {
            throw ValidationError(at + ": duplicate stratum " + label(s.components));
        }
        if (!s.chi_closed && !s.chi_open) {
            throw ValidationError(at + ": stratum " + label(s.components) + " has neither chi_closed nor chi_open");
        }
        if (relative_dimension && s.components.size() > *relative_dimension + 1) {
            throw ValidationError(at + ": stratum " + label(s.components) + " meets " +
                                  std::to_string(s.components.size()) + " components, more than d+1 = " +
                                  std::to_string(*relative_dimension + 1));
        }
    }
    for (const auto& id : ids) {
        if (!seen.contains(ComponentSet{id})) {
            throw ValidationError(at + ": component '" + id + "' has no singleton stratum");
        }
    }
    // T_J non-empty forces T_K non-empty for every K ⊂ J.
    for (const auto& j : seen) {
        for (const auto& id : j) {
            ComponentSet face = j;
            face.erase(id);
            if (!face.empty() && !seen.contains(face)) {
                throw ValidationError(at + ": stratum " + label(j) + " present but its face " + label(face) +
                                      " is missing");
            }
        }
    }
}

/// Fills chi_open on every stratum from chi_closed (Möbius inversion over
/// the supersets).  Idempotent; existing chi_open values are overwritten.
inline FiberModel open_strata_from_closed(FiberModel f) {
    validate(f);
    for (const auto& s : f.strata) {
        if (!s.chi_closed) {
            throw ValidationError(detail::where(f) + ": stratum " + label(s.components) + " lacks chi_closed");
        }
    }
    for (auto& s : f.strata) {
        s.chi_open.reset();
    }
    for (std::size_t i : detail::deepest_first(f)) {
        auto& s = f.strata[i];
        s.chi_open = *s.chi_closed - detail::open_sum_strict_supersets(f, s.components);
    }
    detail::sync_components(f);
    return f;
}

/// Fills chi_closed from chi_open; inverse of open_strata_from_closed.
inline FiberModel closed_strata_from_open(FiberModel f) {
    validate(f);
    for (const auto& s : f.strata) {
        if (!s.chi_open) {
            throw ValidationError(detail::where(f) + ": stratum " + label(s.components) + " lacks chi_open");
        }
    }
    for (auto& s : f.strata) {
        s.chi_closed = *s.chi_open + detail::open_sum_strict_supersets(f, s.components);
    }
    return f;
}

/// Populates both Euler characteristics on every stratum from whatever mix
/// was supplied, checks that supplied pairs agree, and merges the optional
/// per-component chi_open with the singleton strata.
inline FiberModel normalize(FiberModel f, std::optional<unsigned> relative_dimension = std::nullopt) {
    validate(f, relative_dimension);
    const std::string at = detail::where(f);
    for (const auto& c : f.components) {
        if (!c.chi_open) {
            continue;
        }
        auto it = std::find_if(f.strata.begin(), f.strata.end(),
                               [&](const Stratum& s) { return s.components == ComponentSet{c.id}; });
        if (it->chi_open && *it->chi_open != *c.chi_open) {
            throw ValidationError(at + ": component '" + c.id + "' chi_open " + std::to_string(*c.chi_open) +
                                  " disagrees with its stratum value " + std::to_string(*it->chi_open));
        }
        it->chi_open = c.chi_open;
    }
    for (std::size_t i : detail::deepest_first(f)) {
        auto& s = f.strata[i];
        const std::int64_t deeper = detail::open_sum_strict_supersets(f, s.components);
        if (s.chi_closed && s.chi_open) {
            if (*s.chi_closed != *s.chi_open + deeper) {
                throw ValidationError(at + ": stratum " + label(s.components) + " chi_closed " +
                                      std::to_string(*s.chi_closed) + " inconsistent with chi_open " +
                                      std::to_string(*s.chi_open) + " plus deeper strata " + std::to_string(deeper));
            }
        } else if (s.chi_closed) {
            s.chi_open = *s.chi_closed - deeper;
        } else {
            s.chi_closed = *s.chi_open + deeper;
        }
    }
    detail::sync_components(f);
    std::sort(f.components.begin(), f.components.end(),
              [](const Component& a, const Component& b) { return a.id < b.id; });
    std::sort(f.strata.begin(), f.strata.end(), [](const Stratum& a, const Stratum& b) {
        if (a.components.size() != b.components.size()) {
            return a.components.size() < b.components.size();
        }
        return a.components < b.components;
    });
    return f;
}

inline ArithmeticModel normalize(ArithmeticModel model) {
    std::set<std::int64_t> primes;
    for (auto& f : model.fibers) {
        if (!primes.insert(f.prime).second) {
            throw ValidationError("prime " + std::to_string(f.prime) + " appears in more than one fiber");
        }
        f = normalize(std::move(f), model.relative_dimension);
    }
    std::sort(model.fibers.begin(), model.fibers.end(),
              [](const FiberModel& a, const FiberModel& b) { return a.prime < b.prime; });
    return model;
}

inline const Stratum& singleton(const FiberModel& f, const std::string& id) {
    for (const auto& s : f.strata) {
        if (s.components.size() == 1 && *s.components.begin() == id) {
            return s;
        }
    }
    throw ValidationError(detail::where(f) + ": component '" + id + "' has no singleton stratum");
}

inline std::int64_t open_chi(const FiberModel& f, const Stratum& s) {
    if (!s.chi_open) {
        throw ValidationError(detail::where(f) + ": stratum " + label(s.components) + " lacks chi_open");
    }
    return *s.chi_open;
}

/// χ(X_p) = Σ_{J≠∅} χ_c(T*_J); the open strata partition the fiber.
inline std::int64_t fiber_euler(const FiberModel& f) {
    std::int64_t sum = 0;
    for (const auto& s : f.strata) {
        sum += open_chi(f, s);
    }
    return sum;
}

/// Σ_i m_i·χ_c(T*_i).
inline std::int64_t weighted_component_euler(const FiberModel& f) {
    std::int64_t sum = 0;
    for (const auto& c : f.components) {
        sum += c.multiplicity * open_chi(f, singleton(f, c.id));
    }
    return sum;
}

struct TameReport {
    std::int64_t prime = 0;
    bool tame = true;
    std::vector<std::string> offenders;
};

/// Tame iff every multiplicity is prime to p.
inline TameReport tame_check(const FiberModel& f) {
    TameReport r{f.prime, true, {}};
    for (const auto& c : f.components) {
        if (std::gcd(c.multiplicity, f.prime) != 1) {
            r.tame = false;
            r.offenders.push_back(c.id);
        }
    }
    std::sort(r.offenders.begin(), r.offenders.end());
    return r;
}

struct PrimeEulerCheck {
    std::int64_t prime = 0;
    std::int64_t implied = 0; // Σ m_i χ_c(T*_i)
    bool holds = true;
};

struct GenericEulerReport {
    std::int64_t generic_euler = 0;
    bool inferred = false;
    std::vector<PrimeEulerCheck> per_prime;

    bool all_hold() const {
        return std::all_of(per_prime.begin(), per_prime.end(), [](const auto& c) { return c.holds; });
    }
};

/// Checks χ(X_Q) = Σ m_i χ_c(T*_i) at every prime.  Without a supplied
/// χ(X_Q) the first fiber defines it and any disagreement is an error.
inline GenericEulerReport generic_euler_check(const ArithmeticModel& model) {
    GenericEulerReport report;
    for (const auto& f : model.fibers) {
        report.per_prime.push_back({f.prime, weighted_component_euler(f), true});
    }
    if (model.generic_euler) {
        report.generic_euler = *model.generic_euler;
    } else if (!report.per_prime.empty()) {
        report.generic_euler = report.per_prime.front().implied;
        report.inferred = true;
        for (const auto& c : report.per_prime) {
            if (c.implied != report.generic_euler) {
                throw ConsistencyError("fibers imply different generic Euler characteristics: p=" +
                                       std::to_string(report.per_prime.front().prime) + " gives " +
                                       std::to_string(report.generic_euler) + ", p=" + std::to_string(c.prime) +
                                       " gives " + std::to_string(c.implied));
            }
        }
    } else {
        report.inferred = true;
    }
    for (auto& c : report.per_prime) {
        c.holds = c.implied == report.generic_euler;
    }
    return report;
}

/// Degree of (−1)^{d+1} c_{d+1}^{X_S}(Ω¹) on X_p, evaluated two ways.
struct BlochDegree {
    std::int64_t prime = 0;
    // −Σ (m_i − 1) χ_c(T*_i) + Σ_{|J|≥2} χ_c(T*_J)
    std::int64_t multiplicity_form = 0;
    // −Σ m_i χ_c(T*_i) + χ(X_p)
    std::int64_t fiber_form = 0;
    std::int64_t weighted_components = 0;
    std::int64_t deeper_strata = 0;
    std::int64_t fiber_euler = 0;

    std::int64_t value() const noexcept { return fiber_form; }
};

inline BlochDegree bloch_degree(const FiberModel& f, unsigned relative_dimension) {
    validate(f, relative_dimension);
    const TameReport tame = tame_check(f);
    if (!tame.tame) {
        throw TamenessError("fiber p=" + std::to_string(f.prime) + " is wild: multiplicities divisible by p", f.prime,
                            tame.offenders);
    }
    BlochDegree b{f.prime};
    std::int64_t excess = 0;
    for (const auto& c : f.components) {
        excess += (c.multiplicity - 1) * open_chi(f, singleton(f, c.id));
    }
    for (const auto& s : f.strata) {
        if (s.components.size() >= 2) {
            b.deeper_strata += open_chi(f, s);
        }
    }
    b.weighted_components = weighted_component_euler(f);
    b.fiber_euler = fiber_euler(f);
    b.multiplicity_form = -excess + b.deeper_strata;
    b.fiber_form = -b.weighted_components + b.fiber_euler;
    if (b.multiplicity_form != b.fiber_form) {
        throw InvariantViolation("fiber p=" + std::to_string(f.prime) + ": Bloch degree forms disagree (" +
                                 std::to_string(b.multiplicity_form) + " vs " + std::to_string(b.fiber_form) +
                                 "); strata data is inconsistent");
    }
    return b;
}

struct PrimeReport {
    std::int64_t prime = 0;
    std::int64_t fiber_euler = 0;
    std::int64_t bloch_degree = 0;
    std::int64_t bloch_degree_multiplicity_form = 0;
    std::int64_t exponent = 0; // f_p = χ(X_Q) − χ(X_p)
    bool tame = true;
    bool euler_consistent = true;  // χ(X_Q) = Σ m_i χ_c(T*_i)
    bool relation_holds = true;    // f_p = −bloch degree
    Rational log_eps_coefficient;  // (d+1)/2 · f_p, coefficient of log p

    friend bool operator==(const PrimeReport&, const PrimeReport&) = default;
};

struct ConductorReport {
    unsigned relative_dimension = 1;
    std::int64_t generic_euler = 0;
    bool generic_euler_inferred = false;
    std::vector<PrimeReport> primes; // ascending prime order

    /// A(X) = Π p^{f_p} as an exact rational (exponents may be negative).
    Rational conductor_value() const {
        Rational value(1);
        for (const auto& p : primes) {
            Rational power(1);
            for (std::int64_t i = 0; i < (p.exponent < 0 ? -p.exponent : p.exponent); ++i) {
                power *= p.prime;
            }
            value *= p.exponent < 0 ? 1 / power : power;
        }
        return value;
    }

    bool has_negative_exponent() const {
        return std::any_of(primes.begin(), primes.end(), [](const auto& p) { return p.exponent < 0; });
    }

    bool all_checks_pass() const {
        return std::all_of(primes.begin(), primes.end(),
                           [](const auto& p) { return p.tame && p.euler_consistent && p.relation_holds; });
    }

    /// log|ε(X)| ≈ Σ e_p ln p.  Approximate rendering only.
    double log_eps_approx() const {
        double sum = 0.0;
        for (const auto& p : primes) {
            sum += p.log_eps_coefficient.convert_to<double>() * std::log(static_cast<double>(p.prime));
        }
        return sum;
    }

    friend bool operator==(const ConductorReport&, const ConductorReport&) = default;
};

/// Full pipeline: normalize and validate every fiber, reject wild fibers,
/// run the generic Euler check and both Bloch-degree forms, and assemble
/// f_p, A(X) and log|ε(X)| = (d+1)/2 · log A(X).
inline ConductorReport compute_conductor(const ArithmeticModel& input) {
    const ArithmeticModel model = normalize(input);
    for (const auto& f : model.fibers) {
        const TameReport t = tame_check(f);
        if (!t.tame) {
            std::string who;
            for (const auto& id : t.offenders) {
                who += (who.empty() ? "" : ", ") + id;
            }
            throw TamenessError("fiber p=" + std::to_string(f.prime) + " is not tame (multiplicity divisible by p): " +
                                    who,
                                f.prime, t.offenders);
        }
    }
    const GenericEulerReport euler = generic_euler_check(model);

    ConductorReport report;
    report.relative_dimension = model.relative_dimension;
    report.generic_euler = euler.generic_euler;
    report.generic_euler_inferred = euler.inferred;
    const Rational half_rank(static_cast<std::int64_t>(model.relative_dimension) + 1, 2);
    for (std::size_t i = 0; i < model.fibers.size(); ++i) {
        const auto& f = model.fibers[i];
        const BlochDegree b = bloch_degree(f, model.relative_dimension);
        PrimeReport p;
        p.prime = f.prime;
        p.fiber_euler = b.fiber_euler;
        p.bloch_degree = b.value();
        p.bloch_degree_multiplicity_form = b.multiplicity_form;
        p.exponent = euler.generic_euler - b.fiber_euler;
        p.tame = true;
        p.euler_consistent = euler.per_prime[i].holds;
        p.relation_holds = p.exponent == -p.bloch_degree;
        p.log_eps_coefficient = half_rank * p.exponent;
        report.primes.push_back(std::move(p));
    }
    return report;
}

} // namespace arr::conductor
