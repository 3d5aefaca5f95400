#pragma once

// JSON model files and machine-readable conductor reports.
//
// Model file:
//   {
//     "relative_dimension": 1,
//     "generic_euler": 0,                      (optional)
//     "fibers": [
//       { "prime": 5,
//         "components": [ {"id": "T1", "multiplicity": 1, "chi_open": 0} ],
//         "strata": [ {"components": ["T1"], "chi_closed": 2} ] }
//     ]
//   }
//
// Unknown keys and non-integer numbers are rejected.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "arr/conductor.hpp"
#include "arr/errors.hpp"
#include "arr/rational.hpp"

namespace arr::io {

using json = nlohmann::json;

namespace detail {

inline void require_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
        throw ParseError(path + ": expected an object");
    }
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed) {
            known = known || item.key() == key;
        }
        if (!known) {
            throw ParseError(path + ": unknown field '" + item.key() + "'");
        }
    }
}

inline const json& require_field(const json& j, const std::string& path, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(path + ": missing field '" + key + "'");
    }
    return *it;
}

inline std::int64_t as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
        throw ParseError(path + ": expected an integer, got " + j.dump());
    }
    return j.get<std::int64_t>();
}

inline std::optional<std::int64_t> optional_integer(const json& j, const std::string& path, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return std::nullopt;
    }
    return as_integer(*it, path + "/" + key);
}

inline std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) {
        throw ParseError(path + ": expected a string, got " + j.dump());
    }
    return j.get<std::string>();
}

inline const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) {
        throw ParseError(path + ": expected an array");
    }
    return j;
}

inline Rational as_rational(const json& j, const std::string& path) {
    try {
        return parse_rational(as_string(j, path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace detail

inline conductor::ArithmeticModel model_from_json(const json& root) {
    using namespace detail;
    require_object(root, "", {"relative_dimension", "generic_euler", "fibers"});
    conductor::ArithmeticModel model;
    const std::int64_t d = as_integer(require_field(root, "", "relative_dimension"), "/relative_dimension");
    if (d < 0) {
        throw ParseError("/relative_dimension: must be non-negative");
    }
    model.relative_dimension = static_cast<unsigned>(d);
    model.generic_euler = optional_integer(root, "", "generic_euler");
    const json& fibers = as_array(require_field(root, "", "fibers"), "/fibers");
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        const std::string fp = "/fibers/" + std::to_string(i);
        const json& fj = fibers[i];
        require_object(fj, fp, {"prime", "components", "strata"});
        conductor::FiberModel fiber;
        fiber.prime = as_integer(require_field(fj, fp, "prime"), fp + "/prime");
        const json& comps = as_array(require_field(fj, fp, "components"), fp + "/components");
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const std::string cp = fp + "/components/" + std::to_string(c);
            require_object(comps[c], cp, {"id", "multiplicity", "chi_open"});
            conductor::Component comp;
            comp.id = as_string(require_field(comps[c], cp, "id"), cp + "/id");
            comp.multiplicity = as_integer(require_field(comps[c], cp, "multiplicity"), cp + "/multiplicity");
            comp.chi_open = optional_integer(comps[c], cp, "chi_open");
            fiber.components.push_back(std::move(comp));
        }
        const json& strata = as_array(require_field(fj, fp, "strata"), fp + "/strata");
        for (std::size_t s = 0; s < strata.size(); ++s) {
            const std::string sp = fp + "/strata/" + std::to_string(s);
            require_object(strata[s], sp, {"components", "chi_closed", "chi_open"});
            conductor::Stratum stratum;
            const json& ids = as_array(require_field(strata[s], sp, "components"), sp + "/components");
            for (std::size_t k = 0; k < ids.size(); ++k) {
                const std::string id = as_string(ids[k], sp + "/components/" + std::to_string(k));
                if (!stratum.components.insert(id).second) {
                    throw ParseError(sp + "/components: repeated id '" + id + "'");
                }
            }
            stratum.chi_closed = optional_integer(strata[s], sp, "chi_closed");
            stratum.chi_open = optional_integer(strata[s], sp, "chi_open");
            fiber.strata.push_back(std::move(stratum));
        }
        model.fibers.push_back(std::move(fiber));
    }
    return model;
}

inline conductor::ArithmeticModel parse_model(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed model file (byte ") + std::to_string(e.byte) + "): " + e.what());
    }
    return model_from_json(root);
}

inline conductor::ArithmeticModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open model file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_model(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline json model_to_json(const conductor::ArithmeticModel& model) {
    json root;
    root["relative_dimension"] = model.relative_dimension;
    if (model.generic_euler) {
        root["generic_euler"] = *model.generic_euler;
    }
    root["fibers"] = json::array();
    for (const auto& f : model.fibers) {
        json fj;
        fj["prime"] = f.prime;
        fj["components"] = json::array();
        for (const auto& c : f.components) {
            json cj{{"id", c.id}, {"multiplicity", c.multiplicity}};
            if (c.chi_open) {
                cj["chi_open"] = *c.chi_open;
            }
            fj["components"].push_back(std::move(cj));
        }
        fj["strata"] = json::array();
        for (const auto& s : f.strata) {
            json sj{{"components", json(std::vector<std::string>(s.components.begin(), s.components.end()))}};
            if (s.chi_closed) {
                sj["chi_closed"] = *s.chi_closed;
            }
            if (s.chi_open) {
                sj["chi_open"] = *s.chi_open;
            }
            fj["strata"].push_back(std::move(sj));
        }
        root["fibers"].push_back(std::move(fj));
    }
    return root;
}

/// Machine-readable mirror of a ConductorReport.  Exact values are strings
/// ("p/q"); the decimal log|ε| is labelled approximate.
inline json report_to_json(const conductor::ConductorReport& r) {
    json root;
    root["status"] = r.all_checks_pass() ? "pass" : "fail";
    root["relative_dimension"] = r.relative_dimension;
    root["generic_euler"] = r.generic_euler;
    root["generic_euler_inferred"] = r.generic_euler_inferred;
    root["primes"] = json::array();
    json factors = json::array();
    json log_terms = json::array();
    for (const auto& p : r.primes) {
        root["primes"].push_back({{"prime", p.prime},
                                  {"fiber_euler", p.fiber_euler},
                                  {"bloch_degree", p.bloch_degree},
                                  {"bloch_degree_multiplicity_form", p.bloch_degree_multiplicity_form},
                                  {"exponent", p.exponent},
                                  {"tame", p.tame},
                                  {"euler_consistent", p.euler_consistent},
                                  {"relation_holds", p.relation_holds},
                                  {"log_eps_coefficient", to_string(p.log_eps_coefficient)}});
        factors.push_back({{"prime", p.prime}, {"exponent", p.exponent}});
        log_terms.push_back({{"prime", p.prime}, {"coefficient", to_string(p.log_eps_coefficient)}});
    }
    root["conductor"] = {{"factors", factors},
                         {"value", to_string(r.conductor_value())},
                         {"has_negative_exponent", r.has_negative_exponent()}};
    root["log_abs_epsilon"] = {{"terms", log_terms},
                               {"approximate_decimal", r.log_eps_approx()},
                               {"note", "sum of coefficient*log(prime); decimal value is approximate"}};
    return root;
}

inline conductor::ConductorReport report_from_json(const json& root) {
    using namespace detail;
    conductor::ConductorReport r;
    const std::int64_t d = as_integer(require_field(root, "", "relative_dimension"), "/relative_dimension");
    r.relative_dimension = static_cast<unsigned>(d);
    r.generic_euler = as_integer(require_field(root, "", "generic_euler"), "/generic_euler");
    r.generic_euler_inferred = require_field(root, "", "generic_euler_inferred").get<bool>();
    const json& primes = as_array(require_field(root, "", "primes"), "/primes");
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::string pp = "/primes/" + std::to_string(i);
        const json& pj = primes[i];
        conductor::PrimeReport p;
        p.prime = as_integer(require_field(pj, pp, "prime"), pp + "/prime");
        p.fiber_euler = as_integer(require_field(pj, pp, "fiber_euler"), pp + "/fiber_euler");
        p.bloch_degree = as_integer(require_field(pj, pp, "bloch_degree"), pp + "/bloch_degree");
        p.bloch_degree_multiplicity_form =
            as_integer(require_field(pj, pp, "bloch_degree_multiplicity_form"), pp + "/bloch_degree_multiplicity_form");
        p.exponent = as_integer(require_field(pj, pp, "exponent"), pp + "/exponent");
        p.tame = require_field(pj, pp, "tame").get<bool>();
        p.euler_consistent = require_field(pj, pp, "euler_consistent").get<bool>();
        p.relation_holds = require_field(pj, pp, "relation_holds").get<bool>();
        p.log_eps_coefficient = as_rational(require_field(pj, pp, "log_eps_coefficient"), pp + "/log_eps_coefficient");
        r.primes.push_back(std::move(p));
    }
    return r;
}

} // namespace arr::io
