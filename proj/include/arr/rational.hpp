#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "arr/errors.hpp"

namespace arr {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational, always in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "p" or "p/q" (optional leading sign).
inline Rational parse_rational(std::string_view text) {
    const auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
            s.remove_prefix(1);
        }
        if (s.empty()) {
            return false;
        }
        for (char c : s) {
            if (c < '0' || c > '9') {
                return false;
            }
        }
        return true;
    };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+') {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    const Integer n(std::string(num.front() == '+' ? num.substr(1) : num));
    const Integer d{std::string(den)};
    if (d == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(n, d);
}

inline Rational factorial(unsigned k) {
    Rational f(1);
    for (unsigned i = 2; i <= k; ++i) {
        f *= i;
    }
    return f;
}

} // namespace arr
