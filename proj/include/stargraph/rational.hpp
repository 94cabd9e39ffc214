#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace stargraph {

using Int = boost::multiprecision::cpp_int;

/// Exact rational scalar used throughout the library. Values are always
/// stored normalized: lowest terms, positive denominator.
using Rat = boost::multiprecision::cpp_rational;

/// Canonical text form: "p/q" in lowest terms with q > 0, plain "p" when q = 1.
inline std::string rat_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

namespace detail {
inline bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

// The big-integer constructor rejects an explicit plus sign, so shed it here.
inline Int parse_integer(const std::string& s) { return Int(s[0] == '+' ? s.substr(1) : s); }
}  // namespace detail

/// Parses "p" or "p/q". Normalizes sign and gcd. Throws std::invalid_argument
/// on malformed input or zero denominator.
inline Rat parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    if (!detail::is_integer_token(num))
        throw std::invalid_argument("malformed rational: '" + text + "'");
    if (slash == std::string::npos) return Rat(detail::parse_integer(num));
    const std::string den = text.substr(slash + 1);
    if (!detail::is_integer_token(den))
        throw std::invalid_argument("malformed rational: '" + text + "'");
    const Int d = detail::parse_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    return Rat(detail::parse_integer(num)) / Rat(d);
}

/// One-way bridge to floating point; the exact side never reads doubles back.
inline double rat_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace stargraph
