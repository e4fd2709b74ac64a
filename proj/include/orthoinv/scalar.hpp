#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

#include "orthoinv/errors.hpp"

namespace orthoinv {

using BigInt = boost::multiprecision::cpp_int;

/// Exact scalar: arbitrary-precision rational, always in lowest terms
/// with positive denominator (maintained by the backend).
using Rational = boost::multiprecision::cpp_rational;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static const char* mode_name() { return "exact"; }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static const char* mode_name() { return "float"; }
};

inline bool is_zero(const Rational& q) { return q.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline double abs_double(const Rational& q) { return std::abs(q.convert_to<double>()); }
inline double abs_double(double x) { return std::abs(x); }

/// Shortest decimal that round-trips back to the same double.
inline std::string double_to_string(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

/// "p" or "p/q", canonical.
inline std::string scalar_to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += "/";
        s += denominator(q).str();
    }
    return s;
}

inline std::string scalar_to_string(double x) { return double_to_string(x); }

namespace detail {

inline bool is_integer_token(std::string_view tok) {
    if (tok.empty()) return false;
    size_t i = (tok[0] == '+' || tok[0] == '-') ? 1 : 0;
    if (i == tok.size()) return false;
    for (; i < tok.size(); ++i)
        if (tok[i] < '0' || tok[i] > '9') return false;
    return true;
}

inline BigInt parse_bigint(std::string_view tok) {
    if (!is_integer_token(tok)) throw ParseError("invalid integer literal '" + std::string(tok) + "'");
    return BigInt(std::string(tok));
}

} // namespace detail

/// Accepts "p" and "p/q" with q > 0 after normalization.
inline Rational rational_from_string(std::string_view tok) {
    auto slash = tok.find('/');
    if (slash == std::string_view::npos)
        return Rational(detail::parse_bigint(tok));
    BigInt num = detail::parse_bigint(tok.substr(0, slash));
    BigInt den = detail::parse_bigint(tok.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(tok) + "'");
    return Rational(num, den);
}

inline double double_from_string(std::string_view tok) {
    double value = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw ParseError("invalid numeric literal '" + std::string(tok) + "'");
    return value;
}

inline bool looks_like_float_token(std::string_view tok) {
    return tok.find('.') != std::string_view::npos ||
           tok.find('e') != std::string_view::npos ||
           tok.find('E') != std::string_view::npos ||
           tok == "inf" || tok == "-inf" || tok == "nan";
}

} // namespace orthoinv
