#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "frenet_svd/errors.hpp"

namespace frenet_svd {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational. The backend keeps numerator/denominator reduced with a
/// positive denominator after every operation.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// "p/q", or "p" when q == 1, with a leading '-' for negatives.
inline std::string to_string(const Rational& r) {
    const BigInt q = denominator_of(r);
    if (q == 1) return numerator_of(r).str();
    return numerator_of(r).str() + "/" + q.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace detail {

inline BigInt parse_digits(std::string_view s, std::string_view whole) {
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty integer in '" + std::string(whole) + "'");
    BigInt v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw Error(ErrorCode::ParseError, "bad digit in '" + std::string(whole) + "'");
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace detail

/// Accepts "p", "p/q" and plain decimals "1.25"; decimals are read exactly.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt p = detail::parse_digits(s.substr(0, slash), text);
        BigInt q = detail::parse_digits(s.substr(slash + 1), text);
        if (q == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
        value = Rational(p, q);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        BigInt p = whole.empty() ? BigInt(0) : detail::parse_digits(whole, text);
        BigInt scale = 1;
        if (!frac.empty()) {
            p = p * boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size())) +
                detail::parse_digits(frac, text);
            scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
        } else if (whole.empty()) {
            throw Error(ErrorCode::ParseError, "bad number '" + std::string(text) + "'");
        }
        value = Rational(p, scale);
    } else {
        value = Rational(detail::parse_digits(s, text));
    }
    return negative ? Rational(-value) : value;
}

}  // namespace frenet_svd
