#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace zstab {

/// Exact rational scalar used by the dual-arithmetic mode.
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

template <typename T>
inline T abs_val(const T& x) {
    if constexpr (std::is_floating_point_v<T>) {
        return std::abs(x);
    } else {
        return x < 0 ? T(-x) : x;
    }
}

/// Zero tolerance for identity checks: exact for rationals, 1e-13 for doubles.
template <typename T>
inline T identity_tolerance() {
    if constexpr (std::is_floating_point_v<T>) {
        return T(1e-13);
    } else {
        return T(0);
    }
}

}  // namespace detail

/// Parses "p/q", integer, or decimal strings into an exact rational.
Rational parse_rational(const std::string& text);

/// Renders a rational as "p" or "p/q".
std::string format_rational(const Rational& x);

inline double to_double(const Rational& x) { return static_cast<double>(x); }

}  // namespace zstab
