#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "incr/error.hpp"

namespace incr {

/// Arbitrary-precision rational scalar for the exact numeric mode.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class NumericMode { Float64, ExactRational };

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Doubles are binary fractions, so this conversion is always exact.
inline Rat rat_from_double(double x) { return Rat(x); }

/// Parses "p/q", "-3", "2.5" into an exact rational. Rejects everything else.
Rat parse_rat(std::string_view text);

/// "p/q", or just "p" when the denominator is 1. Round-trips through parse_rat.
std::string rat_to_string(const Rat& r);

/// Locale-independent shortest-faithful formatting ("%.17g").
std::string fmt_double(double x);

template <class S>
inline S abs_of(const S& x) {
    return x < S(0) ? S(-x) : x;
}

/// Per-scalar comparison slack: exact mode asserts with zero tolerance,
/// float mode gets a fixed relative allowance for accumulated rounding.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double slack() { return 1e-12; }
    static double from_double(double d) { return d; }
    static std::string to_string(double v) { return fmt_double(v); }
};

template <>
struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static Rat slack() { return Rat(0); }
    static Rat from_double(double d) { return rat_from_double(d); }
    static std::string to_string(const Rat& v) { return rat_to_string(v); }
};

} // namespace incr
