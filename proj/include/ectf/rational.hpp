#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ectf {

/// Arbitrary-precision exact rational; all measure arithmetic uses it.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/**
 * Parses "3/4", "0.25" or "2" into an exact rational. Decimal strings are
 * parsed digit-exactly (0.3 becomes 3/10, not the nearest double).
 */
Rational parse_rational(const std::string& text);

/// "num/den" in lowest terms ("num" when the denominator is 1).
std::string rational_to_string(const Rational& r);

}  // namespace ectf
