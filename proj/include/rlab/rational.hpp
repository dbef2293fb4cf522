#pragma once

// Scalar support for the exact path: arbitrary-precision rationals plus the
// handful of helpers the templated lattice code needs from any scalar.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace rlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

/// base^e for e >= 0 by squaring.
template <class Scalar>
Scalar ipow(Scalar base, int e) {
  Scalar result(1);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

/// Parses "7", "-3/4" or "3/2". Throws std::invalid_argument on malformed
/// text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when q = 1.
std::string format_rational(const Rational& v);

}  // namespace rlab
