#pragma once

// Exact rational scalars for the symbolic layer. Everything upstream of the
// numeric evaluators works in these; nothing here ever rounds.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace zigzag {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// 2^e for e of either sign.
inline Rational pow2_rational(int e) {
  if (e >= 0) return Rational(Int(1) << e);
  return Rational(1, Int(1) << (-e));
}

inline std::string to_fraction_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

inline long double to_long_double(const Rational& q) {
  return q.convert_to<long double>();
}

}  // namespace zigzag
