#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <string>

namespace mellin {

/// Exact coefficient field for every symbolic computation.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

inline Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Integer r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return Rational(r);
}

inline Rational rational_pow(const Rational& base, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// "3", "-3/4".
inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace mellin
