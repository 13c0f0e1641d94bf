#pragma once

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace matroid {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient via the multiplicative recurrence.
inline BigInt binom_exact(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r is C(n-k+i, i) after this step
  }
  return r;
}

/// log2 of the binomial coefficient, accurate to well under 1e-9 for n up to
/// a few thousand.
inline double log2_binom(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) /
         std::log(2.0);
}

/// Binary entropy H(x) in bits, with H(0) = H(1) = 0 by continuity.
inline double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("entropy needs x in [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// ceil(a / b) for positive big integers.
inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  return (a + b - 1) / b;
}

inline double log2_big(const BigInt& v) {
  if (v <= 0) throw std::invalid_argument("log of a non-positive value");
  const unsigned msb = boost::multiprecision::msb(v);
  if (msb <= 52) return std::log2(v.convert_to<double>());
  BigInt shifted = v >> (msb - 52);
  return std::log2(shifted.convert_to<double>()) + static_cast<double>(msb - 52);
}

inline double log2_rational(const BigRational& v) {
  if (v <= 0) throw std::invalid_argument("log of a non-positive value");
  return log2_big(boost::multiprecision::numerator(v)) -
         log2_big(boost::multiprecision::denominator(v));
}

}  // namespace matroid
