#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace carnot {

// Hard cap on ambient dimension; keeps cells fixed-size and trivially copyable.
inline constexpr int kMaxN = 8;

using Vec = std::array<int64_t, kMaxN>;

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Floor division / modulo for possibly negative numerators, positive divisor.
inline int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline int64_t floor_mod(int64_t a, int64_t b) { return a - floor_div(a, b) * b; }

// Exact integer square root (largest s with s*s <= x).
inline int64_t isqrt(int64_t x) {
  if (x < 0) throw std::invalid_argument("isqrt of negative value");
  if (x < 2) return x;
  int64_t s = static_cast<int64_t>(std::sqrt(static_cast<double>(x)));
  while (s > 0 && s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return s;
}

inline int64_t isqrt_ceil(int64_t x) {
  int64_t s = isqrt(x);
  return s * s == x ? s : s + 1;
}

inline int64_t pow2(int e) {
  if (e < 0 || e >= 63) throw std::overflow_error("pow2 exponent out of range");
  return int64_t{1} << e;
}

}  // namespace carnot
