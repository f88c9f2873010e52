#pragma once

#include <compare>
#include <numeric>
#include <ostream>
#include <vector>

#include "jbound/numtheory/arith.hpp"

namespace jbound::numtheory {

/// The point (a1/n, a2/n) of (n^-1 Z/Z)^2, stored by its numerators in [0, n).
struct TorsionPoint {
  long n = 2;
  long a1 = 0;
  long a2 = 0;

  TorsionPoint() = default;
  TorsionPoint(long level, long x1, long x2) : n(level), a1(mod(x1, level)), a2(mod(x2, level)) {
    if (level < 1) throw invalid_input("TorsionPoint: level must be positive");
  }

  long order() const { return n / std::gcd(n, std::gcd(a1, a2)); }
  Rational first() const { return Rational(a1 / std::gcd(a1, n), n / std::gcd(a1, n)); }
  Rational second() const { return Rational(a2 / std::gcd(a2, n), n / std::gcd(a2, n)); }
  TorsionPoint negated() const { return {n, -a1, -a2}; }

  auto operator<=>(const TorsionPoint&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const TorsionPoint& a) {
  return os << '(' << a.a1 << '/' << a.n << ", " << a.a2 << '/' << a.n << ')';
}

/// ell_a = B2(a1)/2 with B2(T) = T^2 - T + 1/6.  Lies in [-1/24, 1/12].
inline Rational ell_a(const TorsionPoint& a) {
  Rational t = a.first();
  Rational b2 = t * t - t + Rational(1, 6);
  b2.canonicalize();
  return b2 / 2;
}

/// All points of exact order n, in lexicographic order.
inline std::vector<TorsionPoint> enumerate_AN(long n) {
  if (n < 2) throw invalid_input("enumerate_AN: n must be >= 2");
  std::vector<TorsionPoint> out;
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      if (std::gcd(n, std::gcd(x, y)) == 1) out.emplace_back(n, x, y);
    }
  }
  return out;
}

/// n^2 * prod_{p | n} (1 - p^-2).
inline long an_cardinality(long n) {
  long result = n * n;
  for (long p : prime_divisors(n)) result = result / (p * p) * (p * p - 1);
  return result;
}

}  // namespace jbound::numtheory
