#pragma once

#include <compare>
#include <numeric>
#include <ostream>

#include "jbound/numtheory/arith.hpp"
#include "jbound/numtheory/torsion.hpp"

namespace jbound::modgroup {

using numtheory::mod;
using numtheory::TorsionPoint;

/// [[a, b], [c, d]] with entries in Z/nZ.  Ordering is lexicographic on (a, b, c, d).
struct GL2Element {
  long n = 2;
  long a = 1, b = 0, c = 0, d = 1;

  GL2Element() = default;
  GL2Element(long level, long a_, long b_, long c_, long d_)
      : n(level), a(mod(a_, level)), b(mod(b_, level)), c(mod(c_, level)), d(mod(d_, level)) {}

  static GL2Element identity(long n) { return {n, 1, 0, 0, 1}; }
  static GL2Element minus_identity(long n) { return {n, -1, 0, 0, -1}; }
  /// The upper unipotent [[1, 1], [0, 1]].
  static GL2Element translation(long n) { return {n, 1, 1, 0, 1}; }

  long det() const { return mod(a * d - b * c, n); }
  bool invertible() const { return std::gcd(det(), n) == 1; }

  GL2Element inverse() const {
    long di = numtheory::inverse_mod(det(), n);
    return {n, d * di, -b * di, -c * di, a * di};
  }

  /// Dense index in [0, n^4), consistent with the lexicographic order.
  long index() const { return ((a * n + b) * n + c) * n + d; }
  static GL2Element from_index(long n, long idx) {
    long d = idx % n;
    idx /= n;
    long c = idx % n;
    idx /= n;
    long b = idx % n;
    return {n, idx / n, b, c, d};
  }

  auto operator<=>(const GL2Element&) const = default;
};

inline GL2Element operator*(const GL2Element& x, const GL2Element& y) {
  const long n = x.n;
  return {n, x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

/// Right action on row vectors: (a1, a2) . sigma.
inline TorsionPoint operator*(const TorsionPoint& p, const GL2Element& g) {
  return {p.n, p.a1 * g.a + p.a2 * g.c, p.a1 * g.b + p.a2 * g.d};
}

inline std::ostream& operator<<(std::ostream& os, const GL2Element& g) {
  return os << "[[" << g.a << ',' << g.b << "],[" << g.c << ',' << g.d << "]]";
}

/// |GL2(Z/nZ)| = n^4 prod_{p|n} (1 - 1/p)(1 - 1/p^2).
inline long gl2_order(long n) {
  long r = n * n * n * n;
  for (long p : numtheory::prime_divisors(n)) r = r / (p * p * p) * ((p - 1) * (p * p - 1));
  return r;
}

/// |SL2(Z/nZ)| = n^3 prod_{p|n} (1 - 1/p^2).
inline long sl2_order(long n) {
  long r = n * n * n;
  for (long p : numtheory::prime_divisors(n)) r = r / (p * p) * (p * p - 1);
  return r;
}

}  // namespace jbound::modgroup
