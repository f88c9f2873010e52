#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "jbound/errors.hpp"
#include "jbound/modgroup/subgroup.hpp"
#include "jbound/numtheory/torsion.hpp"

namespace jbound::modgroup {

using numtheory::Rational;

/// An orbit of the right G1-action on the exact-order-N points.
struct Orbit {
  std::vector<TorsionPoint> points;  // sorted
  TorsionPoint canonical_rep;        // lexicographically least point

  Rational ell_sum() const {
    Rational s = 0;
    for (const auto& a : points) s += numtheory::ell_a(a);
    return s;
  }
};

/// Orbits of A_N / G1, ordered by canonical representative.
inline std::vector<Orbit> orbits_on_AN(const SubgroupData& g) {
  const long n = g.n();
  std::vector<bool> seen(static_cast<std::size_t>(n * n), false);
  std::vector<Orbit> out;
  for (const auto& a : numtheory::enumerate_AN(n)) {
    if (seen[a.a1 * n + a.a2]) continue;
    Orbit orbit;
    for (const auto& sigma : g.g1_elements()) {
      TorsionPoint b = a * sigma;
      if (!seen[b.a1 * n + b.a2]) {
        seen[b.a1 * n + b.a2] = true;
        orbit.points.push_back(b);
      }
    }
    std::sort(orbit.points.begin(), orbit.points.end());
    orbit.canonical_rep = orbit.points.front();
    out.push_back(std::move(orbit));
  }
  return out;
}

/// Orbit count of M_N / G1 (exact-order-N vectors of (Z/NZ)^2) by Burnside's
/// lemma: the average number of fixed vectors.  Shares no code with the
/// explicit orbit walk above.
inline long count_orbits_burnside(const SubgroupData& g) {
  const long n = g.n();
  std::vector<std::pair<long, long>> vectors;
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      if (std::gcd(n, std::gcd(x, y)) == 1) vectors.emplace_back(x, y);
    }
  }
  long fixed_total = 0;
  for (const auto& s : g.g1_elements()) {
    for (const auto& [x, y] : vectors) {
      if (mod(x * s.a + y * s.c, n) == x && mod(x * s.b + y * s.d, n) == y) ++fixed_total;
    }
  }
  const long order = static_cast<long>(g.g1_elements().size());
  if (fixed_total % order != 0) throw consistency_error("Burnside count is not an integer");
  return fixed_total / order;
}

/// A cusp of X_{G1}: a double coset G1 sigma <+-T> with its width.
struct CuspData {
  GL2Element rep;       // det 1
  long width = 1;       // least e >= 1 with sigma T^e sigma^-1 in G1
  bool is_infinity = false;
};

inline long cusp_width(const SubgroupData& g, const GL2Element& sigma) {
  const long n = g.n();
  const GL2Element inv = sigma.inverse();
  GL2Element te = GL2Element::identity(n);
  const GL2Element t = GL2Element::translation(n);
  for (long e = 1; e <= n; ++e) {
    te = te * t;
    if (g.g1_contains(sigma * te * inv)) return e;
  }
  throw consistency_error("cusp width exceeds the level");
}

/// Double cosets G1 \ SL2(Z/nZ) / <+-T>.  The identity coset (the cusp at
/// infinity) comes first with the identity as representative; the rest follow
/// in order of their lexicographically least element, which is their representative.
inline std::vector<CuspData> cusps(const SubgroupData& g) {
  const long n = g.n();
  std::vector<bool> seen(static_cast<std::size_t>(n * n * n * n), false);
  const GL2Element t = GL2Element::translation(n);
  std::vector<CuspData> out;

  auto mark = [&](const GL2Element& sigma) {
    for (const auto& h : g.g1_elements()) {
      GL2Element x = h * sigma;
      for (long e = 0; e < n; ++e) {
        seen[x.index()] = true;
        x = x * t;
      }
    }
  };

  const GL2Element id = GL2Element::identity(n);
  mark(id);
  out.push_back({id, cusp_width(g, id), true});

  for (long a = 0; a < n; ++a) {
    for (long b = 0; b < n; ++b) {
      for (long c = 0; c < n; ++c) {
        for (long d = 0; d < n; ++d) {
          GL2Element sigma(n, a, b, c, d);
          if (sigma.det() != 1 || seen[sigma.index()]) continue;
          mark(sigma);
          out.push_back({sigma, cusp_width(g, sigma), false});
        }
      }
    }
  }
  return out;
}

/// Number of cusps, computed three independent ways (orbit walk on A_N,
/// Burnside on M_N, double cosets in SL2); any disagreement throws.
inline long nu_infty(const SubgroupData& g) {
  const long by_orbits = static_cast<long>(orbits_on_AN(g).size());
  const long by_burnside = count_orbits_burnside(g);
  const long by_cusps = static_cast<long>(cusps(g).size());
  if (by_orbits != by_burnside || by_orbits != by_cusps) {
    throw consistency_error("cusp count mismatch: A_N orbits " + std::to_string(by_orbits) +
                            ", M_N orbits " + std::to_string(by_burnside) + ", double cosets " +
                            std::to_string(by_cusps));
  }
  return by_orbits;
}

}  // namespace jbound::modgroup
