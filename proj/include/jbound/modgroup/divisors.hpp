#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jbound/errors.hpp"
#include "jbound/modgroup/cusps.hpp"

namespace jbound::modgroup {

using numtheory::Integer;

/// Order of u_O = prod_{a in O} g_a^{12N} at the cusp sigma(infinity):
/// 12 N e_c sum_{a in O sigma} ell_a.
inline long ord_at_cusp(const SubgroupData& g, const Orbit& orbit, const CuspData& cusp) {
  Rational s = 0;
  for (const auto& a : orbit.points) s += numtheory::ell_a(a * cusp.rep);
  Rational ord = s * 12 * g.n() * cusp.width;
  ord.canonicalize();
  if (ord.get_den() != 1) {
    throw consistency_error("ord_at_cusp: non-integral order " + ord.get_str());
  }
  const long n4 = g.n() * g.n() * g.n() * g.n();
  const long v = ord.get_num().get_si();
  if (v >= n4 || v <= -n4) throw consistency_error("ord_at_cusp: |ord| >= N^4");
  return v;
}

/// (ord_c u_O)_c over all cusps, in the order of cusps(g).
using DivisorVector = std::vector<long>;

inline DivisorVector divisor_vector(const SubgroupData& g, const Orbit& orbit,
                                    const std::vector<CuspData>& cs) {
  DivisorVector v;
  long total = 0;
  for (const auto& c : cs) {
    v.push_back(ord_at_cusp(g, orbit, c));
    total += v.back();
  }
  if (total != 0) throw consistency_error("divisor of a modular unit does not have degree zero");
  return v;
}

/// One row per orbit (orbits_on_AN order), one column per cusp (cusps order).
inline std::vector<DivisorVector> divisor_matrix(const SubgroupData& g) {
  const auto orbits = orbits_on_AN(g);
  const auto cs = cusps(g);
  std::vector<DivisorVector> rows;
  rows.reserve(orbits.size());
  for (const auto& o : orbits) rows.push_back(divisor_vector(g, o, cs));
  return rows;
}

/// Rank over Q of an integer matrix (fraction-free elimination).
inline long matrix_rank(const std::vector<DivisorVector>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<std::vector<Integer>> m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  long rank = 0;
  for (std::size_t col = 0; col < cols && rank < static_cast<long>(m.size()); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][col] == 0) continue;
      const Integer f = m[i][col];
      const Integer p = m[rank][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] = m[i][j] * p - m[rank][j] * f;
      Integer content = 0;
      for (std::size_t j = col; j < cols; ++j) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), m[i][j].get_mpz_t());
      if (content > 1) {
        for (std::size_t j = col; j < cols; ++j) m[i][j] /= content;
      }
    }
    ++rank;
  }
  return rank;
}

/// Rank of the divisor matrix; must equal nu_infty - 1.
inline long divisor_rank(const SubgroupData& g) {
  const long rank = matrix_rank(divisor_matrix(g));
  const long nu = nu_infty(g);
  if (rank != nu - 1) {
    throw consistency_error("divisor rank " + std::to_string(rank) + " differs from nu_infty - 1 = " +
                            std::to_string(nu - 1));
  }
  return rank;
}

/// W = U^{e_U} V^{e_V} with U, V orbit units (V absent when e_V = 0).
struct UnitRecipe {
  std::size_t u_index = 0;
  std::optional<std::size_t> v_index;
  long e_u = 1;
  long e_v = 0;
  DivisorVector divisor;  // e_U div(U) + e_V div(V)
};

/// Selection on a precomputed divisor matrix; `w` is the column of c_w.
/// U has the least order at c_w.  If that order is negative, V is the orbit of
/// largest positive order at c_w whose divisor is independent of U's, and
/// W = U^{ord V} V^{-ord U}.  Otherwise W = U.
inline UnitRecipe select_units_from_matrix(const std::vector<DivisorVector>& rows, std::size_t w) {
  if (rows.empty()) throw consistency_error("select_units: no orbits");
  std::size_t u = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][w] < rows[u][w]) u = i;
  }
  UnitRecipe out;
  out.u_index = u;
  const long ord_u = rows[u][w];
  if (ord_u == 0) {
    out.divisor = rows[u];
  } else {
    std::optional<std::size_t> v;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][w] <= 0 || matrix_rank({rows[u], rows[i]}) != 2) continue;
      if (!v || rows[i][w] > rows[*v][w]) v = i;
    }
    if (!v) throw consistency_error("select_units: no orbit independent of U with positive order");
    out.v_index = v;
    out.e_u = rows[*v][w];
    out.e_v = -ord_u;
    for (std::size_t j = 0; j < rows[u].size(); ++j) {
      out.divisor.push_back(out.e_u * rows[u][j] + out.e_v * rows[*v][j]);
    }
  }
  if (out.divisor[w] != 0) throw consistency_error("select_units: ord_{c_w}(W) != 0");
  bool nonzero = false;
  for (long x : out.divisor) nonzero = nonzero || x != 0;
  if (!nonzero) throw consistency_error("select_units: W has zero divisor");
  return out;
}

inline UnitRecipe select_units(const SubgroupData& g, const CuspData& w_cusp) {
  const long nu = nu_infty(g);
  if (nu < 3) {
    throw precondition_error("select_units: requires at least 3 cusps, got " + std::to_string(nu));
  }
  const auto cs = cusps(g);
  std::size_t w = cs.size();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].rep == w_cusp.rep) w = i;
  }
  if (w == cs.size()) throw invalid_input("select_units: cusp is not a representative of g");
  return select_units_from_matrix(divisor_matrix(g), w);
}

}  // namespace jbound::modgroup
