#pragma once

#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

#include "jbound/modgroup/divisors.hpp"
#include "jbound/qseries/siegel.hpp"

namespace jbound::qseries {

/// log of a normalized unit at c_infinity: sum_k lambda_k q^{k/N}.
struct LogExpansion {
  long cusp_index = 0;             // position in cusps(g); 0 is c_infinity
  long branch = 0;                 // f(q_c); zero in the formal sense
  long level = 0;
  long exponent_weight = 1;        // |e_U| + |e_V|, scales the per-coefficient bound
  std::vector<CycNumber> lambda;   // lambda[k - 1] for k = 1..K

  std::optional<long> first_nonzero() const {
    for (std::size_t k = 0; k < lambda.size(); ++k) {
      if (!lambda[k].is_zero()) return static_cast<long>(k) + 1;
    }
    return std::nullopt;
  }

  /// exponent_weight * 24 N^2 (k + N).
  long coefficient_bound(long k) const { return exponent_weight * 24 * level * level * (k + level); }
};

/// l with 1 + sum f_k t^k = exp(sum l_k t^k), via m_k = k l_k = k f_k - sum_{j<k} m_j f_{k-j}.
inline std::vector<CycNumber> formal_log(const std::vector<CycNumber>& f) {
  const long kmax = static_cast<long>(f.size()) - 1;
  if (kmax < 0 || !(f[0] == CycNumber::from_integer(1))) {
    throw invalid_input("formal_log: series must have constant term 1");
  }
  std::vector<CycNumber> m(kmax + 1);
  std::vector<CycNumber> out;
  for (long k = 1; k <= kmax; ++k) {
    CycNumber acc = Rational(k) * f[k];
    for (long j = 1; j < k; ++j) {
      if (m[j].is_zero() || f[k - j].is_zero()) continue;
      acc = acc - m[j] * f[k - j];
    }
    m[k] = acc;
    out.push_back(Rational(1, k) * acc);
  }
  return out;
}

/// Log expansion of prod_i u_{O_i}^{e_i} normalized at c_infinity, with `terms` coefficients.
inline LogExpansion log_expansion_of(const std::vector<std::pair<const modgroup::Orbit*, long>>& factors,
                                     long terms) {
  if (factors.empty()) throw invalid_input("log_expansion: no factors");
  if (terms < 1 || terms > kSeriesTermCap) throw resource_error("log_expansion: term count out of range");
  const long n = factors.front().first->points.front().n;
  const long K = terms * 12 * n;
  LogExpansion out;
  out.level = n;
  out.exponent_weight = 0;
  out.lambda.assign(terms, CycNumber(n));
  for (const auto& [orbit, e] : factors) {
    if (e == 0) continue;
    out.exponent_weight += std::labs(e);
    QExpansion prod = QExpansion::one(n, K);
    for (const auto& a : orbit->points) prod = prod * siegel_expansion(a, K).series;
    std::vector<CycNumber> f;
    for (long k = 0; k <= terms; ++k) f.push_back(prod.coefficient(k * 12 * n));
    const auto l = formal_log(f);
    const Rational scale(12 * n * e);
    for (long k = 0; k < terms; ++k) out.lambda[k] = out.lambda[k] + scale * l[k];
  }
  if (out.exponent_weight == 0) out.exponent_weight = 1;
  return out;
}

/// Log expansion at c_infinity of the unit W selected by select_units.
inline LogExpansion log_expansion(const modgroup::SubgroupData& g, const modgroup::UnitRecipe& recipe,
                                  long terms) {
  const auto orbits = modgroup::orbits_on_AN(g);
  std::vector<std::pair<const modgroup::Orbit*, long>> factors{{&orbits.at(recipe.u_index), recipe.e_u}};
  if (recipe.v_index) factors.emplace_back(&orbits.at(*recipe.v_index), recipe.e_v);
  return log_expansion_of(factors, terms);
}

}  // namespace jbound::qseries
