#pragma once

#include <gmpxx.h>

#include <vector>

#include "jbound/errors.hpp"
#include "jbound/mp/real.hpp"

namespace jbound::numtheory {

inline constexpr int kPartitionCap = 400;

struct PartitionCounts {
  int k = 0;
  mpz_class total;                  // |P_k|
  std::vector<mpz_class> by_length;  // by_length[l] = p_l(k), l = 0..k
};

/// Exact partition counts via p_l(m) = p_{l-1}(m-1) + p_l(m-l).
inline PartitionCounts partition_counts(int k) {
  if (k < 1) throw invalid_input("partition_counts: k must be >= 1");
  if (k > kPartitionCap) throw resource_error("partition_counts: k exceeds cap of 400");
  // table[m][l] = number of partitions of m into exactly l parts
  std::vector<std::vector<mpz_class>> table(k + 1, std::vector<mpz_class>(k + 1));
  table[0][0] = 1;
  for (int m = 1; m <= k; ++m) {
    for (int l = 1; l <= m; ++l) {
      table[m][l] = table[m - 1][l - 1];
      if (m - l >= l) table[m][l] += table[m - l][l];
    }
  }
  PartitionCounts out;
  out.k = k;
  out.by_length = table[k];
  for (const auto& c : out.by_length) out.total += c;
  return out;
}

/// |P_k| < e^{k/2}, decided against e^{k/2} rounded toward zero.
inline bool partition_count_below_exp_half(int k, mp::prec_t prec = mp::kDefaultPrecision) {
  const PartitionCounts pc = partition_counts(k);
  mp::Real half_k(prec);
  mpfr_set_si_2exp(half_k.get(), k, -1, MPFR_RNDN);  // exact
  mp::Real bound = mp::exp(half_k, MPFR_RNDD);
  return mpfr_cmp_z(bound.get(), pc.total.get_mpz_t()) > 0;
}

}  // namespace jbound::numtheory
