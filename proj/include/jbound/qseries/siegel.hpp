#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jbound/errors.hpp"
#include "jbound/modgroup/cusps.hpp"
#include "jbound/numtheory/torsion.hpp"
#include "jbound/qseries/qexpansion.hpp"

namespace jbound::qseries {

using numtheory::TorsionPoint;

/// Largest number of q^{1/N} terms any single expansion may carry.
inline constexpr long kSeriesTermCap = 4096;

/// Number of q^{1/N}-steps covered by truncation order K (in units 1/(12N^2)).
inline long terms_for(long level, long K) {
  if (K < 0) throw invalid_input("truncation order must be nonnegative");
  const long k = K / (12 * level);
  if (k > kSeriesTermCap) {
    throw resource_error("truncation order " + std::to_string(K) + " needs " + std::to_string(k) +
                         " terms, above the cap of " + std::to_string(kSeriesTermCap));
  }
  return k;
}

namespace detail {

/// Dense series in t with coefficients in the group ring Z[x]/(x^L - 1):
/// s[k][j] is the coefficient of t^k x^j.
using DenseSeries = std::vector<std::vector<Integer>>;

inline DenseSeries dense_one(long L, long kmax) {
  DenseSeries s(kmax + 1, std::vector<Integer>(L));
  s[0][0] = 1;
  return s;
}

/// s *= (1 - x^r t^m), in place.
inline void mul_binomial(DenseSeries& s, long L, long r, long m) {
  const long kmax = static_cast<long>(s.size()) - 1;
  r = numtheory::mod(r, L);
  for (long k = kmax; k >= m; --k) {
    const auto& src = s[k - m];
    auto& dst = s[k];
    for (long j = 0; j < L; ++j) {
      if (src[j] != 0) dst[(j + r) % L] -= src[j];
    }
  }
}

/// Factors (1 - zeta^{k2} t^m), m = nN + k1 > 0, and (1 - zeta^{-k2} t^m), m = nN + N - k1,
/// of the normalized product for a = (k1/N, k2/N), up to t^kmax.
inline DenseSeries siegel_dense(const TorsionPoint& a, long kmax) {
  const long n = a.n;
  DenseSeries s = dense_one(n, kmax);
  for (long m = a.a1; m <= kmax; m += n) {
    if (m > 0) mul_binomial(s, n, a.a2, m);
  }
  for (long m = n - a.a1; m <= kmax; m += n) mul_binomial(s, n, -a.a2, m);
  return s;
}

inline QExpansion dense_to_expansion(const DenseSeries& s, long level, long K) {
  QExpansion out(level, K);
  const long step = 12 * level;
  for (std::size_t k = 0; k < s.size(); ++k) {
    out.set(static_cast<long>(k) * step, CycNumber::from_group_ring(level, s[k]));
  }
  return out;
}

}  // namespace detail

/// gamma_a in conductor 2N^2: zeta^{k2(k1 - N)} if a1 != 0, else zeta^{-N k2}(1 - zeta^{2N k2}).
inline CycNumber siegel_gamma(const TorsionPoint& a) {
  const long n = a.n;
  const long L = 2 * n * n;
  if (a.a1 != 0) return CycNumber::root_of_unity(a.a2 * (a.a1 - n), L);
  const CycNumber one = CycNumber::from_integer(1, L);
  return CycNumber::root_of_unity(-n * a.a2, L) * (one - CycNumber::root_of_unity(2 * n * a.a2, L));
}

struct SiegelCoefficients {
  TorsionPoint point;
  Rational ell;         // q-order of g_a
  CycNumber gamma;      // conductor 2N^2
  QExpansion series;    // 1 + sum_k phi_a(k) q^{k/N}, coefficients in conductor N
  long terms = 0;       // k runs over 0..terms

  CycNumber phi(long k) const { return series.coefficient(k * 12 * point.n); }
};

/// -q^{-ell_a} gamma_a^{-1} g_a(q) = 1 + sum phi_a(k) q^{k/N}, exact through q^{K/(12N^2)}.
inline SiegelCoefficients siegel_expansion(const TorsionPoint& a, long K) {
  if (a.order() != a.n || a.n < 2) throw invalid_input("siegel_expansion: point must have exact order N >= 2");
  if (K < 1) throw invalid_input("siegel_expansion: truncation order must be >= 1");
  const long kmax = terms_for(a.n, K);
  SiegelCoefficients out{a, numtheory::ell_a(a), siegel_gamma(a),
                         detail::dense_to_expansion(detail::siegel_dense(a, kmax), a.n, K), kmax};
  if (!(out.series.coefficient(0) == CycNumber::from_integer(1))) {
    throw consistency_error("siegel_expansion: constant term is not 1");
  }
  return out;
}

struct UnitExpansion {
  QExpansion series;   // u_O / (gamma q^{order}), constant term 1
  Rational q_order;    // 12 N sum ell_a
  CycNumber gamma;     // prod gamma_a^{12N}, conductor 2N^2
};

inline UnitExpansion unit_orbit_expansion(const modgroup::Orbit& orbit, long K) {
  if (orbit.points.empty()) throw invalid_input("unit_orbit_expansion: empty orbit");
  const long n = orbit.points.front().n;
  QExpansion prod = QExpansion::one(n, K);
  CycNumber gamma = CycNumber::from_integer(1, 2 * n * n);
  Rational ell_sum = 0;
  for (const auto& a : orbit.points) {
    const auto sc = siegel_expansion(a, K);
    prod = prod * sc.series;
    gamma = gamma * sc.gamma;
    ell_sum += sc.ell;
  }
  Rational order = ell_sum * 12 * n;
  order.canonicalize();
  UnitExpansion out{prod.pow(12 * n), order, gamma.pow(12 * n)};
  if (!(out.series.coefficient(0) == CycNumber::from_integer(1))) {
    throw consistency_error("unit_orbit_expansion: constant term is not 1");
  }
  return out;
}

struct FullProductResult {
  long level = 0;
  long trunc = 0;
  bool passed = false;
  std::optional<long> offending_exponent;  // first nonzero non-constant exponent, units 1/(12N^2)
  Rational q_order;                        // sum of ell_a over A_N
  CycNumber constant;                      // (prod (-gamma_a))^{12N}
  Integer expected_abs;                    // Phi_N(1)^{12N}
  int sign = 0;                            // sign of the rational constant, 0 if not rational
};

/// prod_{a in A_N} g_a to order K must be a constant whose 12N-th power is +-Phi_N(1)^{12N}.
inline FullProductResult verify_full_product(long n, long K) {
  if (n < 2) throw invalid_input("verify_full_product: n must be >= 2");
  FullProductResult out;
  out.level = n;
  out.trunc = K;
  QExpansion prod = QExpansion::one(n, K);
  CycNumber c = CycNumber::from_integer(1, 2 * n * n);
  const CycNumber minus_one = CycNumber::from_integer(-1);
  Rational ell_sum = 0;
  for (const auto& a : numtheory::enumerate_AN(n)) {
    const auto sc = siegel_expansion(a, K);
    prod = prod * sc.series;
    c = c * minus_one * sc.gamma;
    ell_sum += sc.ell;
  }
  ell_sum.canonicalize();
  out.q_order = ell_sum;
  // prod g_a = c q^{sum ell} (normalized product); scan for non-constant terms.
  const QExpansion full = prod.scaled(c);
  for (const auto& [e, coeff] : full.terms()) {
    if (e != 0) {
      out.offending_exponent = e;
      break;
    }
  }
  out.constant = c.pow(12 * n);
  mpz_pow_ui(out.expected_abs.get_mpz_t(), Integer(numtheory::cyclotomic_at_one(n)).get_mpz_t(), 12 * n);
  if (out.constant.is_rational()) {
    const Rational v = out.constant.coefficient(0);
    out.sign = v > 0 ? 1 : (v < 0 ? -1 : 0);
    out.passed = !out.offending_exponent && ell_sum == 0 && abs(v) == Rational(out.expected_abs);
  }
  return out;
}

}  // namespace jbound::qseries
