#pragma once

#include <numeric>

#include "jbound/errors.hpp"
#include "jbound/mp/interval.hpp"
#include "jbound/qseries/cyclotomic.hpp"

namespace jbound::qseries {

/// Absolute logarithmic height of an algebraic integer x in Q(zeta_L):
/// (1/phi(L)) sum_t log+ |sigma_t(x)|, enclosed with outward rounding.
inline mp::Interval algebraic_height(const CycNumber& x, mp::prec_t prec = mp::kDefaultPrecision) {
  if (x.is_zero()) throw invalid_input("algebraic_height: zero has no height");
  if (!x.is_integral()) throw invalid_input("algebraic_height: only algebraic integers are supported");
  const long L = x.conductor();
  const long phi = numtheory::euler_phi(L);
  const mp::prec_t wp = prec + x.max_bits() + 64;

  // Each embedding is a sum of at most phi terms |c_j| e^{i theta}; the
  // round-to-nearest evaluation error is below eps = (sum |c_j|) 2^{-(wp - 8)}.
  Integer l1 = 0;
  for (const auto& c : x.numerators()) l1 += abs(c);
  const mp::Real eps = mp::mul(mp::Real::from_z(l1, wp, MPFR_RNDU), mp::exp2_si(-(static_cast<long>(wp) - 8), wp),
                               MPFR_RNDU);

  mp::Real lo_sum(0, wp), hi_sum(0, wp);
  const mp::Real one(1, wp);
  for (long t = 1; t <= L; ++t) {
    if (std::gcd(t, L) != 1) continue;
    const mp::Real a = mp::abs(x.embed(t, wp));
    const mp::Real a_lo = mp::sub(a, eps, MPFR_RNDD);
    const mp::Real a_hi = mp::add(a, eps, MPFR_RNDU);
    if (a_hi > one) hi_sum = mp::add(hi_sum, mp::log(a_hi, MPFR_RNDU), MPFR_RNDU);
    if (a_lo > one) lo_sum = mp::add(lo_sum, mp::log(a_lo, MPFR_RNDD), MPFR_RNDD);
  }
  return {mp::div_si(lo_sum, phi, MPFR_RNDD), mp::div_si(hi_sum, phi, MPFR_RNDU)};
}

}  // namespace jbound::qseries
