#pragma once

// Archimedean cross-checks of the Siegel product at the principal embedding
// zeta_L -> e^{2 pi i / L}, with q^{x} read as exp(x Log q).

#include <cmath>
#include <string>

#include "jbound/errors.hpp"
#include "jbound/mp/complex.hpp"
#include "jbound/qseries/siegel.hpp"

namespace jbound::qseries {

struct NumericEvalResult {
  mp::Complex series_value;    // 1 + sum_{k <= K} phi_a(k) q^{k/N}
  mp::Complex product_value;   // -q^{-ell} gamma^{-1} g_a(q) from the infinite product
  mp::Real difference;         // |series - product|
  mp::Real tail_bound;         // sum_{k > K} e^k |q|^{k/N} plus rounding slack
  mp::Real deviation;          // |product - 1|
  mp::Real deviation_bound;    // 4 |q|^{1/N}
  mp::Real log1_margin;        // |log|g_a(q)| - ell_a log|q||
  mp::Real log1_bound;         // log N
  long branch = 0;             // (sum of principal factor logs - Log(product)) / (2 pi i)
  long terms = 0;

  bool series_ok() const { return difference <= tail_bound; }
  bool corollary_ok() const { return deviation <= deviation_bound; }
  bool log1_ok() const { return log1_margin <= log1_bound; }
};

/// Parses a decimal complex sample; |q| must not exceed 10^{-N}.
inline mp::Complex parse_q(const std::string& re, const std::string& im, mp::prec_t prec) {
  return {mp::Real::from_string(re, prec), mp::Real::from_string(im, prec)};
}

inline NumericEvalResult numeric_eval(const TorsionPoint& a, const mp::Complex& q, mp::prec_t prec,
                                      long terms) {
  using mp::Complex;
  using mp::Real;
  const long n = a.n;
  if (a.order() != n || n < 2) throw invalid_input("numeric_eval: point must have exact order N >= 2");
  if (prec < 128) throw invalid_input("numeric_eval: precision must be at least 128 bits");
  if (terms < 1) throw invalid_input("numeric_eval: need at least one term");

  const mp::prec_t wp = prec + 64;
  Complex qq(wp);
  mpfr_set(qq.re.get(), q.re.get(), MPFR_RNDN);
  mpfr_set(qq.im.get(), q.im.get(), MPFR_RNDN);

  const Real qabs = mp::abs(qq);
  if (mpfr_zero_p(qabs.get())) throw invalid_input("numeric_eval: q must be nonzero");
  // |q| <= 10^{-N}
  Real ten_pow = mp::pow_ui(Real(10, wp), static_cast<unsigned long>(n), MPFR_RNDN);
  if (mp::mul(qabs, ten_pow, MPFR_RNDN) > Real(1, wp)) {
    throw precondition_error("numeric_eval: |q| exceeds 10^-N");
  }

  const Complex log_q = mp::log(qq);
  const Complex t = mp::exp(Complex{mp::div_si(log_q.re, n, MPFR_RNDN), mp::div_si(log_q.im, n, MPFR_RNDN)});
  const Real t_abs = mp::abs(t);

  NumericEvalResult out;
  out.terms = terms;

  // Series route: exact coefficients, embedded.
  const auto sc = siegel_expansion(a, terms * 12 * n);
  Complex series = Complex::one(wp);
  Complex tk = Complex::one(wp);
  for (long k = 1; k <= terms; ++k) {
    tk = tk * t;
    const CycNumber c = sc.phi(k);
    if (c.is_zero()) continue;
    series = series + c.embed(1, wp) * tk;
  }

  // Product route: g_a(q) straight from the infinite product, no exact data reused.
  const Real pi = Real::pi(wp);
  const Real a1 = Real::from_q(a.first(), wp);
  const Real a2 = Real::from_q(a.second(), wp);
  const Complex e_a2 = Complex::polar(Real(1, wp), mp::mul_si(mp::mul(pi, a2, MPFR_RNDN), 2, MPFR_RNDN));
  const Complex e_minus_a2 = Complex::polar(Real(1, wp), mp::mul_si(mp::mul(pi, a2, MPFR_RNDN), -2, MPFR_RNDN));
  auto q_pow = [&](const Real& x) {
    return mp::exp(Complex{mp::mul(log_q.re, x, MPFR_RNDN), mp::mul(log_q.im, x, MPFR_RNDN)});
  };
  const Real cutoff = mp::exp2_si(-(static_cast<long>(wp) + 8), wp);
  Complex prod = Complex::one(wp);
  Complex log_sum(wp);
  const Complex one = Complex::one(wp);
  for (long j = 0;; ++j) {
    const Real jr(j, wp);
    const Complex f1 = one - q_pow(jr + a1) * e_a2;
    const Complex f2 = one - q_pow(jr + Real(1, wp) - a1) * e_minus_a2;
    prod = prod * f1 * f2;
    log_sum = log_sum + mp::log(f1) + mp::log(f2);
    // |q|^{j+1-a1} small enough that later factors no longer move the product
    if (mp::exp(mp::mul(log_q.re, jr + Real(1, wp) - a1 + Real(1, wp), MPFR_RNDN), MPFR_RNDN) < cutoff) break;
  }
  const Real ell = Real::from_q(numtheory::ell_a(a), wp);
  const Complex q_ell = q_pow(ell);
  const Complex prefactor =
      Complex::polar(Real(1, wp), mp::mul(mp::mul(pi, a2, MPFR_RNDN), a1 - Real(1, wp), MPFR_RNDN));
  // g_a = -q^ell e^{pi i a2 (a1 - 1)} prod(...)
  auto negate = [](const Complex& z) { return Complex{-z.re, -z.im}; };
  const Complex g = negate(q_ell * prefactor * prod);
  Complex gamma = prefactor;
  Complex normalized_prod = prod;
  if (a.a1 == 0) {
    const Complex zero_factor = one - e_a2;  // the j = 0 factor of the first product
    gamma = prefactor * zero_factor;
    normalized_prod = prod / zero_factor;
    log_sum = log_sum - mp::log(zero_factor);
  }
  const Complex normalized = negate(g / (q_ell * gamma));

  out.series_value = series;
  out.product_value = normalized;
  out.difference = mp::abs(series - normalized);

  // Tail: x^{K+1} / (1 - x), x = e |q|^{1/N}, rounded up, plus evaluation slack.
  const Real x = mp::mul(mp::exp(Real(1, wp), MPFR_RNDU), t_abs, MPFR_RNDU);
  if (x >= Real(1, wp)) throw precondition_error("numeric_eval: tail bound does not converge");
  const Real tail = mp::div(mp::pow_ui(x, static_cast<unsigned long>(terms + 1), MPFR_RNDU),
                            mp::sub(Real(1, wp), x, MPFR_RNDD), MPFR_RNDU);
  out.tail_bound = mp::add(tail, mp::exp2_si(-(static_cast<long>(prec) - 16), wp), MPFR_RNDU);

  out.deviation = mp::abs(normalized - one);
  out.deviation_bound = mp::mul_si(t_abs, 4, MPFR_RNDU);

  out.log1_margin = mp::abs(mp::sub(mp::log(mp::abs(g), MPFR_RNDN), mp::mul(ell, mp::log(qabs, MPFR_RNDN), MPFR_RNDN),
                                    MPFR_RNDN),
                            MPFR_RNDN);
  out.log1_bound = mp::log(Real(n, wp), MPFR_RNDN);

  const Complex principal = mp::log(normalized_prod);
  const Real two_pi = mp::mul_si(pi, 2, MPFR_RNDN);
  const Real winding = mp::div(mp::sub(log_sum.im, principal.im, MPFR_RNDN), two_pi, MPFR_RNDN);
  out.branch = std::lround(mpfr_get_d(winding.get(), MPFR_RNDN));
  return out;
}

}  // namespace jbound::qseries
