#pragma once

// Closed-form height-bound estimates, evaluated on natural logarithms with
// outward rounding.  Every function returns an interval; the upper end is
// the certified value.

#include <string>
#include <vector>

#include "jbound/bounds/types.hpp"
#include "jbound/numtheory/arith.hpp"

namespace jbound::bounds {

using mp::prec_t;
using mp::Real;

namespace detail {

inline Interval num(long v, prec_t prec) { return Interval::point(v, prec); }
inline Interval ln(long v, prec_t prec) { return mp::log(num(v, prec)); }

/// e (1 + 2^-20), the floor applied under log log.
inline Interval loglog_floor(prec_t prec) {
  const Interval e = mp::exp(num(1, prec));
  const Interval one_plus{mp::add(Real(1, prec), mp::exp2_si(-20, prec), MPFR_RNDD),
                          mp::add(Real(1, prec), mp::exp2_si(-20, prec), MPFR_RNDU)};
  return e * one_plus;
}

/// log(max(x, floor)); records a warning when the floor is active.
inline Interval log_floored(const Interval& x, const std::string& what, std::vector<std::string>* warnings) {
  const Interval f = loglog_floor(x.prec());
  if (x.lo() <= f.hi()) {
    if (warnings) warnings->push_back("log log floor applied to " + what);
    return mp::log(mp::max(x, f));
  }
  return mp::log(x);
}

/// log log x with the floor.
inline Interval loglog(const Interval& x, const std::string& what, std::vector<std::string>* warnings) {
  return mp::log(log_floored(x, what, warnings));
}

/// log(x) for an interval already in log space: log(L) where L = log x, floored at log(floor).
inline Interval log_of_log(const Interval& log_x, const std::string& what, std::vector<std::string>* warnings) {
  const Interval lf = mp::log(loglog_floor(log_x.prec()));
  if (log_x.lo() <= lf.hi()) {
    if (warnings) warnings->push_back("log log floor applied to " + what);
    return mp::log(mp::max(log_x, lf));
  }
  return mp::log(log_x);
}

inline std::string str(long v) { return std::to_string(v); }

}  // namespace detail

/// zeta = 1201 (log d' / log log d')^3 with d' = max(d, 3).
inline Interval zeta_quantity(long d, prec_t prec = mp::kDefaultPrecision) {
  if (d < 1) throw invalid_input("zeta_quantity: d must be >= 1");
  const long dp = std::max(d, 3L);
  const Interval l = detail::ln(dp, prec);
  return detail::num(1201, prec) * mp::pow(l / mp::log(l), 3);
}

struct RegulatorBounds {
  Interval lower;      // 0.1
  Interval log_upper;  // log of c d^{-d} sqrt|D| (log|D|)^{d-1} prod log N(v)
};

/// Log-space form: `log_disc` encloses (or bounds above) log |D|, `log_norm_product`
/// encloses log prod log N(v).  log |D| is floored at 1 inside the power, which
/// covers |D| < 3.
inline RegulatorBounds s_regulator_bounds(long d, const Interval& log_disc, const Interval& log_norm_product,
                                          const Interval& c_siegel) {
  if (d < 1) throw invalid_input("s_regulator_bounds: d must be >= 1");
  const prec_t prec = log_disc.prec();
  const Interval log_log_disc = mp::log(mp::max(log_disc, detail::num(1, prec)));
  Interval up = mp::log(c_siegel) - detail::num(d, prec) * detail::ln(d, prec);
  up = up + log_disc / detail::num(2, prec);
  up = up + detail::num(d - 1, prec) * log_log_disc;
  up = up + log_norm_product;
  return {Interval::from_decimal("0.1", prec), up};
}

inline Interval log_norm_product(const std::vector<long>& norms, prec_t prec) {
  Interval acc = detail::num(0, prec);
  for (long q : norms) {
    if (q < 2) throw invalid_input("finite place norm must be >= 2");
    acc = acc + mp::log(detail::ln(q, prec));
  }
  return acc;
}

inline RegulatorBounds s_regulator_bounds(long d, const Integer& disc_abs, const std::vector<long>& norms,
                                          const Interval& c_siegel) {
  if (disc_abs < 1) throw invalid_input("s_regulator_bounds: |D| must be >= 1");
  const prec_t prec = c_siegel.prec();
  return s_regulator_bounds(d, mp::log(Interval::from_z(disc_abs, prec)), log_norm_product(norms, prec), c_siegel);
}

struct SUnitBounds {
  Interval log_product;      // log(d^{-r} r^{2r} R(S))
  Interval log_per_unit_lo;  // log((zeta d)^{-1})
  Interval log_per_unit_hi;  // log(d^{-1} r^{2r} zeta^{r-1} R(S))
  Interval log_bstar_factor; // log(2 d r^{2r} zeta)
};

inline SUnitBounds sunit_height_bounds(long d, long r, const Interval& log_rs_upper, const Interval& zeta) {
  if (r < 1) throw precondition_error("sunit_height_bounds: r must be >= 1");
  if (d < 1) throw invalid_input("sunit_height_bounds: d must be >= 1");
  const prec_t prec = zeta.prec();
  const Interval ld = detail::ln(d, prec);
  const Interval lz = mp::log(zeta);
  const Interval r2r = detail::num(2 * r, prec) * detail::ln(r, prec);
  SUnitBounds out{
      r2r + log_rs_upper - detail::num(r, prec) * ld,
      -(lz + ld),
      r2r + detail::num(r - 1, prec) * lz + log_rs_upper - ld,
      detail::ln(2, prec) + ld + r2r + lz,
  };
  return out;
}

enum class PlaceKind { archimedean, finite };

/// log Upsilon: C^r d^2 log(2d) (archimedean) or (C d)^{2r+6} p_v^d (finite).
inline Interval baker_upsilon(long d, long r, PlaceKind kind, long p_v, const Interval& C) {
  if (r < 1 || d < 1) throw precondition_error("baker_upsilon: needs r >= 1 and d >= 1");
  const prec_t prec = C.prec();
  const Interval ld = detail::ln(d, prec);
  if (kind == PlaceKind::archimedean) {
    return detail::num(r, prec) * mp::log(C) + detail::num(2, prec) * ld + mp::log(detail::ln(2 * d, prec));
  }
  if (p_v < 2 || !numtheory::is_prime_power(p_v) || numtheory::factorize(p_v).front().exponent != 1) {
    throw invalid_input("baker_upsilon: p_v must be prime");
  }
  return detail::num(2 * r + 6, prec) * (mp::log(C) + ld) + detail::num(d, prec) * detail::ln(p_v, prec);
}

/// 2 s N^8 log|q_w^{-1}| + 94 s N^8 log N (plain value, not a logarithm).
inline Interval hW_bound(long s, long N, const Interval& log_qinv) {
  if (s < 2 || N < 2) throw precondition_error("hW_bound: needs s >= 2 and N >= 2");
  if (log_qinv.lo().sign() < 0) throw invalid_input("hW_bound: log|q^-1| must be >= 0");
  const prec_t prec = log_qinv.prec();
  const Interval n8 = mp::pow(detail::num(N, prec), 8);
  const Interval sn8 = detail::num(s, prec) * n8;
  return detail::num(2, prec) * sn8 * log_qinv + detail::num(94, prec) * sn8 * detail::ln(N, prec);
}

/// rho_v: 12 N^3 log N at infinite places, 0 at finite v with |N|_v = 1,
/// 12 N^3 log l / (l - 1) at v | l | N.
inline Interval rho_v(long N, PlaceKind kind, long ell, prec_t prec = mp::kDefaultPrecision) {
  const Interval base = detail::num(12 * N * N * N, prec);
  if (kind == PlaceKind::archimedean) return base * detail::ln(N, prec);
  if (ell == 1) return detail::num(0, prec);
  if (N % ell != 0) throw invalid_input("rho_v: l must divide N");
  return base * detail::ln(ell, prec) / detail::num(ell - 1, prec);
}

/// log Delta for (K0, S0) at level N.
inline Interval log_delta(const FieldData& f, long N, prec_t prec, std::vector<std::string>* warnings = nullptr) {
  f.validate();
  if (N < 2) throw invalid_input("log_delta: N must be >= 2");
  const long phi = numtheory::euler_phi(N);
  const Interval inner = detail::num(f.d0 * N, prec) * detail::ln(N, prec) +
                         detail::num(phi, prec) * mp::log(Interval::from_z(f.disc_abs, prec));
  Interval v = -(detail::num(f.d0, prec) * detail::ln(f.d0, prec));
  v = v + inner / detail::num(2, prec);
  v = v + detail::num(f.d0 * phi, prec) * detail::log_of_log(inner, "log(N^{d0 N} |D0|^phi(N))", warnings);
  for (long q : f.finite_place_norms) {
    v = v + detail::num(phi, prec) * detail::loglog(detail::num(q, prec), "norm " + detail::str(q), warnings);
  }
  return v;
}

inline void require_not_prime_power(long N, const char* who) {
  if (N < 2) throw invalid_input(std::string(who) + ": N must be >= 2");
  if (numtheory::is_prime_power(N)) {
    throw precondition_error(std::string(who) + ": N = " + std::to_string(N) +
                             " is a prime power; use the raised level (theorem 3)");
  }
}

inline void add_constants_echo(BoundReport& r, const Constants& c) {
  r.inputs.emplace_back("constants.preset", c.preset);
  r.inputs.emplace_back("constants.C_baker", c.C_baker);
  r.inputs.emplace_back("constants.c_siegel", c.c_siegel);
  r.inputs.emplace_back("constants.c_hp", c.c_hp);
  if (c.structural()) r.notes.emplace_back(kStructuralBanner);
}

/// phi(N) log C + (3/2 phi(N) + 10) log N + (5/2 phi(N) - 2) log log N.
inline BoundReport theorem1_bound(long N, const Constants& c, prec_t prec = mp::kDefaultPrecision) {
  require_not_prime_power(N, "theorem1_bound");
  const long phi = numtheory::euler_phi(N);
  BoundReport r;
  r.theorem = "main1";
  r.level = N;
  const Interval lN = detail::ln(N, prec);
  const Interval llN = detail::loglog(detail::num(N, prec), "N", &r.warnings);
  const Interval t_c = detail::num(phi, prec) * mp::log(c.C(prec));
  const Interval t_n = (detail::num(3 * phi + 20, prec) / detail::num(2, prec)) * lN;
  const Interval t_ll = (detail::num(5 * phi - 4, prec) / detail::num(2, prec)) * llN;
  r.log_bound = t_c + t_n + t_ll;
  r.breakdown = {{"phi_log_C", t_c}, {"log_N_term", t_n}, {"loglog_N_term", t_ll}};
  r.inputs = {{"N", detail::str(N)}, {"phi_N", detail::str(phi)}};
  add_constants_echo(r, c);
  return r;
}

/// 2 s0 N log(C d0 s0 N^2) + 3 s0 N log log(d0 N) + d0 N log p + log Delta.
inline BoundReport theorem2_bound(const FieldData& f, long N, const Constants& c,
                                  prec_t prec = mp::kDefaultPrecision) {
  require_not_prime_power(N, "theorem2_bound");
  f.validate();
  BoundReport r;
  r.theorem = "main2";
  r.level = N;
  const Interval ld = log_delta(f, N, prec, &r.warnings);
  const Interval t1 = detail::num(2 * f.s0 * N, prec) *
                      (mp::log(c.C(prec)) + detail::ln(f.d0, prec) + detail::ln(f.s0, prec) +
                       detail::num(2, prec) * detail::ln(N, prec));
  const Interval t2 = detail::num(3 * f.s0 * N, prec) * detail::loglog(detail::num(f.d0 * N, prec), "d0 N", &r.warnings);
  const Interval t3 = detail::num(f.d0 * N, prec) * detail::ln(f.p, prec);
  r.log_bound = t1 + t2 + t3 + ld;
  r.breakdown = {{"log_delta", ld}, {"log_C_term", t1}, {"loglog_term", t2}, {"log_p_term", t3}};
  r.inputs = {{"N", detail::str(N)},
              {"field.d0", detail::str(f.d0)},
              {"field.disc_abs", f.disc_abs.get_str()},
              {"field.s0", detail::str(f.s0)},
              {"field.p", detail::str(f.p)}};
  add_constants_echo(r, c);
  return r;
}

/// Both theorem shapes at the raised level M.
inline std::vector<BoundReport> theorem3_bound(const FieldData& f, long N, const Constants& c,
                                               prec_t prec = mp::kDefaultPrecision) {
  const long M = numtheory::raise_level(N);
  std::vector<BoundReport> out{theorem1_bound(M, c, prec), theorem2_bound(f, M, c, prec)};
  const std::string note = "level raised from N = " + detail::str(N) + " to M = " + detail::str(M);
  for (auto& r : out) {
    r.theorem = r.theorem == "main1" ? "main3_thm1_shape" : "main3_thm2_shape";
    r.notes.insert(r.notes.begin(), note);
    r.inputs.insert(r.inputs.begin(), {"N_original", detail::str(N)});
  }
  return out;
}

/// d <= d0 phi(N), s <= s0 phi(N) (lifted to 2), log|D| and log prod log N(v) estimates.
inline ExtensionData extension_estimates(const FieldData& f, long N, prec_t prec = mp::kDefaultPrecision) {
  f.validate();
  if (N < 2) throw invalid_input("extension_estimates: N must be >= 2");
  const long phi = numtheory::euler_phi(N);
  ExtensionData e;
  e.d = f.d0 * phi;
  e.s = f.s0 * phi;
  if (e.s < 2) {
    e.s = 2;
    e.s_lifted = true;
  }
  e.r = e.s - 1;
  e.d_prime = std::max(e.d, 3L);
  e.zeta = zeta_quantity(e.d, prec);
  e.log_disc_upper = detail::num(f.d0 * N, prec) * detail::ln(N, prec) +
                     detail::num(phi, prec) * mp::log(Interval::from_z(f.disc_abs, prec));
  e.log_norm_product = detail::num(static_cast<long>(f.finite_place_norms.size()) * phi, prec) * detail::ln(4, prec) +
                       detail::num(phi, prec) * log_norm_product(f.finite_place_norms, prec);
  return e;
}

/// The explicit chain alpha, beta, C1, C2 and
/// h(P) <= 2 s C1 log C1 / alpha + s (2 C2 - beta) / alpha + s log 2.
inline BoundReport pipeline_bound(long d, long s, long N, const Interval& log_rs_upper, long p, const Constants& c,
                                  prec_t prec = mp::kDefaultPrecision) {
  if (d < 1 || s < 1 || N < 2 || p < 1) throw invalid_input("pipeline_bound: needs d, s, p >= 1 and N >= 2");
  BoundReport rep;
  rep.theorem = "pipeline";
  rep.level = N;
  if (s == 1) {
    s = 2;
    rep.notes.emplace_back("s = 1 lifted to s = 2 by adding a valuation");
  }
  const long r = s - 1;
  auto num = [&](long v) { return detail::num(v, prec); };
  auto ln = [&](long v) { return detail::ln(v, prec); };

  const Interval zeta = zeta_quantity(d, prec);
  const Interval lz = mp::log(zeta);
  const Interval lN = ln(N);
  const Interval ld = ln(d);
  const Interval ls = ln(s);
  const Interval l_r2r = num(2 * r) * ln(r);
  const Interval ll2 = mp::log(ln(2));

  const Interval log_theta0 = ln(24) + ld + num(7) * lN + ll2;
  const Interval log_theta_prod = l_r2r + num(r) * lz + log_rs_upper;
  const Interval log_alpha = ln(4) + ld + ls + l_r2r + lz + num(8) * lN;
  const Interval log_beta =
      mp::log_add(log_theta_prod, ln(188) + ld + ls + l_r2r + lz + num(8) * lN + mp::log(lN));

  const Interval C = c.C(prec);
  Interval log_ups = baker_upsilon(d, r, PlaceKind::archimedean, 0, C);
  if (p > 1) log_ups = mp::max(log_ups, baker_upsilon(d, r, PlaceKind::finite, p, C));

  const Interval log_C1 = log_alpha + lN + log_ups + log_theta0 + log_theta_prod;
  const Interval log_48aN8 = ln(48) + log_alpha + num(8) * lN + ll2;
  const Interval log_C2 = mp::log_add(log_48aN8, log_beta);
  if (!log_C1.positive()) throw precondition_error("pipeline_bound: C1 <= 1, log C1 is not positive");

  // 2 C2 - beta = 96 alpha N^8 log 2 + beta, kept subtraction-free.
  const Interval log_2C2_minus_beta = mp::log_add(ln(96) + log_alpha + num(8) * lN + ll2, log_beta);
  const Interval term1 = ln(2 * s) + log_C1 + mp::log(log_C1) - log_alpha;
  const Interval term2 = ls + log_2C2_minus_beta - log_alpha;
  const Interval term3 = ls + ll2;
  rep.log_bound = mp::log_sum({term1, term2, term3});

  // B >= max(3, Theta_1..Theta_r) is met by beta >= r^{2r} zeta^r R(S) >= Theta_1...Theta_r.
  if (!(log_theta_prod.hi() <= log_beta.lo())) rep.warnings.emplace_back("B-choice ordering beta >= Theta product not certified");

  // The absorbed form c_hp d s r^{2r} zeta^r N^8 Upsilon R(S) log(d^2 s r^{4r} zeta^{r+1} N^16 Upsilon R(S)).
  const Interval log_rs = log_rs_upper;
  const Interval inner = num(2) * ld + ls + num(2) * l_r2r + num(r + 1) * lz + num(16) * lN + log_ups + log_rs;
  Interval cross = mp::log(c.hp(prec)) + ld + ls + l_r2r + num(r) * lz + num(8) * lN + log_ups + log_rs;
  if (inner.positive()) cross = cross + mp::log(inner);

  rep.breakdown = {{"log_alpha", log_alpha},       {"log_beta", log_beta},
                   {"log_C1", log_C1},             {"log_C2", log_C2},
                   {"log_upsilon", log_ups},       {"log_theta0", log_theta0},
                   {"log_theta_prod", log_theta_prod}, {"log_zeta", lz},
                   {"log_RS_upper", log_rs_upper}, {"log_hp_crosscheck", cross}};
  rep.inputs = {{"d", detail::str(d)}, {"s", detail::str(s)}, {"r", detail::str(r)},
                {"N", detail::str(N)}, {"p", detail::str(p)}};
  add_constants_echo(rep, c);
  return rep;
}

/// Pipeline with d, s, R(S) taken from the extension estimates of (K0, S0).
inline BoundReport pipeline_bound(const FieldData& f, long N, const Constants& c,
                                  prec_t prec = mp::kDefaultPrecision) {
  const ExtensionData e = extension_estimates(f, N, prec);
  const RegulatorBounds rs = s_regulator_bounds(e.d, e.log_disc_upper, e.log_norm_product, c.siegel(prec));
  BoundReport rep = pipeline_bound(e.d, e.s, N, rs.log_upper, f.p, c, prec);
  if (e.s_lifted) rep.notes.emplace_back("s = 1 lifted to s = 2 by adding a valuation");
  rep.breakdown.push_back({"log_disc_upper", e.log_disc_upper});
  rep.breakdown.push_back({"log_norm_product_upper", e.log_norm_product});
  return rep;
}

/// h(P) <= s0 N (N phi(N) log(24 N^14 + 24 N^9) + N log(48 N^2 (N^6 + N + 1)) + log 2).
inline BoundReport lambda_one_bound(long s0, long N, prec_t prec = mp::kDefaultPrecision) {
  if (N < 2 || s0 < 1) throw invalid_input("lambda_one_bound: needs N >= 2 and s0 >= 1");
  const long phi = numtheory::euler_phi(N);
  Integer n = N, a, b;
  a = 24 * (n * n * n * n * n * n * n * n * n * n * n * n * n * n) + 24 * (n * n * n * n * n * n * n * n * n);
  b = 48 * n * n * (n * n * n * n * n * n + n + 1);
  const Interval inner = detail::num(N * phi, prec) * mp::log(Interval::from_z(a, prec)) +
                         detail::num(N, prec) * mp::log(Interval::from_z(b, prec)) + detail::ln(2, prec);
  BoundReport r;
  r.theorem = "lambda_one";
  r.level = N;
  r.log_bound = detail::ln(s0, prec) + detail::ln(N, prec) + mp::log(inner);
  r.breakdown = {{"log_inner", mp::log(inner)}};
  r.inputs = {{"s0", detail::str(s0)}, {"N", detail::str(N)}, {"phi_N", detail::str(phi)}};
  return r;
}

/// Shallow points (|q_w(P)| > 10^{-N}) satisfy h(P) < 3 s N.
inline long trivial_regime_bound(long s, long N) {
  if (s < 1 || N < 2) throw invalid_input("trivial_regime_bound: needs s >= 1 and N >= 2");
  return 3 * s * N;
}

}  // namespace jbound::bounds
