#pragma once

// Closed real intervals with outward rounding.  Every bound reported by the
// library is the upper end of one of these, so it is certified to be at least
// the exact value of the formula for the given inputs.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "jbound/errors.hpp"
#include "jbound/mp/real.hpp"

namespace jbound::mp {

class Interval {
 public:
  explicit Interval(prec_t prec = kDefaultPrecision) : lo_(prec), hi_(prec) {}
  Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw consistency_error("interval with lo > hi");
  }

  static Interval point(long x, prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_.get(), x, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), x, MPFR_RNDU);
    return r;
  }
  static Interval from_z(const mpz_class& z, prec_t prec) {
    return {Real::from_z(z, prec, MPFR_RNDD), Real::from_z(z, prec, MPFR_RNDU)};
  }
  static Interval from_q(const mpq_class& q, prec_t prec) {
    return {Real::from_q(q, prec, MPFR_RNDD), Real::from_q(q, prec, MPFR_RNDU)};
  }
  /// Encloses the exact decimal value of `s`.
  static Interval from_decimal(const std::string& s, prec_t prec) {
    return {Real::from_string(s, prec, MPFR_RNDD), Real::from_string(s, prec, MPFR_RNDU)};
  }
  static Interval pi(prec_t prec) { return {Real::pi(prec, MPFR_RNDD), Real::pi(prec, MPFR_RNDU)}; }
  static Interval log2(prec_t prec) {
    Interval r(prec);
    mpfr_const_log2(r.lo_.get(), MPFR_RNDD);
    mpfr_const_log2(r.hi_.get(), MPFR_RNDU);
    return r;
  }

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  prec_t prec() const { return lo_.prec(); }

  bool contains(const Real& x) const { return lo_ <= x && x <= hi_; }
  bool positive() const { return lo_.sign() > 0; }

 private:
  Real lo_, hi_;
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return {add(a.lo(), b.lo(), MPFR_RNDD), add(a.hi(), b.hi(), MPFR_RNDU)};
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return {sub(a.lo(), b.hi(), MPFR_RNDD), sub(a.hi(), b.lo(), MPFR_RNDU)};
}
inline Interval operator-(const Interval& a) { return {neg(a.hi(), MPFR_RNDD), neg(a.lo(), MPFR_RNDU)}; }

inline Interval operator*(const Interval& a, const Interval& b) {
  const Real* xs[2] = {&a.lo(), &a.hi()};
  const Real* ys[2] = {&b.lo(), &b.hi()};
  Real lo = mul(*xs[0], *ys[0], MPFR_RNDD);
  Real hi = mul(*xs[0], *ys[0], MPFR_RNDU);
  for (const Real* x : xs) {
    for (const Real* y : ys) {
      Real d = mul(*x, *y, MPFR_RNDD);
      Real u = mul(*x, *y, MPFR_RNDU);
      if (d < lo) lo = std::move(d);
      if (u > hi) hi = std::move(u);
    }
  }
  return {std::move(lo), std::move(hi)};
}

inline Interval operator/(const Interval& a, const Interval& b) {
  if (!b.positive()) throw invalid_input("interval division by a non-positive interval");
  const Real* xs[2] = {&a.lo(), &a.hi()};
  const Real* ys[2] = {&b.lo(), &b.hi()};
  Real lo = div(*xs[0], *ys[0], MPFR_RNDD);
  Real hi = div(*xs[0], *ys[0], MPFR_RNDU);
  for (const Real* x : xs) {
    for (const Real* y : ys) {
      Real d = div(*x, *y, MPFR_RNDD);
      Real u = div(*x, *y, MPFR_RNDU);
      if (d < lo) lo = std::move(d);
      if (u > hi) hi = std::move(u);
    }
  }
  return {std::move(lo), std::move(hi)};
}

inline Interval operator*(long k, const Interval& a) { return Interval::point(k, a.prec()) * a; }

inline Interval log(const Interval& a) {
  if (!a.positive()) throw invalid_input("log of a non-positive interval");
  return {log(a.lo(), MPFR_RNDD), log(a.hi(), MPFR_RNDU)};
}
inline Interval exp(const Interval& a) { return {exp(a.lo(), MPFR_RNDD), exp(a.hi(), MPFR_RNDU)}; }
inline Interval sqrt(const Interval& a) {
  if (a.lo().sign() < 0) throw invalid_input("sqrt of a negative interval");
  return {sqrt(a.lo(), MPFR_RNDD), sqrt(a.hi(), MPFR_RNDU)};
}
/// a^e for a > 0 and e >= 0.
inline Interval pow(const Interval& a, unsigned long e) {
  if (a.lo().sign() < 0) throw invalid_input("pow of a negative interval");
  return {pow_ui(a.lo(), e, MPFR_RNDD), pow_ui(a.hi(), e, MPFR_RNDU)};
}
inline Interval max(const Interval& a, const Interval& b) {
  return {max(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

/// log(e^x + e^y), monotone in both arguments.
inline Interval log_add(const Interval& x, const Interval& y) {
  auto one_side = [](const Real& a, const Real& b, mpfr_rnd_t rnd) {
    const Real& m = max(a, b);
    Real d = sub(min(a, b), m, rnd);
    return add(m, log1p(exp(d, rnd), rnd), rnd);
  };
  return {one_side(x.lo(), y.lo(), MPFR_RNDD), one_side(x.hi(), y.hi(), MPFR_RNDU)};
}

inline Interval log_sum(const std::vector<Interval>& logs) {
  if (logs.empty()) throw invalid_input("log_sum of an empty list");
  Interval acc = logs.front();
  for (std::size_t i = 1; i < logs.size(); ++i) acc = log_add(acc, logs[i]);
  return acc;
}

/// Convert a natural-log interval to log10, outward.
inline Interval to_log10(const Interval& ln) {
  Interval ln10 = log(Interval::point(10, ln.prec()));
  return ln / ln10;
}

}  // namespace jbound::mp
