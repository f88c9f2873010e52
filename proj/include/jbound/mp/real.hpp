#pragma once

// Thin RAII wrapper over mpfr_t.  Every operation names its rounding mode;
// the operator overloads round to nearest and are meant for numeric checks,
// not for certified bounds (see interval.hpp for those).

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdlib>
#include <string>
#include <utility>

#include "jbound/errors.hpp"

namespace jbound::mp {

using prec_t = mpfr_prec_t;
inline constexpr prec_t kDefaultPrecision = 256;

class Real {
 public:
  explicit Real(prec_t prec = kDefaultPrecision) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(long x, prec_t prec) : Real(prec) { mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  prec_t prec() const { return mpfr_get_prec(v_); }

  static Real from_z(const mpz_class& z, prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
    return r;
  }
  static Real from_q(const mpq_class& q, prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
    return r;
  }
  static Real from_string(const std::string& s, prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    char* end = nullptr;
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, rnd);
    if (s.empty() || end == nullptr || *end != '\0') {
      throw invalid_input("not a decimal number: '" + s + "'");
    }
    return r;
  }
  static Real pi(prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_const_pi(r.v_, rnd);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Exact hexadecimal payload, e.g. "0x1.8p+3".
  std::string hex() const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%Ra", v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  /// Scientific decimal with `digits` significant digits, rounded as asked.
  std::string decimal(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const {
    char* buf = nullptr;
    const char* fmt = rnd == MPFR_RNDU ? "%.*RUe" : rnd == MPFR_RNDD ? "%.*RDe" : "%.*RNe";
    mpfr_asprintf(&buf, fmt, digits - 1, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

 private:
  mpfr_t v_;
};

inline prec_t max_prec(const Real& a, const Real& b) { return a.prec() > b.prec() ? a.prec() : b.prec(); }

#define JBOUND_MP_BINARY(name, fn)                                       \
  inline Real name(const Real& a, const Real& b, mpfr_rnd_t rnd) {       \
    Real r(max_prec(a, b));                                              \
    fn(r.get(), a.get(), b.get(), rnd);                                  \
    return r;                                                            \
  }
JBOUND_MP_BINARY(add, mpfr_add)
JBOUND_MP_BINARY(sub, mpfr_sub)
JBOUND_MP_BINARY(mul, mpfr_mul)
JBOUND_MP_BINARY(div, mpfr_div)
JBOUND_MP_BINARY(atan2, mpfr_atan2)
#undef JBOUND_MP_BINARY

#define JBOUND_MP_UNARY(name, fn)                  \
  inline Real name(const Real& a, mpfr_rnd_t rnd) { \
    Real r(a.prec());                              \
    fn(r.get(), a.get(), rnd);                     \
    return r;                                      \
  }
JBOUND_MP_UNARY(log, mpfr_log)
JBOUND_MP_UNARY(log1p, mpfr_log1p)
JBOUND_MP_UNARY(exp, mpfr_exp)
JBOUND_MP_UNARY(sqrt, mpfr_sqrt)
JBOUND_MP_UNARY(cos, mpfr_cos)
JBOUND_MP_UNARY(sin, mpfr_sin)
JBOUND_MP_UNARY(neg, mpfr_neg)
JBOUND_MP_UNARY(abs, mpfr_abs)
#undef JBOUND_MP_UNARY

inline Real pow_ui(const Real& a, unsigned long e, mpfr_rnd_t rnd) {
  Real r(a.prec());
  mpfr_pow_ui(r.get(), a.get(), e, rnd);
  return r;
}
inline Real mul_si(const Real& a, long k, mpfr_rnd_t rnd) {
  Real r(a.prec());
  mpfr_mul_si(r.get(), a.get(), k, rnd);
  return r;
}
inline Real div_si(const Real& a, long k, mpfr_rnd_t rnd) {
  Real r(a.prec());
  mpfr_div_si(r.get(), a.get(), k, rnd);
  return r;
}
inline Real mul_q(const Real& a, const mpq_class& q, mpfr_rnd_t rnd) {
  Real r(a.prec());
  mpfr_mul_q(r.get(), a.get(), q.get_mpq_t(), rnd);
  return r;
}
/// 2^e exactly.
inline Real exp2_si(long e, prec_t prec) {
  Real r(prec);
  mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
  return r;
}

inline Real operator+(const Real& a, const Real& b) { return add(a, b, MPFR_RNDN); }
inline Real operator-(const Real& a, const Real& b) { return sub(a, b, MPFR_RNDN); }
inline Real operator*(const Real& a, const Real& b) { return mul(a, b, MPFR_RNDN); }
inline Real operator/(const Real& a, const Real& b) { return div(a, b, MPFR_RNDN); }
inline Real operator-(const Real& a) { return neg(a, MPFR_RNDN); }

inline int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()); }
inline bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
inline bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
inline bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
inline bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

inline const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
inline const Real& min(const Real& a, const Real& b) { return a < b ? a : b; }

}  // namespace jbound::mp
