#pragma once

// Round-to-nearest complex arithmetic on top of Real, used for numeric
// cross-checks at archimedean embeddings.

#include "jbound/mp/real.hpp"

namespace jbound::mp {

struct Complex {
  Real re, im;

  explicit Complex(prec_t prec = kDefaultPrecision) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  static Complex one(prec_t prec) { return {Real(1, prec), Real(0, prec)}; }
  /// r * e^{i theta}
  static Complex polar(const Real& r, const Real& theta) {
    return {r * cos(theta, MPFR_RNDN), r * sin(theta, MPFR_RNDN)};
  }
  /// e^{2 pi i k / m}
  static Complex root_of_unity(long k, long m, prec_t prec) {
    Real theta = div_si(mul_si(Real::pi(prec), 2 * (k % m), MPFR_RNDN), m, MPFR_RNDN);
    return {cos(theta, MPFR_RNDN), sin(theta, MPFR_RNDN)};
  }

  prec_t prec() const { return re.prec(); }
};

inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
inline Complex operator/(const Complex& a, const Complex& b) {
  Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

inline Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
inline Real abs(const Complex& a) { return sqrt(norm(a), MPFR_RNDN); }
inline Real arg(const Complex& a) { return atan2(a.im, a.re, MPFR_RNDN); }

/// Principal logarithm.
inline Complex log(const Complex& a) { return {log(abs(a), MPFR_RNDN), arg(a)}; }
inline Complex exp(const Complex& a) { return Complex::polar(exp(a.re, MPFR_RNDN), a.im); }

}  // namespace jbound::mp
