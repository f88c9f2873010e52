#pragma once

// Exact arithmetic in Q(zeta_L).  An element is an integer vector of length
// phi(L) over a positive common denominator, read as a polynomial in zeta_L
// reduced modulo the L-th cyclotomic polynomial.

#include <gmpxx.h>

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "jbound/errors.hpp"
#include "jbound/mp/complex.hpp"
#include "jbound/mp/interval.hpp"
#include "jbound/numtheory/arith.hpp"

namespace jbound::qseries {

using numtheory::Integer;
using numtheory::Rational;

inline constexpr long kConductorCap = 2048;

/// Reduction data for one conductor: Phi_L and x^j mod Phi_L for 0 <= j < L.
class CycField {
 public:
  long conductor() const { return L_; }
  long degree() const { return phi_; }
  const std::vector<long>& cyclotomic_polynomial() const { return poly_; }
  const std::vector<long>& power(long j) const { return powers_[numtheory::mod(j, L_)]; }

  /// Shared, lazily built instance.  Safe to call from several threads.
  static const CycField& get(long L) {
    if (L < 1) throw invalid_input("conductor must be positive");
    if (L > kConductorCap) {
      throw resource_error("conductor " + std::to_string(L) + " exceeds cap " +
                           std::to_string(kConductorCap));
    }
    static std::mutex mu;
    static std::map<long, std::unique_ptr<CycField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[L];
    if (!slot) slot.reset(new CycField(L));
    return *slot;
  }

 private:
  explicit CycField(long L) : L_(L), phi_(numtheory::euler_phi(L)) {
    // Phi_L = prod_{d | L} (x^d - 1)^{mu(L/d)}: multiply the mu = +1 factors,
    // then divide out the mu = -1 factors exactly.
    std::vector<Integer> num{1}, den{1};
    for (long d = 1; d <= L; ++d) {
      if (L % d != 0) continue;
      const int mu = mobius(L / d);
      if (mu == 0) continue;
      auto& target = mu > 0 ? num : den;
      std::vector<Integer> next(target.size() + d);
      for (std::size_t i = 0; i < target.size(); ++i) {
        next[i + d] += target[i];
        next[i] -= target[i];
      }
      target = std::move(next);
    }
    std::vector<Integer> quotient(num.size() - den.size() + 1);
    for (long i = static_cast<long>(quotient.size()) - 1; i >= 0; --i) {
      Integer c = num[i + den.size() - 1] / den.back();
      quotient[i] = c;
      for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (const auto& c : quotient) poly_.push_back(c.get_si());

    powers_.assign(L, std::vector<long>(phi_, 0));
    std::vector<long> cur(phi_, 0);
    cur[0] = 1;
    for (long j = 0; j < L; ++j) {
      powers_[j] = cur;
      // multiply by x and reduce with the monic Phi_L
      const long top = cur[phi_ - 1];
      for (long i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1] - top * poly_[i];
      cur[0] = -top * poly_[0];
    }
  }

  static int mobius(long n) {
    int mu = 1;
    for (const auto& f : numtheory::factorize(n)) {
      if (f.exponent > 1) return 0;
      mu = -mu;
    }
    return mu;
  }

  long L_;
  long phi_;
  std::vector<long> poly_;
  std::vector<std::vector<long>> powers_;
};

class CycNumber {
 public:
  /// Zero in conductor L.
  explicit CycNumber(long L = 1) : L_(L), num_(CycField::get(L).degree()), den_(1) {}

  static CycNumber from_rational(const Rational& q, long L = 1) {
    CycNumber x(L);
    x.num_[0] = q.get_num();
    x.den_ = q.get_den();
    return x;
  }
  static CycNumber from_integer(long v, long L = 1) { return from_rational(Rational(v), L); }

  /// zeta_L^j.
  static CycNumber root_of_unity(long j, long L) {
    const auto& f = CycField::get(L);
    CycNumber x(L);
    const auto& p = f.power(j);
    for (long i = 0; i < f.degree(); ++i) x.num_[i] = p[i];
    return x;
  }

  /// Element sum_j c_j zeta_L^j / den for an unreduced group-ring vector c of length L.
  static CycNumber from_group_ring(long L, const std::vector<Integer>& c, const Integer& den = 1) {
    if (static_cast<long>(c.size()) != L) throw invalid_input("group ring vector has wrong length");
    const auto& f = CycField::get(L);
    CycNumber x(L);
    for (long j = 0; j < L; ++j) {
      if (c[j] == 0) continue;
      const auto& p = f.power(j);
      for (long i = 0; i < f.degree(); ++i) {
        if (p[i] != 0) x.num_[i] += c[j] * p[i];
      }
    }
    x.den_ = den;
    x.normalize();
    return x;
  }

  long conductor() const { return L_; }
  const std::vector<Integer>& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }
  Rational coefficient(long i) const {
    Rational q(num_.at(i), den_);
    q.canonicalize();
    return q;
  }

  bool is_zero() const {
    for (const auto& c : num_) {
      if (c != 0) return false;
    }
    return true;
  }
  bool is_integral() const { return den_ == 1; }
  /// True when the element lies in Q.
  bool is_rational() const {
    for (std::size_t i = 1; i < num_.size(); ++i) {
      if (num_[i] != 0) return false;
    }
    return true;
  }

  /// The same element written in conductor M (a multiple of L).
  CycNumber lift(long M) const {
    if (M == L_) return *this;
    if (M % L_ != 0) throw invalid_input("lift: target conductor is not a multiple");
    const long step = M / L_;
    std::vector<Integer> c(M);
    for (std::size_t i = 0; i < num_.size(); ++i) c[i * step] = num_[i];
    return from_group_ring(M, c, den_);
  }

  CycNumber mul_root(long j) const {
    const auto& f = CycField::get(L_);
    std::vector<Integer> c(L_);
    for (long i = 0; i < f.degree(); ++i) c[numtheory::mod(i + j, L_)] = num_[i];
    return from_group_ring(L_, c, den_);
  }

  CycNumber pow(unsigned long e) const {
    CycNumber result = from_integer(1, L_);
    CycNumber base = *this;
    while (e > 0) {
      if (e & 1UL) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  /// sigma_t(x) with zeta_L -> e^{2 pi i t / L}, gcd(t, L) = 1.
  mp::Complex embed(long t, mp::prec_t prec) const {
    mp::Complex acc(prec);
    const mp::Real two_pi_over_L = mp::div_si(mp::mul_si(mp::Real::pi(prec), 2, MPFR_RNDN), L_, MPFR_RNDN);
    for (std::size_t i = 0; i < num_.size(); ++i) {
      if (num_[i] == 0) continue;
      const mp::Real theta = mp::mul_si(two_pi_over_L, numtheory::mod(t * static_cast<long>(i), L_), MPFR_RNDN);
      const mp::Real c = mp::Real::from_z(num_[i], prec);
      acc.re = acc.re + c * mp::cos(theta, MPFR_RNDN);
      acc.im = acc.im + c * mp::sin(theta, MPFR_RNDN);
    }
    mp::Real d = mp::Real::from_z(den_, prec);
    return {acc.re / d, acc.im / d};
  }

  /// Number of bits in the largest numerator; used to size evaluation precision.
  long max_bits() const {
    std::size_t b = 0;
    for (const auto& c : num_) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
    return static_cast<long>(b);
  }

  /// Polynomial in `var` with ascending powers, e.g. "1 - 2*z^2" or "3/2*z".
  std::string to_string(const std::string& var = "z") const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < num_.size(); ++i) {
      Rational c = coefficient(static_cast<long>(i));
      if (c == 0) continue;
      const bool negative = c < 0;
      Rational mag = negative ? Rational(-c) : c;
      if (first) {
        if (negative) os << '-';
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      if (i == 0) {
        os << mag.get_str();
      } else {
        if (mag != 1) os << mag.get_str() << '*';
        os << var;
        if (i > 1) os << '^' << i;
      }
    }
    if (first) return "0";
    return os.str();
  }

  /// Inverse of to_string in conductor L.
  static CycNumber parse(const std::string& s, long L, const std::string& var = "z") {
    const auto& f = CycField::get(L);
    std::vector<Rational> coeffs(f.degree());
    std::string t;
    for (char ch : s) {
      if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    }
    if (t.empty()) throw invalid_input("empty cyclotomic polynomial string");
    std::size_t pos = 0;
    while (pos < t.size()) {
      int sign = 1;
      if (t[pos] == '+' || t[pos] == '-') {
        sign = t[pos] == '-' ? -1 : 1;
        ++pos;
      }
      std::size_t end = pos;
      while (end < t.size() && t[end] != '+' && t[end] != '-') ++end;
      std::string term = t.substr(pos, end - pos);
      pos = end;
      if (term.empty()) throw invalid_input("malformed term in '" + s + "'");
      Rational c = 1;
      long power = 0;
      const auto at = term.find(var);
      if (at == std::string::npos) {
        c = parse_rational(term);
      } else {
        std::string head = term.substr(0, at);
        std::string tail = term.substr(at + var.size());
        if (!head.empty()) {
          if (head.back() != '*') throw invalid_input("malformed term '" + term + "'");
          head.pop_back();
          c = parse_rational(head);
        }
        power = 1;
        if (!tail.empty()) {
          if (tail[0] != '^') throw invalid_input("malformed term '" + term + "'");
          try {
            power = std::stol(tail.substr(1));
          } catch (const std::exception&) {
            throw invalid_input("malformed exponent in '" + term + "'");
          }
        }
      }
      if (power < 0 || power >= f.degree()) throw invalid_input("power out of range in '" + term + "'");
      coeffs[power] += sign * c;
    }
    Integer den = 1;
    for (auto& c : coeffs) {
      c.canonicalize();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
    CycNumber x(L);
    for (long i = 0; i < f.degree(); ++i) x.num_[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
    x.den_ = den;
    x.normalize();
    return x;
  }

  friend CycNumber operator+(const CycNumber& a, const CycNumber& b) { return combine(a, b, 1); }
  friend CycNumber operator-(const CycNumber& a, const CycNumber& b) { return combine(a, b, -1); }
  friend CycNumber operator-(const CycNumber& a) {
    CycNumber r = a;
    for (auto& c : r.num_) c = -c;
    return r;
  }
  friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
    if (a.L_ != b.L_) {
      const long M = std::lcm(a.L_, b.L_);
      return a.lift(M) * b.lift(M);
    }
    const long L = a.L_;
    const auto& f = CycField::get(L);
    const long phi = f.degree();
    std::vector<Integer> c(L);
    for (long i = 0; i < phi; ++i) {
      if (a.num_[i] == 0) continue;
      for (long j = 0; j < phi; ++j) {
        if (b.num_[j] == 0) continue;
        mpz_addmul(c[(i + j) % L].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
      }
    }
    return from_group_ring(L, c, a.den_ * b.den_);
  }
  friend CycNumber operator*(const Rational& q, const CycNumber& a) {
    CycNumber r = a;
    for (auto& c : r.num_) c *= q.get_num();
    r.den_ *= q.get_den();
    r.normalize();
    return r;
  }

  /// Equality as field elements (conductors may differ).
  friend bool operator==(const CycNumber& a, const CycNumber& b) {
    if (a.L_ != b.L_) {
      const long M = std::lcm(a.L_, b.L_);
      return a.lift(M) == b.lift(M);
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
  }

 private:
  static Rational parse_rational(const std::string& s) {
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) throw invalid_input("malformed rational '" + s + "'");
    if (q.get_den() == 0) throw invalid_input("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }

  static CycNumber combine(const CycNumber& a, const CycNumber& b, int sign) {
    if (a.L_ != b.L_) {
      const long M = std::lcm(a.L_, b.L_);
      return combine(a.lift(M), b.lift(M), sign);
    }
    CycNumber r(a.L_);
    r.den_ = a.den_ * b.den_;
    for (std::size_t i = 0; i < r.num_.size(); ++i) {
      r.num_[i] = a.num_[i] * b.den_ + sign * b.num_[i] * a.den_;
    }
    r.normalize();
    return r;
  }

  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      for (auto& c : num_) c = -c;
    }
    if (den_ == 0) throw consistency_error("cyclotomic number with zero denominator");
    if (den_ == 1) return;
    Integer g = den_;
    for (const auto& c : num_) {
      if (g == 1) break;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (is_zero()) g = den_;
    if (g != 1) {
      den_ /= g;
      for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
  }

  long L_;
  std::vector<Integer> num_;
  Integer den_;
};

inline std::ostream& operator<<(std::ostream& os, const CycNumber& x) { return os << x.to_string(); }

/// Upper bound on max_t |sigma_t(x)| over all embeddings, with rounding slack.
inline mp::Real max_embedding_abs_upper(const CycNumber& x, mp::prec_t prec = mp::kDefaultPrecision) {
  const mp::prec_t wp = prec + x.max_bits() + 64;
  mp::Real best(0, prec);
  for (long t = 1; t <= x.conductor(); ++t) {
    if (std::gcd(t, x.conductor()) != 1) continue;
    mp::Real a = mp::abs(x.embed(t, wp));
    best = mp::max(best, a);
  }
  // relative slack for the round-to-nearest evaluation
  mp::Real slack = mp::mul(best, mp::exp2_si(-(prec - 8), prec), MPFR_RNDU);
  mp::Real abs_slack = mp::exp2_si(-(prec - 16), prec);
  mp::Real r = mp::add(best, slack, MPFR_RNDU);
  return mp::add(r, abs_slack, MPFR_RNDU);
}

}  // namespace jbound::qseries
