#pragma once

#include <gmpxx.h>

#include <numeric>
#include <utility>
#include <vector>

#include "jbound/errors.hpp"

namespace jbound::numtheory {

using Integer = mpz_class;
using Rational = mpq_class;

struct PrimePower {
  long prime;
  int exponent;
};

/// Trial-division factorization; levels here are at most a few thousand.
inline std::vector<PrimePower> factorize(long n) {
  if (n < 1) throw invalid_input("factorize: n must be positive");
  std::vector<PrimePower> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (const auto& f : factorize(n)) out.push_back(f.prime);
  return out;
}

inline long euler_phi(long n) {
  long result = n;
  for (const auto& f : factorize(n)) result -= result / f.prime;
  return result;
}

inline bool is_prime_power(long n) { return n >= 2 && factorize(n).size() == 1; }

/// The level M > N at which a prime-power level is re-read: 3N for powers of
/// two, 2N otherwise.  M always has two distinct prime factors.
inline long raise_level(long n) {
  if (!is_prime_power(n)) throw invalid_input("raise_level: n must be a prime power >= 2");
  return factorize(n).front().prime == 2 ? 3 * n : 2 * n;
}

/// Phi_n(1): the prime l when n is a power of l, and 1 otherwise.
inline long cyclotomic_at_one(long n) {
  if (n < 2) throw invalid_input("cyclotomic_at_one: n must be >= 2");
  auto f = factorize(n);
  return f.size() == 1 ? f.front().prime : 1;
}

inline long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

inline long inverse_mod(long a, long n) {
  long t = 0, new_t = 1, r = n, new_r = mod(a, n);
  while (new_r != 0) {
    long q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw invalid_input("inverse_mod: not a unit");
  return mod(t, n);
}

inline std::vector<long> units_mod(long n) {
  std::vector<long> out;
  for (long x = 1; x < n; ++x) {
    if (std::gcd(x, n) == 1) out.push_back(x);
  }
  if (n == 1) out.push_back(0);
  return out;
}

}  // namespace jbound::numtheory
