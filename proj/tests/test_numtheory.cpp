#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <set>

#include "jbound/numtheory/arith.hpp"
#include "jbound/numtheory/partitions.hpp"
#include "jbound/numtheory/torsion.hpp"

using namespace jbound;
using namespace jbound::numtheory;

namespace {

// Counts partitions of n into parts <= max_part by plain recursion.
long brute_partitions(int n, int max_part) {
  if (n == 0) return 1;
  long total = 0;
  for (int p = std::min(n, max_part); p >= 1; --p) total += brute_partitions(n - p, p);
  return total;
}

long brute_phi(long n) {
  long c = 0;
  for (long x = 1; x <= n; ++x) c += std::gcd(x, n) == 1;
  return c;
}

}  // namespace

TEST(Arith, FactorizeRoundTrip) {
  for (long n = 1; n <= 3000; ++n) {
    long prod = 1;
    long last = 1;
    for (const auto& f : factorize(n)) {
      EXPECT_GT(f.prime, last);
      last = f.prime;
      for (int i = 0; i < f.exponent; ++i) prod *= f.prime;
    }
    EXPECT_EQ(prod, n);
  }
}

TEST(Arith, EulerPhiMatchesCount) {
  for (long n = 1; n <= 500; ++n) EXPECT_EQ(euler_phi(n), brute_phi(n)) << n;
}

TEST(Arith, PrimePowers) {
  const std::set<long> expected{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32};
  for (long n = 1; n <= 32; ++n) EXPECT_EQ(is_prime_power(n), expected.count(n) == 1) << n;
}

TEST(Arith, RaiseLevel) {
  EXPECT_EQ(raise_level(5), 10);
  EXPECT_EQ(raise_level(2), 6);
  EXPECT_EQ(raise_level(8), 24);
  EXPECT_EQ(raise_level(9), 18);
  EXPECT_THROW(raise_level(6), invalid_input);
  for (long n = 2; n <= 2000; ++n) {
    if (!is_prime_power(n)) continue;
    EXPECT_FALSE(is_prime_power(raise_level(n))) << n;
  }
}

TEST(Arith, CyclotomicAtOne) {
  EXPECT_EQ(cyclotomic_at_one(2), 2);
  EXPECT_EQ(cyclotomic_at_one(9), 3);
  EXPECT_EQ(cyclotomic_at_one(6), 1);
  EXPECT_EQ(cyclotomic_at_one(12), 1);
}

TEST(Arith, InverseMod) {
  for (long n = 2; n <= 60; ++n) {
    for (long u : units_mod(n)) EXPECT_EQ(mod(u * inverse_mod(u, n), n), 1);
  }
  EXPECT_THROW(inverse_mod(2, 4), invalid_input);
}

TEST(Torsion, EllRangeAndExamples) {
  EXPECT_EQ(ell_a(TorsionPoint(2, 0, 1)), Rational(1, 12));
  EXPECT_EQ(ell_a(TorsionPoint(2, 1, 0)), Rational(-1, 24));
  for (long n = 2; n <= 12; ++n) {
    for (const auto& a : enumerate_AN(n)) {
      const Rational l = ell_a(a);
      EXPECT_GE(l, Rational(-1, 24));
      EXPECT_LE(l, Rational(1, 12));
      EXPECT_EQ(l, ell_a(a.negated())) << a;
    }
  }
}

TEST(Torsion, CardinalityMatchesEnumeration) {
  const std::vector<long> frozen{3, 8, 12, 24, 24, 48, 48, 72, 72, 120, 96};  // N = 2..12
  for (long n = 2; n <= 12; ++n) {
    const auto pts = enumerate_AN(n);
    EXPECT_EQ(static_cast<long>(pts.size()), an_cardinality(n));
    EXPECT_EQ(an_cardinality(n), frozen[n - 2]);
    for (const auto& a : pts) EXPECT_EQ(a.order(), n);
  }
}

TEST(Partitions, MatchBruteForce) {
  for (int k = 1; k <= 40; ++k) {
    const auto pc = partition_counts(k);
    EXPECT_EQ(pc.total, brute_partitions(k, k)) << k;
    mpz_class s = 0;
    for (const auto& c : pc.by_length) s += c;
    EXPECT_EQ(s, pc.total);
  }
}

TEST(Partitions, FrozenValues) {
  EXPECT_EQ(partition_counts(60).total, 966467);
  EXPECT_EQ(partition_counts(100).total, mpz_class("190569292"));
  EXPECT_EQ(partition_counts(200).total, mpz_class("3972999029388"));
  EXPECT_THROW(partition_counts(401), resource_error);
  EXPECT_THROW(partition_counts(0), invalid_input);
}

TEST(Partitions, BelowExpHalf) {
  for (int k = 1; k <= 60; ++k) EXPECT_TRUE(partition_count_below_exp_half(k)) << k;
}
