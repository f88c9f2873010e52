#include <gtest/gtest.h>

#include "jbound/bounds/formulas.hpp"
#include "jbound/cli/oracle.hpp"

using namespace jbound;
using namespace jbound::bounds;
using mp::Interval;

namespace {

constexpr mp::prec_t kPrec = 256;

const cli::json& oracle() {
  static const cli::json data = cli::load_oracle_file(JBOUND_ORACLE_PATH);
  return data;
}

// |x - ref| <= 1e-27 |ref| for a 30-digit reference rounded to nearest.
void expect_close(const mp::Real& x, const std::string& key) {
  const std::string ref_str = oracle()["examples"][key].get<std::string>();
  const mp::Real ref = mp::Real::from_string(ref_str, kPrec, MPFR_RNDN);
  const mp::Real rel = mp::div(mp::abs(mp::sub(x, ref, MPFR_RNDU), MPFR_RNDU), mp::abs(ref, MPFR_RNDD), MPFR_RNDU);
  EXPECT_LE(mpfr_get_d(rel.get(), MPFR_RNDU), 1e-27) << key << ": ours " << x.decimal(35, MPFR_RNDN) << " ref " << ref_str;
}

FieldData rational_field() {
  FieldData f;
  f.k0_in_cyclotomic = true;
  return f;
}

Constants unit() { return Constants{}; }

Constants with_C(const std::string& c) {
  Constants k;
  k.preset = "custom";
  k.C_baker = c;
  return k;
}

}  // namespace

TEST(Oracle, CorpusAgreesAndNeverBelow) {
  const auto cmp = cli::compare_oracle_corpus(oracle()["corpus"], kPrec, 1e-12);
  EXPECT_GE(oracle()["corpus"].size(), 50u);
  for (const auto& c : cmp) {
    EXPECT_TRUE(c.not_below) << c.label << " ours " << c.ours.decimal(40, MPFR_RNDU) << " ref "
                             << c.reference.decimal(40, MPFR_RNDD);
    EXPECT_TRUE(c.within_tol) << c.label << " rel " << c.rel_diff.decimal(5, MPFR_RNDU);
    // far tighter than the pinned tolerance at 256 bits
    EXPECT_LT(mpfr_get_d(c.rel_diff.get(), MPFR_RNDU), 1e-45) << c.label;
  }
}

TEST(Oracle, NamedExamples) {
  expect_close(zeta_quantity(1, kPrec).hi(), "zeta_d1");
  expect_close(zeta_quantity(10, kPrec).hi(), "zeta_d10");
  expect_close(zeta_quantity(15, kPrec).hi(), "zeta_d15");
  expect_close(zeta_quantity(16, kPrec).hi(), "zeta_d16");
  expect_close(mp::exp(s_regulator_bounds(2, Integer(8), {}, Interval::point(1, kPrec)).log_upper).hi(),
               "s_regulator_d2_D8");
  expect_close(mp::exp(log_delta(rational_field(), 6, kPrec)).hi(), "delta_Q_N6");
  expect_close(mp::to_log10(theorem1_bound(6, unit(), kPrec).log_bound).hi(), "thm1_N6_log10");
  expect_close(theorem1_bound(10, unit(), kPrec).log_bound.hi(), "thm1_N10_log");
  expect_close(mp::to_log10(theorem2_bound(rational_field(), 6, unit(), kPrec).log_bound).hi(), "thm2_Q_N6_log10");
  const Interval one = Interval::point(1, kPrec);
  expect_close(baker_upsilon(4, 3, PlaceKind::archimedean, 1, one).hi(), "upsilon_arch_d4_r3_C1_log");
  expect_close(baker_upsilon(4, 3, PlaceKind::finite, 5, one).hi(), "upsilon_fin_d4_r3_p5_C1_log");
  expect_close(hW_bound(2, 2, one).hi(), "hW_s2_N2_q1");
  expect_close(lambda_one_bound(1, 6, kPrec).log_bound.hi(), "lambda_one_N6_s0_1_log");
  expect_close(pipeline_bound(2, 2, 6, Interval::point(0, kPrec), 1, unit(), kPrec).log_bound.hi(), "pipeline_toy_log");
}

TEST(Formulas, GoldenLog10AtLevelSix) {
  const auto t1 = theorem1_bound(6, unit(), kPrec);
  const auto t2 = theorem2_bound(rational_field(), 6, unit(), kPrec);
  EXPECT_EQ(mp::to_log10(t1.log_bound).hi().decimal(12, MPFR_RNDU), "1.08758053801e+01");
  EXPECT_EQ(mp::to_log10(t2.log_bound).hi().decimal(12, MPFR_RNDU), "2.76319804280e+01");
}

TEST(Formulas, EnclosuresAreNarrowAndTightenWithPrecision) {
  const auto lo = theorem2_bound(rational_field(), 12, with_C("3.5"), 128).log_bound;
  const auto hi = theorem2_bound(rational_field(), 12, with_C("3.5"), 1024).log_bound;
  EXPECT_LE(lo.lo(), hi.lo());
  EXPECT_GE(lo.hi(), hi.hi());
  EXPECT_LT(mpfr_get_d(mp::sub(hi.hi(), hi.lo(), MPFR_RNDU).get(), MPFR_RNDU), 1e-250);
}

TEST(Formulas, MonotoneInC) {
  for (long N : {6, 10, 12, 15}) {
    Interval prev = theorem1_bound(N, with_C("1"), kPrec).log_bound;
    for (const char* c : {"1.5", "2", "10", "1000"}) {
      const Interval cur = theorem1_bound(N, with_C(c), kPrec).log_bound;
      EXPECT_GT(cur.lo(), prev.hi()) << N << " C=" << c;
      prev = cur;
    }
  }
}

TEST(Formulas, PrimePowerRouting) {
  EXPECT_THROW(theorem1_bound(5, unit(), kPrec), precondition_error);
  EXPECT_THROW(theorem2_bound(rational_field(), 8, unit(), kPrec), precondition_error);
  const auto r = theorem3_bound(rational_field(), 5, unit(), kPrec);
  ASSERT_EQ(r.size(), 2u);
  for (const auto& x : r) {
    EXPECT_EQ(x.level, 10);
    bool noted = false;
    for (const auto& n : x.notes) noted = noted || n.find("level raised from N = 5 to M = 10") != std::string::npos;
    EXPECT_TRUE(noted);
  }
  EXPECT_EQ(mp::to_log10(r[0].log_bound).hi().decimal(20, MPFR_RNDU),
            mp::to_log10(theorem1_bound(10, unit(), kPrec).log_bound).hi().decimal(20, MPFR_RNDU));
  EXPECT_THROW(theorem3_bound(rational_field(), 6, unit(), kPrec), invalid_input);
}

TEST(Formulas, ZetaQuantity) {
  // constant below d = 3
  EXPECT_EQ(zeta_quantity(1, kPrec).hi(), zeta_quantity(3, kPrec).hi());
  EXPECT_EQ(zeta_quantity(2, kPrec).hi(), zeta_quantity(3, kPrec).hi());
  EXPECT_THROW(zeta_quantity(0, kPrec), invalid_input);
}

TEST(Formulas, SUnitBoundsOrdering) {
  const Interval z = zeta_quantity(4, kPrec);
  for (long r = 1; r <= 6; ++r) {
    const auto b = sunit_height_bounds(4, r, Interval::point(2, kPrec), z);
    EXPECT_LT(b.log_per_unit_lo.hi(), b.log_per_unit_hi.lo()) << r;
  }
  EXPECT_THROW(sunit_height_bounds(4, 0, Interval::point(2, kPrec), z), precondition_error);
}

TEST(Formulas, RhoSumMatchesTwelveDN3LogN) {
  // d = 1: one infinite place; finite places above 2 and 3 with residue degree one
  const long N = 6;
  const Interval arch = rho_v(N, PlaceKind::archimedean, 0, kPrec);
  const Interval expected = Interval::point(12 * N * N * N, kPrec) * mp::log(Interval::point(N, kPrec));
  EXPECT_LE(arch.lo(), expected.hi());
  EXPECT_GE(arch.hi(), expected.lo());
  const Interval fin = rho_v(N, PlaceKind::finite, 2, kPrec) + rho_v(N, PlaceKind::finite, 3, kPrec);
  EXPECT_LE(fin.hi(), expected.hi());
  EXPECT_EQ(mpfr_sgn(rho_v(N, PlaceKind::finite, 1, kPrec).hi().get()), 0);
  EXPECT_THROW(rho_v(N, PlaceKind::finite, 5, kPrec), invalid_input);
}

TEST(Formulas, FieldValidation) {
  FieldData f = rational_field();
  f.finite_place_norms = {4, 9};
  f.s0 = 3;
  f.p = 2;
  EXPECT_THROW(f.validate(), invalid_input);
  f.p = 3;
  EXPECT_NO_THROW(f.validate());
  f.finite_place_norms = {6};
  EXPECT_THROW(f.validate(), invalid_input);
}

TEST(Formulas, TrivialRegime) {
  EXPECT_EQ(trivial_regime_bound(2, 6), 36);
  EXPECT_EQ(trivial_regime_bound(4, 10), 120);
}
