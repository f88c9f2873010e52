#pragma once

#include <functional>
#include <future>
#include <set>
#include <string>
#include <vector>

#include "jbound/bounds/formulas.hpp"
#include "jbound/cli/config.hpp"
#include "jbound/cli/oracle.hpp"
#include "jbound/cli/report.hpp"
#include "jbound/modgroup/divisors.hpp"
#include "jbound/qseries/height.hpp"
#include "jbound/qseries/logexp.hpp"
#include "jbound/qseries/numeric.hpp"

namespace jbound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitResource = 3;

struct CommandResult {
  json report;
  int exit_code = kExitOk;
};

inline modgroup::SubgroupData group_of(const Config& c) {
  const std::vector<modgroup::GL2Element> gens =
      c.generators ? *c.generators : modgroup::battery::plus_minus_one(c.level);
  return modgroup::subgroup_closure(c.level, gens, c.group_cap);
}

// ---------------------------------------------------------------- bound

inline CommandResult cmd_bound(const Config& c, const std::string& theorem) {
  static const std::set<std::string> kChoices{"1", "2", "3", "pipeline", "lambda1", "all"};
  if (!kChoices.count(theorem)) throw invalid_input("--theorem must be one of 1, 2, 3, pipeline, lambda1, all");
  const long N = c.level;
  const mp::prec_t prec = c.precision_bits;
  json out = header("bound", c);
  out["theorem_request"] = theorem;

  json gating;
  if (c.generators) {
    const auto g = group_of(c);
    const long nu = modgroup::nu_infty(g);
    gating = {{"source", "generators"},
              {"nu_infty", nu},
              {"group_order", g.order()},
              {"minus_one_adjoined", g.minus_one_adjoined()}};
    if (nu < 3) {
      throw precondition_error("X_G has nu_infty = " + std::to_string(nu) +
                               " < 3 cusps; the height bounds require at least three cusps");
    }
  } else if (c.attest_nu_infty) {
    gating = {{"source", "attested"}};
  } else {
    throw invalid_input("give generators or set attest_nu_infty_ge_3 to vouch for at least three cusps");
  }
  out["gating"] = gating;

  const bool prime_power = numtheory::is_prime_power(N);
  const long M = prime_power ? numtheory::raise_level(N) : N;
  json routing{{"input_level", N}, {"level", M}};
  if (prime_power) {
    routing["note"] = "level raised from N = " + std::to_string(N) + " to M = " + std::to_string(M) +
                      " because N is a prime power";
  }
  out["routing"] = routing;

  const long phi_m = numtheory::euler_phi(M);
  const long s_work = std::max(2L, c.field.s0 * phi_m);
  const long trivial = bounds::trivial_regime_bound(s_work, M);
  const std::string trivial_note = "shallow points (|q_w(P)| > 10^-" + std::to_string(M) + "): h(P) < 3sN = " +
                                   std::to_string(trivial) + " with s = " + std::to_string(s_work);

  std::vector<bounds::BoundReport> reports;
  json skipped = json::array();
  const bool thm1_ok = c.field.k0_in_cyclotomic && c.field.infinite_only();
  auto want = [&](const char* t) { return theorem == "all" || theorem == t; };

  if (prime_power && (want("1") || want("2") || want("3"))) {
    for (auto& r : bounds::theorem3_bound(c.field, N, c.constants, prec)) {
      if (r.theorem == "main3_thm1_shape" && !thm1_ok) {
        skipped.push_back({{"theorem", r.theorem}, {"reason", "needs K0 in Q(zeta_N) and S0 without finite places"}});
        if (theorem == "1") throw precondition_error("theorem 1 needs K0 in Q(zeta_N) and S0 without finite places");
        continue;
      }
      if (theorem == "1" && r.theorem != "main3_thm1_shape") continue;
      if (theorem == "2" && r.theorem != "main3_thm2_shape") continue;
      reports.push_back(std::move(r));
    }
  } else {
    if (theorem == "3") throw invalid_input("theorem 3 applies to prime-power levels only");
    if (want("1")) {
      if (thm1_ok) {
        reports.push_back(bounds::theorem1_bound(N, c.constants, prec));
      } else if (theorem == "1") {
        throw precondition_error("theorem 1 needs K0 in Q(zeta_N) and S0 without finite places");
      } else {
        skipped.push_back({{"theorem", "main1"}, {"reason", "needs K0 in Q(zeta_N) and S0 without finite places"}});
      }
    }
    if (want("2")) reports.push_back(bounds::theorem2_bound(c.field, N, c.constants, prec));
  }
  if (want("pipeline")) reports.push_back(bounds::pipeline_bound(c.field, M, c.constants, prec));
  if (want("lambda1")) reports.push_back(bounds::lambda_one_bound(c.field.s0, M, prec));

  json arr = json::array();
  for (auto& r : reports) {
    r.notes.push_back(trivial_note);
    if (prime_power && r.theorem.rfind("main3", 0) != 0) r.notes.push_back(routing["note"].get<std::string>());
    arr.push_back(report_json(r));
  }
  out["reports"] = arr;
  out["skipped"] = skipped;
  out["trivial_regime"] = {{"s", s_work}, {"N", M}, {"bound", trivial}};
  return {out, kExitOk};
}

// ---------------------------------------------------------------- inspect

inline json orbit_json(const modgroup::Orbit& o) {
  json pts = json::array();
  for (const auto& a : o.points) pts.push_back(point_json(a));
  return {{"rep", point_json(o.canonical_rep)}, {"size", o.points.size()}, {"ell_sum", o.ell_sum().get_str()},
          {"points", pts}};
}

inline CommandResult cmd_inspect(const Config& c, const std::string& what) {
  json out = header("inspect", c);
  out["what"] = what;
  int exit_code = kExitOk;
  if (what == "orbits" || what == "cusps" || what == "units") {
    if (!c.generators) throw invalid_input("inspect " + what + " needs generators");
    const auto g = group_of(c);
    out["group"] = {{"order", g.order()}, {"g1_order", g.g1_elements().size()}, {"minus_one_adjoined", g.minus_one_adjoined()}};
    const long nu = modgroup::nu_infty(g);
    out["nu_infty"] = nu;
    if (what == "orbits") {
      json arr = json::array();
      for (const auto& o : modgroup::orbits_on_AN(g)) arr.push_back(orbit_json(o));
      out["orbits"] = arr;
    } else if (what == "cusps") {
      json arr = json::array();
      for (const auto& cu : modgroup::cusps(g)) {
        arr.push_back({{"rep", matrix_json(cu.rep)}, {"width", cu.width}, {"is_infinity", cu.is_infinity}});
      }
      out["cusps"] = arr;
    } else {
      const auto orbits = modgroup::orbits_on_AN(g);
      const auto rows = modgroup::divisor_matrix(g);
      json mat = json::array();
      for (std::size_t i = 0; i < rows.size(); ++i) mat.push_back({{"orbit_rep", point_json(orbits[i].canonical_rep)}, {"divisor", rows[i]}});
      out["divisor_matrix"] = mat;
      const long rank = modgroup::matrix_rank(rows);
      out["rank"] = rank;
      out["expected_rank"] = nu - 1;
      out["rank_matches"] = rank == nu - 1;
      if (rank != nu - 1) exit_code = kExitCheckFailure;
      if (nu >= 3) {
        try {
          const auto rec = modgroup::select_units_from_matrix(rows, 0);
          json r{{"U", point_json(orbits[rec.u_index].canonical_rep)}, {"e_U", rec.e_u}, {"e_V", rec.e_v},
                 {"divisor", rec.divisor}};
          r["V"] = rec.v_index ? point_json(orbits[*rec.v_index].canonical_rep) : json(nullptr);
          out["selected_unit"] = r;
        } catch (const consistency_error& e) {
          out["selected_unit"] = {{"error", e.what()}};
          exit_code = kExitCheckFailure;
        }
      }
    }
  } else if (what == "siegel") {
    if (!c.inspect_point) throw invalid_input("inspect siegel needs inspect.point = [a1_num, a2_num]");
    const numtheory::TorsionPoint a(c.level, c.inspect_point->first, c.inspect_point->second);
    const auto sc = qseries::siegel_expansion(a, c.truncation_terms);
    out["point"] = point_json(a);
    out["ell"] = sc.ell.get_str();
    out["gamma"] = {{"conductor", sc.gamma.conductor()}, {"value", sc.gamma.to_string()}};
    out["dump"] = sc.series.dump();
  } else {
    throw invalid_input("inspect target must be orbits, cusps, units or siegel");
  }
  return {out, exit_code};
}

// ---------------------------------------------------------------- verify

struct Check {
  std::string suite;
  std::string name;
  bool passed = false;
  json detail;
};

inline std::string point_label(const numtheory::TorsionPoint& a) {
  return "(" + std::to_string(a.a1) + "/" + std::to_string(a.n) + "," + std::to_string(a.a2) + "/" + std::to_string(a.n) + ")";
}

inline std::vector<Check> suite_product(const Config& c) {
  const auto r = qseries::verify_full_product(c.level, c.truncation_terms);
  json d{{"trunc", r.trunc}, {"q_order", r.q_order.get_str()}, {"constant_pow_12N", r.constant.to_string()},
         {"expected_abs", r.expected_abs.get_str()}, {"sign", r.sign}};
  d["offending_exponent"] = r.offending_exponent ? json(*r.offending_exponent) : json(nullptr);
  return {{"product", "full_product_constant", r.passed, d}};
}

/// log|x| upper bound compared with k: |phi_a(k)| <= e^k at every embedding.
inline bool phi_within_ek(const qseries::CycNumber& x, long k, mp::prec_t prec) {
  if (x.is_zero()) return true;
  const mp::Real up = qseries::max_embedding_abs_upper(x, prec);
  const mp::Real ek = mp::exp(mp::Real(k, prec + 64), MPFR_RNDD);
  return up <= ek;
}

inline std::vector<Check> suite_coeff_bounds(const Config& c) {
  std::vector<Check> out;
  const long N = c.level;
  const mp::prec_t prec = c.precision_bits;
  for (const auto& a : numtheory::enumerate_AN(N)) {
    const auto sc = qseries::siegel_expansion(a, c.coeff_terms * 12 * N);
    json bad = json::array();
    for (long k = 1; k <= c.coeff_terms; ++k) {
      if (!phi_within_ek(sc.phi(k), k, prec)) bad.push_back(k);
    }
    out.push_back({"coeff-bounds", "phi_le_exp_k " + point_label(a), bad.empty(),
                   {{"terms", c.coeff_terms}, {"violations", bad}}});
  }

  const auto g = group_of(c);
  const auto orbits = modgroup::orbits_on_AN(g);
  const auto cs = modgroup::cusps(g);
  const long n6 = N * N * N * N * N * N;
  auto check_log = [&](const qseries::LogExpansion& le, const std::string& label, bool order_zero) {
    json bad = json::array();
    for (long k = 1; k <= static_cast<long>(le.lambda.size()); ++k) {
      const auto& l = le.lambda[k - 1];
      if (l.is_zero()) continue;
      const mp::Real up = qseries::max_embedding_abs_upper(l, prec);
      if (mpfr_cmp_si(up.get(), le.coefficient_bound(k)) > 0) bad.push_back(k);
    }
    out.push_back({"coeff-bounds", "lambda_bound " + label, bad.empty(),
                   {{"terms", le.lambda.size()}, {"weight", le.exponent_weight}, {"violations", bad}}});
    if (order_zero) {
      const auto first = le.first_nonzero();
      json d{{"N^6", n6}, {"searched_terms", le.lambda.size()}};
      d["first_nonzero"] = first ? json(*first) : json(nullptr);
      out.push_back({"coeff-bounds", "first_nonzero_le_N6 " + label, first && *first <= n6, d});
    }
  };
  for (const auto& o : orbits) {
    const auto le = qseries::log_expansion_of({{&o, 1}}, c.log_terms);
    const long ord = modgroup::ord_at_cusp(g, o, cs.front());
    check_log(le, "orbit " + point_label(o.canonical_rep), ord == 0);
  }
  if (static_cast<long>(cs.size()) >= 3) {
    try {
      const auto rec = modgroup::select_units(g, cs.front());
      check_log(qseries::log_expansion(g, rec, c.log_terms), "W", true);
    } catch (const consistency_error& e) {
      out.push_back({"coeff-bounds", "select_units", false, {{"error", e.what()}}});
    }
  }
  return out;
}

/// 20 samples on circles of radius 10^-N (1 - j/40), angles 2 pi j / 20.
inline std::vector<mp::Complex> default_samples(long N, mp::prec_t prec) {
  std::vector<mp::Complex> out;
  const mp::Real base = mp::div(mp::Real(1, prec), mp::pow_ui(mp::Real(10, prec), N, MPFR_RNDN), MPFR_RNDD);
  for (long j = 0; j < 20; ++j) {
    const mp::Real radius = mp::mul_q(base, numtheory::Rational(40 - j) / 40, MPFR_RNDD);
    const mp::Real theta = mp::div_si(mp::mul_si(mp::Real::pi(prec), 2 * j, MPFR_RNDN), 20, MPFR_RNDN);
    out.push_back(mp::Complex::polar(radius, theta));
  }
  return out;
}

inline std::vector<Check> suite_numeric(const Config& c) {
  std::vector<Check> out;
  const mp::prec_t prec = std::max<long>(c.precision_bits, 128);
  std::vector<mp::Complex> samples;
  if (c.numeric_samples.empty()) {
    samples = default_samples(c.level, prec);
  } else {
    for (const auto& s : c.numeric_samples) samples.push_back(qseries::parse_q(s.re, s.im, prec));
  }
  for (const auto& a : numtheory::enumerate_AN(c.level)) {
    json series_bad = json::array(), cor_bad = json::array(), log1_bad = json::array();
    mp::Real worst_log1(0, prec);
    json branches = json::array();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto r = qseries::numeric_eval(a, samples[i], prec, c.numeric_terms);
      if (!r.series_ok()) series_bad.push_back(i);
      if (!r.corollary_ok()) cor_bad.push_back(i);
      if (!r.log1_ok()) log1_bad.push_back(i);
      worst_log1 = mp::max(worst_log1, r.log1_margin);
      branches.push_back(r.branch);
    }
    const std::string label = point_label(a);
    out.push_back({"numeric", "series_vs_product " + label, series_bad.empty(),
                   {{"samples", samples.size()}, {"failing_samples", series_bad}}});
    out.push_back({"numeric", "nearby_corollary " + label, cor_bad.empty(),
                   {{"samples", samples.size()}, {"failing_samples", cor_bad}}});
    out.push_back({"numeric", "log1_margin " + label, log1_bad.empty(),
                   {{"samples", samples.size()},
                    {"failing_samples", log1_bad},
                    {"max_margin", worst_log1.decimal(20, MPFR_RNDU)},
                    {"log_N", mp::log(mp::Real(c.level, prec), MPFR_RNDN).decimal(20, MPFR_RNDN)},
                    {"branches", branches}}});
  }
  return out;
}

inline std::vector<Check> suite_divisors(const Config& c) {
  std::vector<Check> out;
  const long N = c.level;
  const auto g = group_of(c);
  long nu = 0;
  try {
    nu = modgroup::nu_infty(g);
    out.push_back({"divisors", "cusp_count_three_way", true, {{"nu_infty", nu}}});
  } catch (const consistency_error& e) {
    out.push_back({"divisors", "cusp_count_three_way", false, {{"error", e.what()}}});
    return out;
  }
  const auto orbits = modgroup::orbits_on_AN(g);
  const auto cs = modgroup::cusps(g);

  std::size_t covered = 0;
  for (const auto& o : orbits) covered += o.points.size();
  out.push_back({"divisors", "orbits_partition_AN", covered == numtheory::enumerate_AN(N).size(),
                 {{"covered", covered}, {"A_N", numtheory::an_cardinality(N)}}});

  long width_sum = 0;
  bool widths_divide = true;
  for (const auto& cu : cs) {
    width_sum += cu.width;
    widths_divide = widths_divide && N % cu.width == 0;
  }
  const long index = modgroup::sl2_order(N) / static_cast<long>(g.g1_elements().size());
  out.push_back({"divisors", "widths_divide_N", widths_divide, json::object()});
  out.push_back({"divisors", "width_sum_equals_index", width_sum == index, {{"width_sum", width_sum}, {"index", index}}});

  std::vector<modgroup::DivisorVector> rows;
  bool degree_ok = true;
  json err = nullptr;
  try {
    rows = modgroup::divisor_matrix(g);
  } catch (const consistency_error& e) {
    degree_ok = false;
    err = e.what();
  }
  out.push_back({"divisors", "divisor_degree_zero_and_bounded", degree_ok, {{"error", err}}});
  if (!degree_ok) return out;

  const long rank = modgroup::matrix_rank(rows);
  out.push_back({"divisors", "rank_equals_nu_minus_1", rank == nu - 1, {{"rank", rank}, {"nu_infty", nu}}});

  json qbad = json::array();
  json hbad = json::array();
  const mp::prec_t prec = c.precision_bits;
  const mp::Interval h_bound = mp::Interval::point(12 * N * N * N, prec) * mp::Interval::log2(prec);
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const auto ue = qseries::unit_orbit_expansion(orbits[i], 12 * N * N);
    numtheory::Rational expect(rows[i][0], cs.front().width);
    expect.canonicalize();
    if (ue.q_order != expect) qbad.push_back(point_json(orbits[i].canonical_rep));
    const auto h = qseries::algebraic_height(ue.gamma, prec);
    if (!(h.hi() <= h_bound.lo())) hbad.push_back(point_json(orbits[i].canonical_rep));
  }
  out.push_back({"divisors", "q_order_matches_ord_over_width", qbad.empty(), {{"mismatches", qbad}}});
  out.push_back({"divisors", "gamma_height_le_12N3_log2", hbad.empty(), {{"violations", hbad}}});

  if (nu >= 3) {
    try {
      const auto rec = modgroup::select_units(g, cs.front());
      out.push_back({"divisors", "select_units", true, {{"e_U", rec.e_u}, {"e_V", rec.e_v}, {"divisor", rec.divisor}}});
    } catch (const consistency_error& e) {
      out.push_back({"divisors", "select_units", false, {{"error", e.what()}}});
    }
  }
  return out;
}

inline std::vector<Check> suite_bounds_oracle(const Config& c) {
  std::vector<Check> out;
  const mp::prec_t prec = c.precision_bits;
  // Upward rounding: the value at prec must not fall below the value at 4 prec and must stay close.
  auto self_check = [&](const std::string& name, const std::function<mp::Interval(mp::prec_t)>& f) {
    const mp::Interval lo_p = f(prec);
    const mp::Interval hi_p = f(4 * prec);
    const bool not_below = lo_p.hi() >= hi_p.lo();
    const mp::Real diff = mp::abs(mp::sub(lo_p.hi(), hi_p.hi(), MPFR_RNDU), MPFR_RNDU);
    const mp::Real tol = mp::mul(mp::abs(hi_p.hi(), MPFR_RNDU), mp::exp2_si(-40, 4 * prec), MPFR_RNDU);
    out.push_back({"bounds-oracle", "upward_rounding " + name, not_below && diff <= tol,
                   {{"value", lo_p.hi().decimal(30, MPFR_RNDU)}}});
  };
  const long N = c.level;
  const long M = numtheory::is_prime_power(N) ? numtheory::raise_level(N) : N;
  if (c.field.k0_in_cyclotomic && c.field.infinite_only()) {
    self_check("theorem1", [&](mp::prec_t p) { return bounds::theorem1_bound(M, c.constants, p).log_bound; });
  }
  self_check("theorem2", [&](mp::prec_t p) { return bounds::theorem2_bound(c.field, M, c.constants, p).log_bound; });
  self_check("pipeline", [&](mp::prec_t p) { return bounds::pipeline_bound(c.field, M, c.constants, p).log_bound; });
  self_check("lambda_one", [&](mp::prec_t p) { return bounds::lambda_one_bound(c.field.s0, M, p).log_bound; });

  if (c.oracle_file) {
    const json data = load_oracle_file(*c.oracle_file);
    const auto cmp = compare_oracle_corpus(data.at("corpus"), prec, 1e-12);
    json bad = json::array();
    for (const auto& x : cmp) {
      if (!x.not_below || !x.within_tol) bad.push_back(x.label);
    }
    out.push_back({"bounds-oracle", "reference_corpus", bad.empty(), {{"compared", cmp.size()}, {"failures", bad}}});
  }
  return out;
}

inline CommandResult cmd_verify(const Config& c, const std::string& suite) {
  static const std::vector<std::string> kSuites{"product", "coeff-bounds", "numeric", "divisors", "bounds-oracle"};
  std::vector<std::string> selected;
  if (suite == "all") {
    selected = kSuites;
  } else if (std::find(kSuites.begin(), kSuites.end(), suite) != kSuites.end()) {
    selected = {suite};
  } else {
    throw invalid_input("--suite must be all, product, coeff-bounds, numeric, divisors or bounds-oracle");
  }
  auto run = [&c](const std::string& s) -> std::vector<Check> {
    if (s == "product") return suite_product(c);
    if (s == "coeff-bounds") return suite_coeff_bounds(c);
    if (s == "numeric") return suite_numeric(c);
    if (s == "divisors") return suite_divisors(c);
    return suite_bounds_oracle(c);
  };
  std::vector<std::future<std::vector<Check>>> futures;
  for (const auto& s : selected) futures.push_back(std::async(std::launch::async, run, s));

  json out = header("verify", c);
  out["suite"] = suite;
  json checks = json::array();
  long failed = 0, total = 0;
  for (auto& f : futures) {
    for (const auto& ch : f.get()) {
      ++total;
      if (!ch.passed) ++failed;
      checks.push_back({{"suite", ch.suite}, {"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    }
  }
  out["checks"] = checks;
  out["summary"] = {{"total", total}, {"failed", failed}};
  return {out, failed == 0 ? kExitOk : kExitCheckFailure};
}

}  // namespace jbound::cli
