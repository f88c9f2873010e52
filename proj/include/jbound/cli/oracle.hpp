#pragma once

// Comparison of the bound formulas against a reference corpus produced by an
// independent high-precision script (tests/oracle/bounds_oracle.py).

#include <fstream>
#include <string>
#include <vector>

#include "jbound/bounds/formulas.hpp"
#include "jbound/cli/config.hpp"

namespace jbound::cli {

struct OracleComparison {
  std::string label;  // "<index>:<kind>:<key>"
  mp::Real ours;      // upper end of our enclosure
  mp::Real reference; // reference, rounded down
  mp::Real rel_diff;  // |ours - ref| / |ref|
  bool not_below = false;
  bool within_tol = false;
};

inline bounds::FieldData oracle_field(const json& f) {
  bounds::FieldData field;
  field.d0 = f.at("d0").get<long>();
  field.disc_abs = bounds::Integer(f.at("disc_abs").get<std::string>());
  field.s0 = f.at("s0").get<long>();
  for (const auto& q : f.at("finite_place_norms")) field.finite_place_norms.push_back(q.get<long>());
  field.p = f.at("p").get<long>();
  return field;
}

inline bounds::Constants oracle_constants(const json& entry) {
  bounds::Constants c;
  c.preset = "custom";
  if (entry.contains("C")) c.C_baker = entry["C"].get<std::string>();
  return c;
}

/// Evaluates one corpus entry; returns (key, our log-value enclosure) pairs.
inline std::vector<std::pair<std::string, mp::Interval>> evaluate_oracle_entry(const json& e, mp::prec_t prec) {
  const std::string kind = e.at("kind").get<std::string>();
  std::vector<std::pair<std::string, mp::Interval>> out;
  if (kind == "theorem1") {
    out.emplace_back("log_bound", bounds::theorem1_bound(e.at("N").get<long>(), oracle_constants(e), prec).log_bound);
  } else if (kind == "theorem2") {
    const auto field = oracle_field(e.at("field"));
    const long N = e.at("N").get<long>();
    out.emplace_back("log_bound", bounds::theorem2_bound(field, N, oracle_constants(e), prec).log_bound);
    out.emplace_back("log_delta", bounds::log_delta(field, N, prec));
  } else if (kind == "theorem3") {
    const auto r = bounds::theorem3_bound(oracle_field(e.at("field")), e.at("N").get<long>(), oracle_constants(e), prec);
    if (r.front().level != e.at("M").get<long>()) throw consistency_error("raised level differs from reference");
    out.emplace_back("log_bound_thm1_shape", r[0].log_bound);
    out.emplace_back("log_bound_thm2_shape", r[1].log_bound);
  } else if (kind == "pipeline") {
    const mp::Interval log_rs = mp::log(mp::Interval::from_decimal(e.at("RS").get<std::string>(), prec));
    const auto r = bounds::pipeline_bound(e.at("d").get<long>(), e.at("s").get<long>(), e.at("N").get<long>(), log_rs,
                                          e.at("p").get<long>(), oracle_constants(e), prec);
    out.emplace_back("log_bound", r.log_bound);
    for (const char* key : {"log_alpha", "log_beta", "log_C1", "log_C2", "log_upsilon", "log_theta0", "log_theta_prod"}) {
      out.emplace_back(key, r.entry(key));
    }
  } else if (kind == "lambda_one") {
    out.emplace_back("log_bound", bounds::lambda_one_bound(e.at("s0").get<long>(), e.at("N").get<long>(), prec).log_bound);
  } else {
    throw invalid_input("unknown oracle entry kind '" + kind + "'");
  }
  return out;
}

/// Compares every value of every corpus entry.  `rel_tol` is relative in log space.
inline std::vector<OracleComparison> compare_oracle_corpus(const json& corpus, mp::prec_t prec, double rel_tol) {
  std::vector<OracleComparison> out;
  std::size_t index = 0;
  for (const auto& e : corpus) {
    const auto values = evaluate_oracle_entry(e, prec);
    for (const auto& [key, ours] : values) {
      const std::string ref_str = e.at("expected").at(key).get<std::string>();
      OracleComparison c{std::to_string(index) + ":" + e.at("kind").get<std::string>() + ":" + key,
                         ours.hi(), mp::Real::from_string(ref_str, prec, MPFR_RNDD), mp::Real(prec), false, false};
      c.not_below = c.ours >= c.reference;
      const mp::Real diff = mp::abs(mp::sub(c.ours, c.reference, MPFR_RNDU), MPFR_RNDU);
      c.rel_diff = mp::div(diff, mp::abs(c.reference, MPFR_RNDD), MPFR_RNDU);
      c.within_tol = mpfr_cmp_d(c.rel_diff.get(), rel_tol) <= 0;
      out.push_back(std::move(c));
    }
    ++index;
  }
  return out;
}

inline json load_oracle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot read oracle file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw invalid_input(std::string("oracle file is not valid JSON: ") + e.what());
  }
}

}  // namespace jbound::cli
