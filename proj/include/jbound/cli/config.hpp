#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "jbound/bounds/types.hpp"
#include "jbound/errors.hpp"
#include "jbound/modgroup/gl2.hpp"
#include "jbound/modgroup/subgroup.hpp"

namespace jbound::cli {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct NumericSample {
  std::string re;
  std::string im;
};

struct Config {
  long level = 0;
  std::optional<std::vector<modgroup::GL2Element>> generators;
  bool attest_nu_infty = false;  // caller vouches for nu_infty >= 3 when no generators are given
  bounds::FieldData field;
  bounds::Constants constants;
  long precision_bits = 256;
  long truncation_terms = 0;  // units 1/(12N^2); 0 means 12N^2
  long group_cap = modgroup::kDefaultGroupCap;
  std::optional<std::pair<long, long>> inspect_point;
  std::vector<NumericSample> numeric_samples;
  long coeff_terms = 300;
  long log_terms = 200;
  long numeric_terms = 40;
  std::optional<std::string> oracle_file;
};

namespace detail {

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw invalid_input(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw invalid_input("unknown key '" + key + "' in " + where);
  }
}

inline long get_long(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw invalid_input(what + " must be an integer");
  return j.get<long>();
}

inline bool get_bool(const json& j, const std::string& what) {
  if (!j.is_boolean()) throw invalid_input(what + " must be true or false");
  return j.get<bool>();
}

/// Decimal constants may be given as JSON numbers or strings; strings keep exact decimals.
inline std::string get_decimal(const json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long>());
  if (j.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return os.str();
  }
  throw invalid_input(what + " must be a number or a decimal string");
}

inline bounds::Integer get_integer(const json& j, const std::string& what) {
  if (j.is_number_integer()) return bounds::Integer(std::to_string(j.get<long>()));
  if (j.is_string()) {
    bounds::Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw invalid_input(what + " is not an integer string");
    return z;
  }
  throw invalid_input(what + " must be an integer or an integer string");
}

}  // namespace detail

inline Config parse_config(const json& j) {
  using detail::get_bool;
  using detail::get_long;
  detail::reject_unknown(j, {"schema_version", "level", "generators", "attest_nu_infty_ge_3", "field", "constants",
                             "options", "inspect", "verify"},
                         "config");
  Config c;
  if (j.contains("schema_version") && get_long(j["schema_version"], "schema_version") != kSchemaVersion) {
    throw invalid_input("unsupported schema_version");
  }
  if (!j.contains("level")) throw invalid_input("config.level is required");
  c.level = get_long(j["level"], "level");
  if (c.level < 2) throw invalid_input("level must be >= 2");

  if (j.contains("generators")) {
    const json& g = j["generators"];
    if (!g.is_array()) throw invalid_input("generators must be a list of 2x2 integer matrices");
    std::vector<modgroup::GL2Element> gens;
    for (const auto& m : g) {
      if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
          m[1].size() != 2) {
        throw invalid_input("each generator must be [[a, b], [c, d]]");
      }
      gens.emplace_back(c.level, get_long(m[0][0], "generator entry"), get_long(m[0][1], "generator entry"),
                        get_long(m[1][0], "generator entry"), get_long(m[1][1], "generator entry"));
    }
    c.generators = std::move(gens);
  }
  if (j.contains("attest_nu_infty_ge_3")) c.attest_nu_infty = get_bool(j["attest_nu_infty_ge_3"], "attest_nu_infty_ge_3");

  if (j.contains("field")) {
    const json& f = j["field"];
    detail::reject_unknown(f, {"d0", "disc_abs", "s0", "finite_place_norms", "p", "k0_in_cyclotomic"}, "field");
    if (f.contains("d0")) c.field.d0 = get_long(f["d0"], "field.d0");
    if (f.contains("disc_abs")) c.field.disc_abs = detail::get_integer(f["disc_abs"], "field.disc_abs");
    if (f.contains("s0")) c.field.s0 = get_long(f["s0"], "field.s0");
    if (f.contains("finite_place_norms")) {
      if (!f["finite_place_norms"].is_array()) throw invalid_input("field.finite_place_norms must be a list");
      for (const auto& q : f["finite_place_norms"]) c.field.finite_place_norms.push_back(get_long(q, "place norm"));
    }
    if (f.contains("p")) c.field.p = get_long(f["p"], "field.p");
    // a degree-one K0 is Q, which always lies in Q(zeta_N)
    c.field.k0_in_cyclotomic = f.contains("k0_in_cyclotomic")
                                   ? get_bool(f["k0_in_cyclotomic"], "field.k0_in_cyclotomic")
                                   : c.field.d0 == 1;
  } else {
    c.field.k0_in_cyclotomic = true;
  }
  c.field.validate();

  if (j.contains("constants")) {
    const json& k = j["constants"];
    detail::reject_unknown(k, {"preset", "C_baker", "c_siegel", "c_hp"}, "constants");
    if (k.contains("preset")) {
      if (!k["preset"].is_string()) throw invalid_input("constants.preset must be a string");
      c.constants.preset = k["preset"].get<std::string>();
    }
    for (const char* name : {"C_baker", "c_siegel", "c_hp"}) {
      if (!k.contains(name)) continue;
      const std::string v = detail::get_decimal(k[name], std::string("constants.") + name);
      if (std::string(name) == "C_baker") c.constants.C_baker = v;
      if (std::string(name) == "c_siegel") c.constants.c_siegel = v;
      if (std::string(name) == "c_hp") c.constants.c_hp = v;
    }
  }
  c.constants.validate();

  if (j.contains("options")) {
    const json& o = j["options"];
    detail::reject_unknown(o, {"precision_bits", "truncation_terms", "group_cap"}, "options");
    if (o.contains("precision_bits")) c.precision_bits = get_long(o["precision_bits"], "options.precision_bits");
    if (o.contains("truncation_terms")) c.truncation_terms = get_long(o["truncation_terms"], "options.truncation_terms");
    if (o.contains("group_cap")) c.group_cap = get_long(o["group_cap"], "options.group_cap");
  }
  if (c.truncation_terms == 0) c.truncation_terms = 12 * c.level * c.level;

  if (j.contains("inspect")) {
    const json& i = j["inspect"];
    detail::reject_unknown(i, {"point"}, "inspect");
    if (i.contains("point")) {
      const json& p = i["point"];
      if (!p.is_array() || p.size() != 2) throw invalid_input("inspect.point must be [a1_num, a2_num]");
      c.inspect_point = std::make_pair(get_long(p[0], "inspect.point"), get_long(p[1], "inspect.point"));
    }
  }
  if (j.contains("verify")) {
    const json& v = j["verify"];
    detail::reject_unknown(v, {"numeric_samples", "coeff_terms", "log_terms", "numeric_terms", "oracle_file"},
                           "verify");
    if (v.contains("numeric_samples")) {
      if (!v["numeric_samples"].is_array()) throw invalid_input("verify.numeric_samples must be a list");
      for (const auto& s : v["numeric_samples"]) {
        detail::reject_unknown(s, {"re", "im"}, "numeric sample");
        NumericSample ns{s.contains("re") ? detail::get_decimal(s["re"], "sample.re") : "0",
                         s.contains("im") ? detail::get_decimal(s["im"], "sample.im") : "0"};
        c.numeric_samples.push_back(ns);
      }
    }
    if (v.contains("coeff_terms")) c.coeff_terms = get_long(v["coeff_terms"], "verify.coeff_terms");
    if (v.contains("log_terms")) c.log_terms = get_long(v["log_terms"], "verify.log_terms");
    if (v.contains("numeric_terms")) c.numeric_terms = get_long(v["numeric_terms"], "verify.numeric_terms");
    if (v.contains("oracle_file")) {
      if (!v["oracle_file"].is_string()) throw invalid_input("verify.oracle_file must be a path string");
      c.oracle_file = v["oracle_file"].get<std::string>();
    }
  }
  return c;
}

inline void apply_overrides(Config& c, std::optional<long> precision, std::optional<long> terms) {
  if (precision) c.precision_bits = *precision;
  if (terms) c.truncation_terms = *terms;
  if (c.precision_bits < 64 || c.precision_bits > 65536) throw invalid_input("precision must be in [64, 65536] bits");
  if (c.truncation_terms < 1) throw invalid_input("truncation order must be >= 1");
  if (c.group_cap < 2) throw invalid_input("group_cap must be >= 2");
  if (c.coeff_terms < 1 || c.log_terms < 1 || c.numeric_terms < 1) throw invalid_input("term counts must be >= 1");
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw invalid_input(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

/// Normalized echo of every field that influences a run.
inline json config_echo(const Config& c) {
  json j;
  j["level"] = c.level;
  if (c.generators) {
    json gens = json::array();
    for (const auto& g : *c.generators) gens.push_back({{g.a, g.b}, {g.c, g.d}});
    j["generators"] = gens;
  }
  j["attest_nu_infty_ge_3"] = c.attest_nu_infty;
  json norms = json::array();
  for (long q : c.field.finite_place_norms) norms.push_back(q);
  j["field"] = {{"d0", c.field.d0},
                {"disc_abs", c.field.disc_abs.get_str()},
                {"s0", c.field.s0},
                {"finite_place_norms", norms},
                {"p", c.field.p},
                {"k0_in_cyclotomic", c.field.k0_in_cyclotomic}};
  j["constants"] = {{"preset", c.constants.preset},
                    {"C_baker", c.constants.C_baker},
                    {"c_siegel", c.constants.c_siegel},
                    {"c_hp", c.constants.c_hp}};
  j["options"] = {{"precision_bits", c.precision_bits},
                  {"truncation_terms", c.truncation_terms},
                  {"group_cap", c.group_cap}};
  if (c.inspect_point) j["inspect"] = {{"point", {c.inspect_point->first, c.inspect_point->second}}};
  json samples = json::array();
  for (const auto& s : c.numeric_samples) samples.push_back({{"re", s.re}, {"im", s.im}});
  j["verify"] = {{"numeric_samples", samples},
                 {"coeff_terms", c.coeff_terms},
                 {"log_terms", c.log_terms},
                 {"numeric_terms", c.numeric_terms}};
  if (c.oracle_file) j["verify"]["oracle_file"] = *c.oracle_file;
  return j;
}

}  // namespace jbound::cli
