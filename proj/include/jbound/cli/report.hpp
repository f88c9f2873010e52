#pragma once

#include <string>

#include "jbound/bounds/types.hpp"
#include "jbound/cli/config.hpp"
#include "jbound/modgroup/gl2.hpp"
#include "jbound/numtheory/torsion.hpp"

namespace jbound::cli {

inline constexpr int kDecimalDigits = 30;

/// A natural-log value: upper end in decimal (ln and log10, rounded up) and as an exact hex payload.
inline json log_value_json(const mp::Interval& ln) {
  const mp::Interval l10 = mp::to_log10(ln);
  return {{"ln_upper", ln.hi().decimal(kDecimalDigits, MPFR_RNDU)},
          {"log10_upper", l10.hi().decimal(kDecimalDigits, MPFR_RNDU)},
          {"ln_upper_hex", ln.hi().hex()}};
}

/// A plain (non-log) certified upper value.
inline json value_json(const mp::Interval& v) {
  return {{"upper", v.hi().decimal(kDecimalDigits, MPFR_RNDU)}, {"upper_hex", v.hi().hex()}};
}

inline json report_json(const bounds::BoundReport& r) {
  json j;
  j["theorem"] = r.theorem;
  j["level"] = r.level;
  j["log_bound"] = log_value_json(r.log_bound);
  json breakdown = json::object();
  for (const auto& e : r.breakdown) breakdown[e.key] = log_value_json(e.value);
  j["breakdown"] = breakdown;
  json inputs = json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  j["inputs"] = inputs;
  j["notes"] = r.notes;
  j["warnings"] = r.warnings;
  return j;
}

inline json point_json(const numtheory::TorsionPoint& a) { return json::array({a.a1, a.a2}); }

inline json matrix_json(const modgroup::GL2Element& g) { return json::array({json::array({g.a, g.b}), json::array({g.c, g.d})}); }

inline json header(const std::string& command, const Config& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "jbound";
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["config"] = config_echo(c);
  if (c.constants.structural()) j["banner"] = bounds::kStructuralBanner;
  return j;
}

}  // namespace jbound::cli
