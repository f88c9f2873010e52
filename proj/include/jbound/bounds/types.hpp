#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jbound/errors.hpp"
#include "jbound/mp/interval.hpp"
#include "jbound/numtheory/arith.hpp"

namespace jbound::bounds {

using mp::Interval;
using numtheory::Integer;

/// Data of the base field K0 and the finite part of S0.
struct FieldData {
  long d0 = 1;
  Integer disc_abs = 1;                  // |D0|
  long s0 = 1;                           // |S0|, infinite places included
  std::vector<long> finite_place_norms;  // absolute norms of the finite places of S0
  long p = 1;                            // largest rational prime below S0, 1 if none
  bool k0_in_cyclotomic = false;         // caller's attestation that K0 lies in Q(zeta_N)

  /// Throws invalid_input when the fields are inconsistent.
  void validate() const {
    if (d0 < 1) throw invalid_input("field.d0 must be >= 1");
    if (disc_abs < 1) throw invalid_input("field.disc_abs must be >= 1");
    if (s0 < 1) throw invalid_input("field.s0 must be >= 1");
    if (static_cast<long>(finite_place_norms.size()) > s0) {
      throw invalid_input("field.s0 is smaller than the number of finite places listed");
    }
    if (p < 1) throw invalid_input("field.p must be >= 1");
    long max_prime = 1;
    for (long q : finite_place_norms) {
      if (!numtheory::is_prime_power(q)) {
        throw invalid_input("finite place norm " + std::to_string(q) + " is not a prime power");
      }
      max_prime = std::max(max_prime, numtheory::factorize(q).front().prime);
    }
    if (p != max_prime) {
      throw invalid_input("field.p must equal the largest prime below the finite places (" +
                          std::to_string(max_prime) + ")");
    }
  }

  bool infinite_only() const { return finite_place_norms.empty(); }
};

/// User-supplied constants as decimal strings; enclosed exactly by intervals.
struct Constants {
  std::string preset = "unit";  // "unit" | "custom"
  std::string C_baker = "1";
  std::string c_siegel = "1";
  std::string c_hp = "1";

  bool structural() const { return preset == "unit"; }

  Interval interval(const std::string& value, const char* name, mp::prec_t prec) const {
    Interval v(prec);
    try {
      v = Interval::from_decimal(value, prec);
    } catch (const invalid_input&) {
      throw invalid_input(std::string("constant ") + name + " is not a decimal number: '" + value + "'");
    }
    if (!v.positive()) throw invalid_input(std::string("constant ") + name + " must be positive");
    return v;
  }
  Interval C(mp::prec_t prec) const { return interval(C_baker, "C_baker", prec); }
  Interval siegel(mp::prec_t prec) const { return interval(c_siegel, "c_siegel", prec); }
  Interval hp(mp::prec_t prec) const { return interval(c_hp, "c_hp", prec); }

  void validate() const {
    if (preset != "unit" && preset != "custom") throw invalid_input("constants.preset must be 'unit' or 'custom'");
    C(64);
    siegel(64);
    hp(64);
  }
};

inline constexpr const char* kStructuralBanner = "structural — not a validity claim";

/// Working data of K = K0(zeta_N) and S.
struct ExtensionData {
  long d = 1;
  long s = 2;
  long r = 1;
  long d_prime = 3;
  bool s_lifted = false;        // s = 1 raised to 2
  Interval zeta;                // 1201 (log d' / log log d')^3
  Interval log_disc_upper;      // log |D| <= d0 N log N + phi(N) log |D0|
  Interval log_norm_product;    // log prod log N_{K/Q}(v) upper estimate
};

struct BoundEntry {
  std::string key;
  Interval value;  // natural log unless the key says otherwise
};

struct BoundReport {
  std::string theorem;  // main1 | main2 | main3 | pipeline | lambda_one | trivial_regime
  long level = 0;       // level the formula was evaluated at
  Interval log_bound;   // natural log of the bound on h(P)
  std::vector<BoundEntry> breakdown;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;

  const Interval& entry(const std::string& key) const {
    for (const auto& e : breakdown) {
      if (e.key == key) return e.value;
    }
    throw invalid_input("no breakdown entry '" + key + "'");
  }
};

}  // namespace jbound::bounds
