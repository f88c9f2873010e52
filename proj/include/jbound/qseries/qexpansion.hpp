#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "jbound/errors.hpp"
#include "jbound/qseries/cyclotomic.hpp"

namespace jbound::qseries {

/// Truncated series sum_e c_e q^{e/D} with D = 12 n^2.  Coefficients at
/// exponents <= trunc() are exact; nothing beyond is stored.
class QExpansion {
 public:
  QExpansion(long level, long trunc) : level_(level), denom_(12 * level * level), trunc_(trunc) {
    if (level < 1) throw invalid_input("QExpansion: level must be positive");
  }

  static QExpansion one(long level, long trunc) {
    QExpansion s(level, trunc);
    if (trunc >= 0) s.coeffs_.emplace(0, CycNumber::from_integer(1));
    return s;
  }

  long level() const { return level_; }
  long exponent_denominator() const { return denom_; }
  long trunc() const { return trunc_; }
  const std::map<long, CycNumber>& terms() const { return coeffs_; }

  /// Least exponent with a nonzero coefficient, or trunc + 1 when none is known.
  long valuation() const { return coeffs_.empty() ? trunc_ + 1 : coeffs_.begin()->first; }

  CycNumber coefficient(long e) const {
    if (e > trunc_) throw invalid_input("coefficient requested beyond the truncation order");
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? CycNumber() : it->second;
  }

  void set(long e, const CycNumber& c) {
    if (e > trunc_) return;
    if (c.is_zero()) {
      coeffs_.erase(e);
    } else {
      coeffs_.insert_or_assign(e, c);
    }
  }
  void add_to(long e, const CycNumber& c) {
    if (e > trunc_ || c.is_zero()) return;
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
      coeffs_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }

  /// q^{shift / D} times this series.
  QExpansion shifted(long shift) const {
    QExpansion out(level_, trunc_ + shift);
    for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e + shift, c);
    return out;
  }

  QExpansion scaled(const CycNumber& s) const {
    QExpansion out(level_, trunc_);
    for (const auto& [e, c] : coeffs_) out.set(e, c * s);
    return out;
  }

  QExpansion truncated(long k) const {
    QExpansion out(level_, std::min(k, trunc_));
    for (const auto& [e, c] : coeffs_) {
      if (e <= out.trunc_) out.coeffs_.emplace(e, c);
    }
    return out;
  }

  friend QExpansion operator+(const QExpansion& f, const QExpansion& g) {
    check_compatible(f, g);
    QExpansion out = f.truncated(std::min(f.trunc_, g.trunc_));
    for (const auto& [e, c] : g.coeffs_) out.add_to(e, c);
    return out;
  }
  friend QExpansion operator-(const QExpansion& f, const QExpansion& g) {
    check_compatible(f, g);
    QExpansion out = f.truncated(std::min(f.trunc_, g.trunc_));
    for (const auto& [e, c] : g.coeffs_) out.add_to(e, -c);
    return out;
  }

  /// Exact through min(Kf + v(g), Kg + v(f)).
  friend QExpansion operator*(const QExpansion& f, const QExpansion& g) {
    check_compatible(f, g);
    const long k = std::min(f.trunc_ + g.valuation(), g.trunc_ + f.valuation());
    QExpansion out(f.level_, k);
    for (const auto& [e1, c1] : f.coeffs_) {
      if (e1 + g.valuation() > k) break;
      for (const auto& [e2, c2] : g.coeffs_) {
        if (e1 + e2 > k) break;
        out.add_to(e1 + e2, c1 * c2);
      }
    }
    return out;
  }

  QExpansion pow(unsigned long e) const {
    QExpansion result = one(level_, trunc_);
    QExpansion base = *this;
    while (e > 0) {
      if (e & 1UL) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  /// Exact equality of truncation order and all stored coefficients.
  friend bool operator==(const QExpansion& f, const QExpansion& g) {
    if (f.level_ != g.level_ || f.trunc_ != g.trunc_ || f.coeffs_.size() != g.coeffs_.size()) return false;
    auto it = g.coeffs_.begin();
    for (const auto& [e, c] : f.coeffs_) {
      if (it->first != e || !(it->second == c)) return false;
      ++it;
    }
    return true;
  }

  /// Text form: a header "# level <n> trunc <num>/<den> conductor <L>" followed by
  /// one line "<num>/<den> : <polynomial in z>" per nonzero coefficient in
  /// increasing exponent order, with all coefficients written in conductor L.
  std::string dump() const {
    const long L = common_conductor();
    std::ostringstream os;
    os << "# level " << level_ << " trunc " << reduced(trunc_) << " conductor " << L << '\n';
    for (const auto& [e, c] : coeffs_) os << reduced(e) << " : " << c.lift(L).to_string() << '\n';
    return os.str();
  }

  static QExpansion parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw invalid_input("empty expansion dump");
    std::istringstream header(line);
    std::string hash, kw_level, kw_trunc, trunc_str, kw_cond;
    long level = 0, L = 0;
    if (!(header >> hash >> kw_level >> level >> kw_trunc >> trunc_str >> kw_cond >> L) || hash != "#" ||
        kw_level != "level" || kw_trunc != "trunc" || kw_cond != "conductor" || level < 1) {
      throw invalid_input("malformed expansion header: '" + line + "'");
    }
    const long denom = 12 * level * level;
    QExpansion out(level, exponent_from(trunc_str, denom));
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto colon = line.find(" : ");
      if (colon == std::string::npos) throw invalid_input("malformed expansion line: '" + line + "'");
      const long e = exponent_from(line.substr(0, colon), denom);
      if (e > out.trunc_) throw invalid_input("coefficient beyond the declared truncation");
      out.set(e, CycNumber::parse(line.substr(colon + 3), L));
    }
    return out;
  }

 private:
  static void check_compatible(const QExpansion& f, const QExpansion& g) {
    if (f.level_ != g.level_) throw invalid_input("QExpansion: level mismatch");
  }

  long common_conductor() const {
    long L = 1;
    for (const auto& [e, c] : coeffs_) L = std::lcm(L, c.conductor());
    return L;
  }

  std::string reduced(long e) const {
    Rational r(e, denom_);
    r.canonicalize();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
  }

  static long exponent_from(const std::string& s, long denom) {
    Rational r;
    std::string t;
    for (char ch : s) {
      if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    }
    if (t.empty() || r.set_str(t, 10) != 0 || r.get_den() == 0) {
      throw invalid_input("malformed exponent '" + s + "'");
    }
    r.canonicalize();
    Rational scaled = r * denom;
    scaled.canonicalize();
    if (scaled.get_den() != 1) throw invalid_input("exponent '" + s + "' is not a multiple of 1/" + std::to_string(denom));
    return scaled.get_num().get_si();
  }

  long level_;
  long denom_;
  long trunc_;
  std::map<long, CycNumber> coeffs_;
};

}  // namespace jbound::qseries
