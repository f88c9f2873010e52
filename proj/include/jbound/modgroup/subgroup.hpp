#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "jbound/errors.hpp"
#include "jbound/modgroup/gl2.hpp"

namespace jbound::modgroup {

inline constexpr long kDefaultGroupCap = 60;

/// A subgroup G of GL2(Z/nZ) containing -1, with its determinant image and
/// G1 = G cap SL2.  Immutable once built by subgroup_closure.
class SubgroupData {
 public:
  long n() const { return n_; }
  const std::vector<GL2Element>& generators() const { return generators_; }
  const std::vector<GL2Element>& elements() const { return elements_; }
  const std::vector<long>& det_image() const { return det_image_; }
  const std::vector<GL2Element>& g1_elements() const { return g1_elements_; }
  /// True when -1 was not generated by the user's matrices and had to be adjoined.
  bool minus_one_adjoined() const { return minus_one_adjoined_; }

  bool contains(const GL2Element& g) const { return member_[g.index()]; }
  bool g1_contains(const GL2Element& g) const { return member_[g.index()] && g.det() == 1; }
  std::size_t order() const { return elements_.size(); }

 private:
  friend SubgroupData subgroup_closure(long, std::span<const GL2Element>, long);
  long n_ = 0;
  std::vector<GL2Element> generators_;
  std::vector<GL2Element> elements_;
  std::vector<long> det_image_;
  std::vector<GL2Element> g1_elements_;
  std::vector<bool> member_;
  bool minus_one_adjoined_ = false;
};

/// Closure of <generators, -1> by breadth-first right multiplication.
inline SubgroupData subgroup_closure(long n, std::span<const GL2Element> generators,
                                     long cap = kDefaultGroupCap) {
  if (n < 2) throw invalid_input("subgroup_closure: level must be >= 2");
  if (n > cap) {
    throw resource_error("subgroup_closure: level " + std::to_string(n) + " exceeds group cap " +
                         std::to_string(cap));
  }
  for (const auto& g : generators) {
    if (g.n != n) throw invalid_input("subgroup_closure: generator has the wrong level");
    if (!g.invertible()) throw invalid_input("subgroup_closure: generator is not invertible mod n");
  }

  SubgroupData out;
  out.n_ = n;
  out.generators_.assign(generators.begin(), generators.end());
  out.member_.assign(static_cast<std::size_t>(n * n * n * n), false);

  std::vector<GL2Element> gens(generators.begin(), generators.end());
  const GL2Element minus = GL2Element::minus_identity(n);
  gens.push_back(minus);

  std::vector<GL2Element> queue{GL2Element::identity(n)};
  out.member_[queue.front().index()] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const GL2Element x = queue[head];
    for (const auto& g : gens) {
      GL2Element y = x * g;
      if (!out.member_[y.index()]) {
        out.member_[y.index()] = true;
        queue.push_back(y);
      }
    }
  }

  // Was -1 already in the group generated by the user's matrices alone?
  if (n > 2) {
    std::vector<bool> seen(out.member_.size(), false);
    std::vector<GL2Element> q2{GL2Element::identity(n)};
    seen[q2.front().index()] = true;
    for (std::size_t head = 0; head < q2.size() && !seen[minus.index()]; ++head) {
      for (const auto& g : generators) {
        GL2Element y = q2[head] * g;
        if (!seen[y.index()]) {
          seen[y.index()] = true;
          q2.push_back(y);
        }
      }
    }
    out.minus_one_adjoined_ = !seen[minus.index()];
  }

  std::sort(queue.begin(), queue.end());
  out.elements_ = std::move(queue);
  std::vector<bool> dets(static_cast<std::size_t>(n), false);
  for (const auto& g : out.elements_) {
    dets[g.det()] = true;
    if (g.det() == 1) out.g1_elements_.push_back(g);
  }
  for (long u = 0; u < n; ++u) {
    if (dets[u]) out.det_image_.push_back(u);
  }
  return out;
}

inline SubgroupData subgroup_closure(long n, const std::vector<GL2Element>& generators,
                                     long cap = kDefaultGroupCap) {
  return subgroup_closure(n, std::span<const GL2Element>(generators), cap);
}

/// Generators for the subgroups used throughout the tests and the CLI battery.
namespace battery {

inline std::vector<GL2Element> plus_minus_one(long) { return {}; }

/// Upper triangular matrices (the image of Gamma_0(n)).
inline std::vector<GL2Element> borel(long n) {
  std::vector<GL2Element> gens{GL2Element::translation(n)};
  for (long u : numtheory::units_mod(n)) {
    gens.emplace_back(n, u, 0, 0, 1);
    gens.emplace_back(n, 1, 0, 0, u);
  }
  return gens;
}

/// Diagonal matrices (split Cartan).
inline std::vector<GL2Element> split_cartan(long n) {
  std::vector<GL2Element> gens;
  for (long u : numtheory::units_mod(n)) {
    gens.emplace_back(n, u, 0, 0, 1);
    gens.emplace_back(n, 1, 0, 0, u);
  }
  return gens;
}

inline std::vector<GL2Element> full_sl2(long n) {
  return {GL2Element::translation(n), GL2Element(n, 0, -1, 1, 0)};
}

inline std::vector<GL2Element> full_gl2(long n) {
  auto gens = full_sl2(n);
  for (long u : numtheory::units_mod(n)) gens.emplace_back(n, u, 0, 0, 1);
  return gens;
}

}  // namespace battery

}  // namespace jbound::modgroup
