#pragma once

#include <algorithm>
#include <vector>

#include "deon/obligations.hpp"
#include "support.hpp"

namespace deon::testing {

/// Every subset of U′ passing the hard check, in canonical order.
inline std::vector<ModelSet> derive_unpruned(const ObligationSystem& sys, const QualityRelation& q,
                                             const ObligationOptions& options = {}) {
  std::vector<ModelSet> out;
  for (const ModelSet& X : powerset(sys.restriction()))
    if (check_hard_obligation(X, sys, q, options).accepted) out.push_back(X);
  std::sort(out.begin(), out.end(), [](const ModelSet& a, const ModelSet& b) { return a.canonical_less(b); });
  return out;
}

/// (∩S) ∩ U′ for an index mask S, with ∩∅ = U′.
inline ModelSet meet(const ObligationSystem& sys, std::uint64_t S) {
  std::vector<Model> out;
  for (Model m : sys.restriction()) {
    bool in = true;
    for (std::size_t i = 0; i < sys.obligation_count(); ++i)
      if ((S >> i) & 1u) in = in && sys.obligations()[i].contains(m);
    if (in) out.push_back(m);
  }
  return ModelSet(std::move(out));
}

/// X is a union of intersections: tries every family of index sets. k ≤ 4.
inline bool ui_bruteforce(const ModelSet& X, const ObligationSystem& sys) {
  std::size_t k = sys.obligation_count(), subsets = std::size_t{1} << k;
  for (std::uint64_t family = 0; family < (std::uint64_t{1} << subsets); ++family) {
    ModelSet u;
    for (std::size_t S = 0; S < subsets; ++S)
      if ((family >> S) & 1u) u = unite(u, meet(sys, S));
    if (u == X) return true;
  }
  return false;
}

/// D(O) by definition over every partial assignment, m, m′, m″ ranging over U′.
inline bool delta_bruteforce(const ModelSet& X, const ObligationSystem& sys) {
  std::size_t k = sys.obligation_count();
  QualityRelation q = sys.quality(Variant::Set);
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    // digit 0: absent, 1: assigned 0, 2: assigned 1
    auto sat = [&](Model m) {
      std::size_t c = code;
      for (std::size_t i = 0; i < k; ++i, c /= 3) {
        std::size_t d = c % 3;
        if (d != 0 && sys.obligations()[i].contains(m) != (d == 2)) return false;
      }
      return true;
    };
    bool inside = false;
    for (Model m : X) inside = inside || sat(m);
    if (!inside) continue;
    for (Model mp : sys.restriction()) {
      if (X.contains(mp) || !sat(mp)) continue;
      bool rescued = false;
      for (Model mpp : X) rescued = rescued || (sat(mpp) && q.better(mpp, mp));
      if (!rescued) return false;
    }
  }
  return true;
}

/// Closure violations over all ordered pairs: (a, b) with a ≼ b, b ∈ X, a ∉ X.
inline std::vector<ModelPair> closure_pairs(const ModelSet& X, const ModelSet& U, const QualityRelation& q) {
  std::vector<ModelPair> out;
  for (Model a : U)
    for (Model b : U)
      if (X.contains(b) && !X.contains(a) && q.at_least_as_good(a, b)) out.emplace_back(a, b);
  return out;
}

}  // namespace deon::testing
