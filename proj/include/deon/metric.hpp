#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "deon/model.hpp"

namespace deon {

class QualityRelation;

/// Bitmask over the indices of an index family; bit i stands for index i.
using Coords = std::uint64_t;

inline constexpr std::size_t kMaxObligations = 64;

/// A finite set of indices of an IndexFamily: a profile or a set distance.
struct IndexSet {
  Coords bits = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits)); }
  bool empty() const noexcept { return bits == 0; }
  bool contains(std::size_t i) const noexcept { return ((bits >> i) & 1u) != 0; }
  bool subset_of(IndexSet o) const noexcept { return (bits & ~o.bits) == 0; }
  bool proper_subset_of(IndexSet o) const noexcept { return subset_of(o) && bits != o.bits; }
  std::vector<std::size_t> indices() const;

  bool operator==(const IndexSet&) const = default;
};

using SetDistance = IndexSet;

struct CountDistance {
  std::size_t value = 0;
  auto operator<=>(const CountDistance&) const = default;
};

/// The coordinates along which two models are compared: either the
/// propositional variables themselves, or membership in each obligation of a
/// family (x(i) = 1 iff x ∈ O_i).
class IndexFamily {
 public:
  enum class Kind { Variables, Obligations };

  static IndexFamily variables(const Vocabulary& vocab);
  static IndexFamily obligations(std::vector<ModelSet> sets, std::vector<std::string> names,
                                 std::size_t width);

  Kind kind() const noexcept;
  std::size_t size() const noexcept;
  std::size_t width() const noexcept;
  const std::string& name(std::size_t i) const;
  const std::vector<std::string>& names() const noexcept;
  /// Only meaningful for Kind::Obligations.
  const std::vector<ModelSet>& sets() const noexcept;

  Coords coords(Model m) const;

  std::string render(IndexSet s) const;  // "{p, q}"

 private:
  struct Impl;
  explicit IndexFamily(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

enum class Variant { Set, Count };

std::string_view to_string(Variant v);

/// A Hamming distance: one index family plus the set or counting variant.
struct Metric {
  IndexFamily family;
  Variant variant = Variant::Set;
};

enum class DistanceOrder { Less, Equal, Greater, Incomparable };

/// Compares two set distances (given as coordinate xors) under the variant's
/// order: inclusion for Set, cardinality for Count.
DistanceOrder compare_distances(Variant v, Coords a, Coords b) noexcept;

/// 𝒪(x): indices of the obligations containing x.
IndexSet profile(Model x, const IndexFamily& obligations);

SetDistance dist_set(Model x, Model y, const IndexFamily& fam);
CountDistance dist_count(Model x, Model y, const IndexFamily& fam);

/// ⟨x,y,z⟩: d(x,z) = d(x,y) ∪ d(y,z) (Set) or d(x,z) = d(x,y) + d(y,z) (Count).
bool between(Model x, Model y, Model z, const Metric& metric);

/// [x,z]: members y of `ambient` with ⟨x,y,z⟩.
ModelSet interval(Model x, Model z, const ModelSet& ambient, const Metric& metric);

/// x ∥ X: members of X whose distance from x has no strictly smaller
/// distance within X. Ties are all kept; empty only when X is.
ModelSet closest(Model x, const ModelSet& X, const Metric& metric);

/// A model z ∈ [x,y] ∩ U′ outside Y, reached from y ∈ Y via the closest x.
struct NeighbourhoodWitness {
  Model y;
  Model x;
  Model escaped;
};

struct NeighbourhoodResult {
  bool holds = true;
  std::optional<NeighbourhoodWitness> witness;
  explicit operator bool() const noexcept { return holds; }
};

/// Y is a neighbourhood of X in U′. Requires X ⊆ Y ⊆ U′.
NeighbourhoodResult is_neighbourhood(const ModelSet& Y, const ModelSet& X, const ModelSet& universe,
                                     const Metric& metric);

/// Y is an improving neighbourhood of X in U′: for each y ∈ Y only the
/// members of X at least as good as y are consulted. Requires X ⊆ Y ⊆ U′.
NeighbourhoodResult is_improving_neighbourhood(const ModelSet& Y, const ModelSet& X,
                                               const ModelSet& universe, const Metric& metric,
                                               const QualityRelation& quality);

}  // namespace deon
