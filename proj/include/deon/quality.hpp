#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "deon/metric.hpp"
#include "deon/model.hpp"
#include "deon/size.hpp"

namespace deon {

/// Outcome of comparing x with y; smaller is better, so Better means x ≺ y.
enum class Order { Better, Equivalent, Worse, Incomparable };

std::string_view to_string(Order o);

/// A preorder on models. Derived relations compare obligation profiles
/// (by inclusion or by count); explicit relations are user supplied.
class QualityRelation {
 public:
  enum class Kind { DerivedSet, DerivedCount, Ranking, Partial };

  /// x ≺_s y iff 𝒪(y) ⊂ 𝒪(x); x ≺_c y iff |𝒪(y)| < |𝒪(x)|.
  static QualityRelation derived(IndexFamily obligations, Variant variant);
  /// Layers ordered best first; models within a layer are equivalent.
  /// Models outside every layer are comparable only to themselves.
  static QualityRelation ranking(std::vector<ModelSet> layers);
  /// Strict pairs (a, b) meaning a ≺ b, closed under transitivity.
  /// Throws InvalidInput if the closure is not irreflexive.
  static QualityRelation partial(const std::vector<std::pair<Model, Model>>& strict_pairs);

  Kind kind() const noexcept;
  Order compare(Model x, Model y) const;
  bool better(Model x, Model y) const { return compare(x, y) == Order::Better; }
  bool at_least_as_good(Model x, Model y) const {
    Order o = compare(x, y);
    return o == Order::Better || o == Order::Equivalent;
  }

  /// Ranking layers (Kind::Ranking) or the transitively closed strict pairs
  /// (Kind::Partial); empty otherwise.
  const std::vector<ModelSet>& layers() const noexcept;
  const std::vector<std::pair<Model, Model>>& strict_pairs() const noexcept;

 private:
  struct Impl;
  explicit QualityRelation(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// ≺-minimal members of U′. Throws EmptyUniverse for an empty argument.
ModelSet best_elements(const ModelSet& universe, const QualityRelation& q);

struct ClosureResult {
  bool holds = true;
  /// (y, x): y ≼ x, x ∈ X, y ∉ X.
  std::optional<std::pair<Model, Model>> witness;
  explicit operator bool() const noexcept { return holds; }
};

/// ∀x ∈ X ∀y ∈ U′ (y ≼ x ⇒ y ∈ X). Requires X ⊆ U′.
ClosureResult is_downward_closed(const ModelSet& X, const ModelSet& universe, const QualityRelation& q);

/// x ≺ Y: x is strictly better than every member of x ∥ Y. True for Y = ∅.
bool better_than_set(Model x, const ModelSet& Y, const QualityRelation& q, const Metric& metric);

struct LocalWitness {
  enum class Side { Inner, Outer };
  /// Inner: `element` ∈ X fails x ≺ Y. Outer: `element` ∈ Y fails X ≺ y.
  Side side;
  Model element;
  /// The closest model on the other side that is not strictly worse
  /// (Inner) or not strictly better (Outer).
  Model blocker;
};

struct LocalResult {
  bool holds = true;
  std::optional<LocalWitness> witness;
  explicit operator bool() const noexcept { return holds; }
};

/// X ≺_l Y: ∀x ∈ X. x ≺ Y and ∀y ∈ Y. X ≺ y.
LocalResult locally_better(const ModelSet& X, const ModelSet& Y, const QualityRelation& q,
                           const Metric& metric);

struct SoftLocalResult {
  bool holds = true;
  SoftResult<Model> inner;  // exceptions x ∈ X to x ≺ Y
  SoftResult<Model> outer;  // exceptions y ∈ Y to X ≺ y
  explicit operator bool() const noexcept { return holds; }
};

/// X ≪_l Y: the two quantifiers of ≺_l softened independently, with `size`
/// judging exceptions within X and within Y.
SoftLocalResult softly_locally_better(const ModelSet& X, const ModelSet& Y, const QualityRelation& q,
                                      const Metric& metric, const SizeSpec<Model>& size);

/// X ≺_l (U′ − X). Requires X ⊆ U′.
LocalResult ceteris_paribus_improving(const ModelSet& X, const ModelSet& universe,
                                      const QualityRelation& q, const Metric& metric);

}  // namespace deon
