#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deon/metric.hpp"
#include "deon/model.hpp"
#include "deon/quality.hpp"
#include "deon/size.hpp"

namespace deon {

using ModelPair = std::pair<Model, Model>;

/// A vocabulary, its working restriction U′ and a named family 𝒪 of basic
/// obligations, each a model set over the full universe U.
class ObligationSystem {
 public:
  ObligationSystem(Vocabulary vocab, ModelSet restriction, std::vector<std::string> names,
                   std::vector<ModelSet> obligations);

  const Vocabulary& vocab() const noexcept { return vocab_; }
  std::size_t width() const noexcept { return vocab_.size(); }
  /// All 2^n models.
  ModelSet universe() const { return ModelSet::universe(vocab_.size()); }
  const ModelSet& restriction() const noexcept { return restriction_; }
  const std::vector<std::string>& obligation_names() const noexcept { return family_.names(); }
  const std::vector<ModelSet>& obligations() const noexcept { return family_.sets(); }
  std::size_t obligation_count() const noexcept { return family_.size(); }

  /// Obligation family in the ∈-case.
  const IndexFamily& family() const noexcept { return family_; }
  const IndexFamily& variables() const noexcept { return variables_; }
  QualityRelation quality(Variant v) const { return QualityRelation::derived(family_, v); }

  bool operator==(const ObligationSystem& o) const;

 private:
  Vocabulary vocab_;
  ModelSet restriction_;
  IndexFamily family_;
  IndexFamily variables_;
};

/// A partial 0/1 assignment δ over obligation indices.
struct DeltaAssignment {
  Coords domain = 0;
  Coords values = 0;  // subset of domain: indices assigned 1

  bool operator==(const DeltaAssignment&) const = default;
};

/// m ⊨ δ: m lies in exactly those domain obligations that δ sets to 1.
bool satisfies_delta(Model m, const DeltaAssignment& delta, const IndexFamily& obligations);

struct IndependenceResult {
  bool holds = true;
  std::optional<DeltaAssignment> missing;  // a full assignment no member of U′ realizes
  explicit operator bool() const noexcept { return holds; }
};

/// Every full assignment 𝒪 → {0,1} is realized by some member of U′.
IndependenceResult is_independent(const ObligationSystem& sys);

struct UiResult {
  bool holds = true;
  /// On success, profiles whose intersections' union (within U′) is X.
  std::vector<IndexSet> family;
  /// On failure, a member of the smallest (ui) superset missing from X.
  std::optional<Model> outside;
  explicit operator bool() const noexcept { return holds; }
};

/// X = (∪ᵢ ∩𝒪ᵢ) ∩ U′ for some family of subsets 𝒪ᵢ ⊆ 𝒪, with ∩∅ = U.
/// Requires X ⊆ U′.
UiResult is_ui(const ModelSet& X, const ObligationSystem& sys);

struct DeltaWitness {
  DeltaAssignment delta;
  Model inside;   // m ∈ X with m ⊨ δ
  Model outside;  // m′ ∉ X with m′ ⊨ δ and no better m″ ∈ X satisfying δ
};

struct DeltaResult {
  bool holds = true;
  std::optional<DeltaWitness> witness;
  explicit operator bool() const noexcept { return holds; }
};

/// The condition for a single δ, with m, m′, m″ ranging over U′.
DeltaResult delta_condition_holds(const ModelSet& X, const ObligationSystem& sys, const DeltaAssignment& delta);

inline constexpr std::size_t kMaxDeltaObligations = 12;

/// X ∈ D(𝒪): the condition for every partial δ. Requires X ⊆ U′ and at
/// most kMaxDeltaObligations obligations.
DeltaResult in_D_O(const ModelSet& X, const ObligationSystem& sys);

/// (∩𝒪) ∩ U′ ⊆ X. Requires X ⊆ U′.
bool is_classical_consequence(const ModelSet& X, const ObligationSystem& sys);

enum class Basis { Obligations, Variables };

struct ObligationOptions {
  Variant variant = Variant::Set;
  bool require_cp = false;
  bool require_nontrivial = true;
  /// Index family for distances; defaults to the obligations, or to the
  /// variables when the system has none.
  std::optional<Basis> basis;
};

Metric metric_for(const ObligationSystem& sys, const ObligationOptions& options);

/// Budgets for the soft criteria: ideal cases and the two softened sides of
/// ceteris paribus improvement are judged on models, closure and
/// neighbourhood on ordered pairs.
struct SoftSizes {
  SizeSpec<Model> ideal;
  SizeSpec<ModelPair> closure;
  SizeSpec<ModelPair> neighbourhood;
  SizeSpec<Model> cp;

  /// The same size notion everywhere; a preference on models is lifted to pairs
  /// componentwise.
  static SoftSizes uniform(const SizeSpec<Model>& spec);
};

struct ObligationVerdict {
  bool soft = false;
  bool accepted = false;

  bool contains_ideal = false;
  std::vector<Model> ideal_exceptions;  // best elements outside X

  bool downward_closed = false;
  /// (y, x) with y ≼ x, x ∈ X, y ∉ X. Hard checks keep the first one found.
  std::vector<ModelPair> closure_exceptions;

  bool improving_neighbourhood = false;
  /// (y, x): y ∈ X, x a closest not-worse best element, and [x,y] ∩ U′ ⊄ X.
  std::vector<ModelPair> neighbourhood_exceptions;
  std::optional<Model> neighbourhood_escape;  // hard checks: the model of [x,y] outside X

  bool cp_required = false;
  bool ceteris_paribus = false;
  std::optional<LocalWitness> cp_witness;
  std::vector<Model> cp_inner_exceptions;  // soft checks
  std::vector<Model> cp_outer_exceptions;

  bool nontrivial_required = true;
  bool nontrivial = false;

  /// Informational; not part of acceptance.
  bool ui = false;
};

/// Hard derived-obligation test of X ⊆ U′.
ObligationVerdict check_hard_obligation(const ModelSet& X, const ObligationSystem& sys,
                                        const QualityRelation& q, const ObligationOptions& options = {});

/// Soft variant: the ideal-case, closure, neighbourhood and (optionally)
/// ceteris paribus conditions tolerate exceptions small per `sizes`.
ObligationVerdict check_soft_obligation(const ModelSet& X, const ObligationSystem& sys,
                                        const QualityRelation& q, const SoftSizes& sizes,
                                        const ObligationOptions& options = {});

inline constexpr std::size_t kMaxDerivationUniverse = 20;

struct Derivation {
  std::vector<ModelSet> sets;  // cardinality, then lexicographic
  bool limit_exceeded = false;
};

/// Every X ⊆ U′ accepted by check_hard_obligation, searching only the
/// downward-closed supersets of the best elements. At most `limit` sets are
/// returned when `limit` is nonzero. Requires |U′| ≤ kMaxDerivationUniverse.
Derivation derive_obligations(const ObligationSystem& sys, const QualityRelation& q,
                              const ObligationOptions& options = {}, std::size_t limit = 0);

}  // namespace deon
