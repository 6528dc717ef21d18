#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "deon/lab.hpp"

namespace deon::lab::engine {

/// Per-system evaluation context with lazily computed derived structure.
class Ctx {
 public:
  Ctx(const ObligationSystem& sys, Rng& rng, bool exhaustive);

  const ObligationSystem& sys;
  Rng& rng;
  /// True while enumerating small systems exhaustively; checks then avoid sampling.
  bool exhaustive;

  const ModelSet& U() const { return sys.restriction(); }
  const QualityRelation& qs() const { return qs_; }
  const QualityRelation& qc() const { return qc_; }
  const Metric& ms() const { return ms_; }
  const Metric& mc() const { return mc_; }
  const Metric& vars_set() const { return vs_; }
  const Metric& vars_count() const { return vc_; }
  const ModelSet& best_s();
  const ModelSet& best_c();

  /// {u ∈ U′ : u ≼ s for some s ∈ seeds}.
  ModelSet down(const ModelSet& seeds, const QualityRelation& q) const;

  /// Subsets of `base` to examine: all of them when small (or exhaustive),
  /// otherwise `samples` random ones.
  std::vector<ModelSet> subsets(const ModelSet& base, std::size_t small, std::size_t samples);

  /// Contexts for nonempty restrictions of U′ with the same obligations:
  /// all of them when |U′| ≤ 8, otherwise a random sample. Built once.
  const std::vector<Ctx*>& restrictions();

 private:
  std::vector<std::unique_ptr<ObligationSystem>> sub_systems_;
  std::vector<std::unique_ptr<Ctx>> sub_ctx_;
  std::vector<Ctx*> subs_;
  bool subs_ready_ = false;
  QualityRelation qs_, qc_;
  Metric ms_, mc_, vs_, vc_;
  std::optional<ModelSet> best_s_, best_c_;
};

struct Violation {
  std::optional<ModelSet> candidate;
  std::string note;
  /// Overrides the reported system (used when the violation lives in a relativized system).
  std::optional<Json> system;
};

struct Outcome {
  std::size_t instances = 0;
  std::optional<Violation> violation;
};

using SystemCheck = std::function<Outcome(Ctx&)>;
/// Returns a description when the instance violates the claim.
using SetPredicate = std::function<std::optional<std::string>(Ctx&, const ModelSet&)>;

/// Candidate sets X ⊆ U′ for a system: every subset when exhaustive or
/// |U′| ≤ 6, otherwise a mix of random subsets and downward closures.
std::vector<ModelSet> candidates(Ctx& ctx);

SystemCheck over_candidates(SetPredicate pred);

enum class Domain { Atomic, Independent };

/// Exhaustive phase over small atomic (or independent atomic) systems, then
/// a random phase.
SearchReport run_system_claim(Status status, Domain domain, const SystemCheck& check, const SearchConfig& config,
                              std::uint64_t seed);

using CustomRun = std::function<Outcome(const SearchConfig&, std::uint64_t seed)>;
SearchReport run_custom_claim(Status status, const CustomRun& run, const SearchConfig& config, std::uint64_t seed);

/// Collects failed expectations of a fixed example.
class Golden {
 public:
  void expect(bool ok, const std::string& what);
  Outcome outcome(const Json& system) const;

 private:
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
};

std::vector<Claim> build_claims();

/// Per-claim stream seed derived from the configured seed and the claim id.
std::uint64_t claim_seed(std::uint64_t base, std::string_view id);

}  // namespace deon::lab::engine
