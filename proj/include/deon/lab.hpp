#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "deon/obligations.hpp"
#include "deon/system_io.hpp"

namespace deon::lab {

enum class Status { Theorem, Refutable };

std::string_view to_string(Status s);

/// Stored example systems, by name: count, dependent-1, dependent-2,
/// dependent-3, not-global, h-n-local, ross, three-obligations, assassin,
/// assassin-partial, library.
SystemSpec fixture(std::string_view name);
const std::vector<std::string>& fixture_names();

/// Deterministic pseudo-random stream built on raw mt19937_64 output, so
/// sequences agree across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [0, n); n > 0.
  std::size_t below(std::size_t n);
  /// Uniform in [0, 1).
  double unit();
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Each obligation contains each model of U with probability `density`;
/// U′ contains each model with probability 1/2, redrawn until nonempty.
/// Throws BadParameters outside 1 ≤ n_vars ≤ 8, n_obl ≤ 8, 0 < density < 1.
ObligationSystem random_system(std::size_t n_vars, std::size_t n_obl, double density, std::uint64_t seed);

/// An independent system: O_i = π⁻¹(models with variable i true) for a
/// random permutation π of U, and U′ holding one model per profile plus a
/// random selection of the rest. Requires 1 ≤ n_obl ≤ n_vars ≤ 8.
ObligationSystem random_independent_system(std::size_t n_vars, std::size_t n_obl, std::uint64_t seed);

/// Obligations are the first `k` variables (named after them) and U′ is
/// `restriction`.
ObligationSystem atomic_system(std::size_t n, std::size_t k, ModelSet restriction);

/// Calls `fn` for every restriction U′ ⊆ U over n variables under which the
/// first k variables, taken as obligations, are independent.
void for_each_independent_atomic_system(std::size_t n, std::size_t k,
                                        const std::function<void(const ObligationSystem&)>& fn);

struct SearchConfig {
  std::uint64_t seed = 1;
  /// Random systems examined after the exhaustive phase.
  std::size_t random_systems = 1000;
  /// Cap on instances examined in the random phase.
  std::size_t budget = std::numeric_limits<std::size_t>::max();
  /// Largest vocabulary and obligation count for random systems.
  std::size_t max_vars = 4;
  std::size_t max_obligations = 4;
};

struct Counterexample {
  Json system;
  std::optional<ModelSet> candidate;
  std::string note;
};

struct SearchReport {
  std::string claim;
  Status expected = Status::Theorem;
  bool passed = false;
  std::size_t instances = 0;
  std::size_t counterexamples = 0;
  std::optional<Counterexample> counterexample;  // minimal one found
  std::vector<std::pair<std::string, std::size_t>> coverage;  // instances per phase
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
  std::string detail;
};

struct Claim {
  std::string id;
  Status status;
  std::string summary;
  std::function<SearchReport(const SearchConfig&)> run;
};

/// The full registry in report order.
const std::vector<Claim>& claims();
/// Throws UnknownClaim.
const Claim& find_claim(std::string_view id);

/// Evaluates one claim: exhaustive over small systems first, then sampling.
/// THEOREM claims pass with zero counterexamples; REFUTABLE claims pass once
/// a counterexample is found within budget.
SearchReport search_counterexample(const Claim& claim, const SearchConfig& config);

/// Runs the selected claims (all when `only` is empty), in parallel when
/// DEON_THREADS > 1; results are returned in registry order.
std::vector<SearchReport> run_paper_suite(const SearchConfig& config, const std::vector<std::string>& only = {});

/// One JSON object per report; elapsed time only when `timing` is set.
Json report_to_json(const SearchReport& report, bool timing);

}  // namespace deon::lab
