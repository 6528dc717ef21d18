#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deon/errors.hpp"
#include "deon/lab.hpp"
#include "deon/system_io.hpp"

namespace {

using namespace deon;

struct CheckArgs {
  std::string system;
  std::string candidate;
  std::string variant;
  bool json = false;
  bool soft = false;
  bool cp = false;
  bool allow_trivial = false;
  std::string basis;
  std::optional<double> epsilon;
};

struct DeriveArgs {
  std::string system;
  std::string variant;
  std::string basis;
  bool cp = false;
  bool allow_trivial = false;
  std::size_t limit = 0;
  bool json = false;
};

struct SuiteArgs {
  std::vector<std::string> claims;
  std::uint64_t seed = 1;
  std::size_t systems = 1000;
  bool json = false;
  bool timing = false;
};

struct SearchArgs {
  std::string claim;
  std::size_t vars = 4;
  std::size_t obligations = 4;
  std::uint64_t seed = 1;
  std::size_t budget = 0;
  std::size_t systems = 1000;
  bool json = false;
};

ObligationOptions options_for(const SystemSpec& spec, const std::string& variant, const std::string& basis, bool cp,
                              bool allow_trivial) {
  ObligationOptions o;
  if (basis == "variables") o.basis = Basis::Variables;
  if (basis == "obligations") o.basis = Basis::Obligations;
  o.variant = variant.empty() ? spec.distance : (variant == "count" ? Variant::Count : Variant::Set);
  o.require_cp = cp;
  o.require_nontrivial = !allow_trivial;
  return o;
}

int run_check(const CheckArgs& a, bool full) {
  SystemSpec spec = load_system_file(a.system);
  ModelSet X = parse_candidate(a.candidate, spec.system);
  ObligationOptions opts = options_for(spec, a.variant, a.basis, a.cp, a.allow_trivial);
  ObligationVerdict v;
  if (a.soft) {
    SizeSpec<Model> size = FractionSize{0.0};
    if (a.epsilon) {
      size = FractionSize{*a.epsilon};
    } else if (spec.size) {
      size = to_size_spec(*spec.size);
    } else {
      throw SizeUndefined("--soft needs a size in the system file or --epsilon");
    }
    v = check_soft_obligation(X, spec.system, spec.quality, SoftSizes::uniform(size), opts);
  } else {
    v = check_hard_obligation(X, spec.system, spec.quality, opts);
  }
  if (a.json) {
    std::cout << verdict_to_json(v, X, spec.quality).dump(2) << "\n";
  } else {
    std::cout << "candidate: " << X.to_string() << "\n" << verdict_to_text(v, X, spec.quality, full);
  }
  return v.accepted ? 0 : 1;
}

int run_derive(const DeriveArgs& a) {
  SystemSpec spec = load_system_file(a.system);
  const ObligationSystem& sys = spec.system;
  Derivation d = derive_obligations(sys, spec.quality, options_for(spec, a.variant, a.basis, a.cp, a.allow_trivial), a.limit);
  if (a.json) {
    Json doc;
    Json sets = Json::array();
    for (const ModelSet& X : d.sets)
      sets.push_back({{"models", X.to_bits()},
                      {"formula", to_string(describe_models(X, sys.restriction(), sys.vocab()), sys.vocab())}});
    doc["sets"] = std::move(sets);
    doc["count"] = d.sets.size();
    doc["limit_exceeded"] = d.limit_exceeded;
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  for (const ModelSet& X : d.sets)
    std::cout << X.to_string() << "  " << to_string(describe_models(X, sys.restriction(), sys.vocab()), sys.vocab())
              << "\n";
  std::cout << d.sets.size() << " derived obligation" << (d.sets.size() == 1 ? "" : "s") << "\n";
  if (d.limit_exceeded) std::cout << "limit exceeded: output truncated at " << a.limit << "\n";
  return 0;
}

void print_counterexample(const lab::Counterexample& ce) {
  std::cout << "  system: " << ce.system.dump() << "\n";
  if (ce.candidate) std::cout << "  candidate: " << ce.candidate->to_string() << "\n";
  std::cout << "  note: " << ce.note << "\n";
}

int run_suite(const SuiteArgs& a) {
  lab::SearchConfig config;
  config.seed = a.seed;
  config.random_systems = a.systems;
  std::vector<lab::SearchReport> reports = lab::run_paper_suite(config, a.claims);
  std::size_t failed = 0;
  for (const auto& r : reports) failed += !r.passed;
  if (a.json) {
    for (const auto& r : reports) std::cout << lab::report_to_json(r, a.timing).dump() << "\n";
  } else {
    for (const auto& r : reports) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.claim << " [" << lab::to_string(r.expected)
                << "] instances=" << r.instances << " counterexamples=" << r.counterexamples;
      if (a.timing) std::cout << " time=" << r.elapsed_seconds << "s";
      std::cout << "\n";
      if (!r.passed) {
        if (r.counterexample) print_counterexample(*r.counterexample);
        if (!r.detail.empty()) std::cout << "  " << r.detail << "\n";
      }
    }
    std::cout << reports.size() << " claims, " << failed << " failed\n";
  }
  return failed == 0 ? 0 : 1;
}

int run_search(const SearchArgs& a) {
  const lab::Claim& claim = lab::find_claim(a.claim);
  lab::SearchConfig config;
  config.seed = a.seed;
  config.max_vars = a.vars;
  config.max_obligations = a.obligations;
  config.random_systems = a.systems;
  if (a.budget > 0) config.budget = a.budget;
  lab::SearchReport r = lab::search_counterexample(claim, config);
  if (a.json) {
    std::cout << lab::report_to_json(r, false).dump(2) << "\n";
  } else if (r.counterexample) {
    std::cout << "counterexample for " << r.claim << " (" << r.counterexamples << " found in " << r.instances
              << " instances):\n";
    print_counterexample(*r.counterexample);
  } else {
    std::cout << "no counterexample for " << r.claim << " in " << r.instances << " instances\n";
  }
  return r.passed ? 0 : 1;
}

void add_check_options(CLI::App* cmd, CheckArgs& a) {
  cmd->add_option("system", a.system, "system file")->required();
  cmd->add_option("candidate", a.candidate, "formula or bitstring list")->required();
  cmd->add_option("--variant", a.variant, "distance variant")->check(CLI::IsMember({"set", "count"}));
  cmd->add_option("--basis", a.basis, "distance coordinates")->check(CLI::IsMember({"obligations", "variables"}));
  cmd->add_flag("--json", a.json, "machine-readable output");
  cmd->add_flag("--soft", a.soft, "soft obligation test");
  cmd->add_option("--epsilon", a.epsilon, "exception budget for --soft")->check(CLI::Range(0.0, 1.0));
  cmd->add_flag("--cp", a.cp, "also require ceteris paribus improvement");
  cmd->add_flag("--allow-trivial", a.allow_trivial, "accept X = U′");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deon: derived obligations over finite propositional systems"};
  app.require_subcommand(1);

  CheckArgs check_args, explain_args;
  auto* check = app.add_subcommand("check", "test a candidate obligation");
  add_check_options(check, check_args);
  auto* explain = app.add_subcommand("explain", "check with a full witness dump");
  add_check_options(explain, explain_args);

  DeriveArgs derive_args;
  auto* derive = app.add_subcommand("derive", "list all derived obligations");
  derive->add_option("system", derive_args.system, "system file")->required();
  derive->add_option("--variant", derive_args.variant, "distance variant")->check(CLI::IsMember({"set", "count"}));
  derive->add_option("--basis", derive_args.basis, "distance coordinates")
      ->check(CLI::IsMember({"obligations", "variables"}));
  derive->add_flag("--cp", derive_args.cp, "also require ceteris paribus improvement");
  derive->add_flag("--allow-trivial", derive_args.allow_trivial, "accept X = U′");
  derive->add_option("--limit", derive_args.limit, "stop after N sets (0 = no limit)");
  derive->add_flag("--json", derive_args.json, "machine-readable output");

  SuiteArgs suite_args;
  auto* verify = app.add_subcommand("verify-paper", "run the claim registry");
  verify->add_option("--claim", suite_args.claims, "run only these claims");
  verify->add_option("--seed", suite_args.seed, "random seed");
  verify->add_option("--systems", suite_args.systems, "random systems per claim");
  verify->add_flag("--json", suite_args.json, "machine-readable report");
  verify->add_flag("--timing", suite_args.timing, "include elapsed times");

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "search one claim for a counterexample");
  search->add_option("claim", search_args.claim, "claim id")->required();
  search->add_option("--vars", search_args.vars, "largest vocabulary for random systems")->check(CLI::Range(1, 8));
  search->add_option("--obligations", search_args.obligations, "largest obligation count")->check(CLI::Range(1, 8));
  search->add_option("--seed", search_args.seed, "random seed");
  search->add_option("--budget", search_args.budget, "instance budget for the random phase");
  search->add_option("--systems", search_args.systems, "random systems to draw");
  search->add_flag("--json", search_args.json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check) return run_check(check_args, false);
    if (*explain) return run_check(explain_args, true);
    if (*derive) return run_derive(derive_args);
    if (*verify) return run_suite(suite_args);
    if (*search) return run_search(search_args);
  } catch (const deon::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
