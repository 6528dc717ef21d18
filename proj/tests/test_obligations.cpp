#include <algorithm>

#include <doctest.h>

#include "deon/errors.hpp"
#include "deon/formula.hpp"
#include "deon/lab.hpp"
#include "deon/obligations.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace deon;
using namespace deon::testing;

namespace {

ModelSet formula_models(const ObligationSystem& sys, const char* text) {
  return models_of(parse_formula(text, sys.vocab()), sys.vocab(), sys.restriction());
}

/// Every restriction of the n-variable atomic systems with the first k variables as obligations.
template <class Fn>
void each_atomic(std::size_t n, std::size_t k, Fn fn) {
  for (const ModelSet& U : powerset(ModelSet::universe(n)))
    if (!U.empty()) fn(lab::atomic_system(n, k, U));
}

std::vector<ModelPair> sorted(std::vector<ModelPair> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_SUITE("obligations") {
  TEST_CASE("satisfies_delta") {
    ObligationSystem sys = lab::atomic_system(3, 3, ModelSet::universe(3));
    DeltaAssignment d{0b011, 0b001};  // o1 ↦ 1, o2 ↦ 0
    CHECK(satisfies_delta(bits("100"), d, sys.family()));
    CHECK(satisfies_delta(bits("101"), d, sys.family()));
    CHECK_FALSE(satisfies_delta(bits("110"), d, sys.family()));
    CHECK_FALSE(satisfies_delta(bits("000"), d, sys.family()));
    for (Model m : sys.restriction()) CHECK(satisfies_delta(m, DeltaAssignment{}, sys.family()));
  }

  TEST_CASE("independence") {
    CHECK(is_independent(lab::atomic_system(2, 2, ModelSet::universe(2))));
    IndependenceResult r = is_independent(lab::atomic_system(2, 2, set({"00", "01", "10"})));
    REQUIRE_FALSE(r);
    REQUIRE(r.missing);
    CHECK(r.missing->domain == 0b11);
    CHECK(r.missing->values == 0b11);
    CHECK(is_independent(lab::atomic_system(3, 2, set({"000", "011", "101", "110"}))));
    CHECK(is_independent(lab::atomic_system(2, 0, set({"01"}))));
  }

  TEST_CASE("ui against every family of intersections") {
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t k = 0; k <= std::min<std::size_t>(n, 2); ++k)
        each_atomic(n, k, [&](const ObligationSystem& sys) {
          for (const ModelSet& X : powerset(sys.restriction())) {
            UiResult r = is_ui(X, sys);
            REQUIRE(r.holds == ui_bruteforce(X, sys));
            if (r.holds) {
              ModelSet u;
              for (IndexSet S : r.family) u = unite(u, meet(sys, S.bits));
              CHECK(u == X);
            } else {
              REQUIRE(r.outside);
              CHECK_FALSE(X.contains(*r.outside));
              CHECK(sys.restriction().contains(*r.outside));
            }
          }
        });
  }

  TEST_CASE("D(O) against every partial assignment") {
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t k = 0; k <= n; ++k)
        each_atomic(n, k, [&](const ObligationSystem& sys) {
          for (const ModelSet& X : powerset(sys.restriction())) {
            DeltaResult r = in_D_O(X, sys);
            REQUIRE(r.holds == delta_bruteforce(X, sys));
            if (!r.holds) {
              REQUIRE(r.witness);
              const DeltaWitness& w = *r.witness;
              CHECK(X.contains(w.inside));
              CHECK_FALSE(X.contains(w.outside));
              CHECK(satisfies_delta(w.inside, w.delta, sys.family()));
              CHECK(satisfies_delta(w.outside, w.delta, sys.family()));
              CHECK_FALSE(delta_condition_holds(X, sys, w.delta));
            }
          }
        });
  }

  TEST_CASE("classical consequence") {
    ObligationSystem sys = lab::atomic_system(2, 2, ModelSet::universe(2));
    CHECK(is_classical_consequence(set({"11"}), sys));
    CHECK(is_classical_consequence(formula_models(sys, "p | ~q"), sys));
    CHECK_FALSE(is_classical_consequence(set({"10", "01"}), sys));
    CHECK(is_classical_consequence(ModelSet{}, lab::atomic_system(2, 2, set({"00", "01"}))));
    CHECK_THROWS_AS(is_classical_consequence(set({"11"}), lab::atomic_system(2, 2, set({"00"}))),
                    PreconditionViolation);
  }

  TEST_CASE("hard obligations on the two-obligation system") {
    SystemSpec spec = load_system_file(data("ross.json"));
    const ObligationSystem& sys = spec.system;
    CHECK(check_hard_obligation(formula_models(sys, "p"), sys, spec.quality).accepted);
    CHECK(check_hard_obligation(formula_models(sys, "p & q"), sys, spec.quality).accepted);
    ObligationVerdict v = check_hard_obligation(formula_models(sys, "p | ~q"), sys, spec.quality);
    CHECK_FALSE(v.accepted);
    CHECK_FALSE(v.downward_closed);
    REQUIRE(v.closure_exceptions.size() == 1);
    CHECK(v.closure_exceptions[0] == ModelPair(bits("01"), bits("00")));
    ObligationVerdict top = check_hard_obligation(sys.restriction(), sys, spec.quality);
    CHECK_FALSE(top.accepted);
    CHECK_FALSE(top.nontrivial);
    ObligationOptions trivial;
    trivial.require_nontrivial = false;
    CHECK(check_hard_obligation(sys.restriction(), sys, spec.quality, trivial).accepted);
  }

  TEST_CASE("single-world system derives nothing nontrivial") {
    SystemSpec spec = load_system_file(data("single-world.json"));
    CHECK(derive_obligations(spec.system, spec.quality).sets.empty());
    ObligationOptions trivial;
    trivial.require_nontrivial = false;
    CHECK(derive_obligations(spec.system, spec.quality, trivial).sets.size() == 1);
  }

  TEST_CASE("derive matches the unpruned oracle") {
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t k = 0; k <= n; ++k)
        each_atomic(n, k, [&](const ObligationSystem& sys) {
          for (Variant v : {Variant::Set, Variant::Count}) {
            QualityRelation q = sys.quality(v);
            for (bool cp : {false, true}) {
              ObligationOptions o;
              o.variant = v;
              o.require_cp = cp;
              REQUIRE(derive_obligations(sys, q, o).sets == derive_unpruned(sys, q, o));
            }
          }
        });
  }

  TEST_CASE("derive on independent atomic obligations") {
    SystemSpec spec = load_system_file(data("indep-pq.json"));
    Derivation d = derive_obligations(spec.system, spec.quality);
    CHECK(d.sets == derive_unpruned(spec.system, spec.quality));
    REQUIRE(d.sets.size() == 4);
    CHECK(d.sets[0] == set({"11"}));
    CHECK_FALSE(d.limit_exceeded);
    Derivation capped = derive_obligations(spec.system, spec.quality, {}, 2);
    CHECK(capped.sets.size() == 2);
    CHECK(capped.limit_exceeded);
    CHECK(std::equal(capped.sets.begin(), capped.sets.end(), d.sets.begin()));
  }

  TEST_CASE("soft closure reports every exceptional pair") {
    SystemSpec spec = load_system_file(data("assassin.json"));
    const ObligationSystem& sys = spec.system;
    ModelSet X = formula_models(sys, "~o");
    ObligationVerdict v = check_soft_obligation(X, sys, spec.quality, SoftSizes::uniform(FractionSize{0.1}));
    CHECK(sorted(v.closure_exceptions) == sorted(closure_pairs(X, sys.restriction(), spec.quality)));
    CHECK(v.closure_exceptions == std::vector<ModelPair>{{bits("11"), bits("10")}});
    CHECK(v.downward_closed);
    ObligationVerdict tight = check_soft_obligation(X, sys, spec.quality, SoftSizes::uniform(FractionSize{0.0}));
    CHECK_FALSE(tight.downward_closed);

    SystemSpec ranked = load_system_file(data("assassin-ranked.json"));
    ModelSet Y = formula_models(ranked.system, "~o");
    ObligationVerdict r =
        check_soft_obligation(Y, ranked.system, ranked.quality, SoftSizes::uniform(FractionSize{0.125}));
    CHECK(sorted(r.closure_exceptions) == sorted(closure_pairs(Y, ranked.system.restriction(), ranked.quality)));
    CHECK(r.closure_exceptions.size() == 2);
  }

  TEST_CASE("zero budget soft equals hard") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
      ObligationSystem sys = lab::random_system(1 + seed % 3, seed % 4, 0.5, seed);
      for (Variant v : {Variant::Set, Variant::Count}) {
        QualityRelation q = sys.quality(v);
        ObligationOptions o;
        o.variant = v;
        o.require_cp = seed % 2 == 0;
        for (const ModelSet& X : powerset(sys.restriction())) {
          bool hard = check_hard_obligation(X, sys, q, o).accepted;
          REQUIRE(check_soft_obligation(X, sys, q, SoftSizes::uniform(FractionSize{0.0}), o).accepted == hard);
        }
      }
    }
  }

  TEST_CASE("library soft obligation over the variables") {
    SystemSpec spec = load_system_file(data("library.json"));
    const ObligationSystem& sys = spec.system;
    ObligationOptions o;
    o.basis = Basis::Variables;
    ModelSet not_w = formula_models(sys, "~w");
    CHECK_FALSE(check_hard_obligation(not_w, sys, spec.quality, o).accepted);
    CHECK(check_soft_obligation(not_w, sys, spec.quality, SoftSizes::uniform(to_size_spec(*spec.size)), o).accepted);
  }
}
