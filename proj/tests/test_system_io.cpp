#include <doctest.h>

#include "deon/errors.hpp"
#include "deon/lab.hpp"
#include "deon/system_io.hpp"
#include "support.hpp"

using namespace deon;
using namespace deon::testing;

TEST_SUITE("system_io") {
  TEST_CASE("load errors") {
    CHECK_THROWS_AS(load_system_file(data("bad-field.json")), InvalidInput);
    CHECK_THROWS_AS(load_system_file(data("no-such-file.json")), InvalidInput);
    CHECK_THROWS_AS(load_system(Json::array()), InvalidInput);
    CHECK_THROWS_AS(load_system(Json::parse(R"({"variables": ["p"], "obligations": {"a": "p &"}})")), SyntaxError);
    CHECK_THROWS_AS(load_system(Json::parse(R"({"variables": ["p"], "obligations": {"a": "q"}})")), UnknownVariable);
    CHECK_THROWS_AS(load_system(Json::parse(R"({"variables": ["p"], "universe": ["10"]})")), InvalidInput);
    CHECK_THROWS_AS(load_system(Json::parse(R"({"variables": ["p"], "quality": "best"})")), InvalidInput);
    CHECK_THROWS_AS(
        load_system(Json::parse(R"({"variables": ["p"], "quality": {"explicit": [["0"], ["1"], ["0"]]}})")), Error);
  }

  TEST_CASE("defaults") {
    SystemSpec spec = load_system(Json::parse(R"({"variables": ["p", "q"], "obligations": {"a": "p"}})"));
    CHECK(spec.system.restriction() == ModelSet::universe(2));
    CHECK(spec.quality_name == "set");
    CHECK(spec.distance == Variant::Set);
    CHECK_FALSE(spec.size);
    CHECK(spec.system.obligations()[0] == set({"10", "11"}));
  }

  TEST_CASE("round trip through the canonical document") {
    for (const std::string& name : lab::fixture_names()) {
      SystemSpec spec = lab::fixture(name);
      Json doc = to_json(spec);
      SystemSpec again = load_system(doc);
      CHECK(again.system == spec.system);
      CHECK(again.quality_name == spec.quality_name);
      CHECK(to_json(again) == doc);
    }
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      ObligationSystem sys = lab::random_system(1 + seed % 5, seed % 4, 0.4, seed);
      CHECK(load_system(to_json(sys)).system == sys);
    }
  }

  TEST_CASE("parse_candidate") {
    SystemSpec spec = load_system_file(data("not-global.json"));
    const ObligationSystem& sys = spec.system;
    CHECK(parse_candidate("[1111, 1110]", sys) == set({"1111", "1110"}));
    CHECK(parse_candidate("1111,0000", sys) == set({"1111", "0000"}));
    CHECK(parse_candidate("p", sys) == set({"1111", "1110"}));
    CHECK(parse_candidate("~p & ~q", sys) == set({"0010", "0000"}));
    CHECK_THROWS_AS(parse_candidate("[0001]", sys), InvalidInput);
    CHECK_THROWS_AS(parse_candidate("[111]", sys), InvalidInput);
    CHECK_THROWS_AS(parse_candidate("p |", sys), SyntaxError);
  }

  TEST_CASE("describe_models") {
    Vocabulary v({"p", "q"});
    ModelSet U = ModelSet::universe(2);
    CHECK(to_string(describe_models(set({"10", "11", "01"}), U, v), v) == "p | q");
    CHECK(to_string(describe_models(set({"10", "11"}), U, v), v) == "p");
    CHECK(models_of(describe_models(set({"00", "11"}), U, v), v, U) == set({"00", "11"}));
    for (const ModelSet& X : powerset(ModelSet::universe(3))) {
      Vocabulary v3({"p", "q", "r"});
      CHECK(models_of(describe_models(X, ModelSet::universe(3), v3), v3, ModelSet::universe(3)) == X);
    }
  }

  TEST_CASE("render_relation") {
    ObligationSystem sys = lab::atomic_system(2, 2, ModelSet::universe(2));
    QualityRelation q = sys.quality(Variant::Set);
    CHECK(render_relation(bits("01"), bits("00"), q) == "01 ≺ 00");
    CHECK(render_relation(bits("00"), bits("01"), q) == "00 ≻ 01");
    CHECK(render_relation(bits("01"), bits("10"), q) == "01 ⋈ 10");
    CHECK(render_relation(bits("01"), bits("10"), sys.quality(Variant::Count)) == "01 ∼ 10");
  }

  TEST_CASE("verdict JSON and text agree") {
    SystemSpec spec = load_system_file(data("ross.json"));
    const ObligationSystem& sys = spec.system;
    for (const char* text : {"p", "p | ~q", "p & q", "q | ~q"}) {
      ModelSet X = parse_candidate(text, sys);
      ObligationVerdict v = check_hard_obligation(X, sys, spec.quality);
      Json j = verdict_to_json(v, X, spec.quality);
      std::string t = verdict_to_text(v, X, spec.quality, false);
      CHECK(j["accepted"] == v.accepted);
      CHECK(j["mode"] == "hard");
      CHECK(j["candidate"].size() == X.size());
      CHECK(j["criteria"]["downward_closed"]["holds"] == v.downward_closed);
      CHECK(t.find(v.accepted ? "verdict: accept" : "verdict: reject") != std::string::npos);
    }
    ModelSet X = parse_candidate("p | ~q", sys);
    ObligationVerdict v = check_hard_obligation(X, sys, spec.quality);
    Json j = verdict_to_json(v, X, spec.quality);
    CHECK(j["criteria"]["downward_closed"]["relations"][0] == "01 ≺ 00");
    CHECK(verdict_to_text(v, X, spec.quality, false).find("01 ≺ 00") != std::string::npos);
  }
}
