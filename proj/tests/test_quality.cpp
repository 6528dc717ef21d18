#include <doctest.h>

#include "deon/errors.hpp"
#include "deon/lab.hpp"
#include "deon/quality.hpp"
#include "support.hpp"

using namespace deon;
using deon::testing::bits;
using deon::testing::powerset;
using deon::testing::set;

namespace {

ObligationSystem atomic(std::size_t n, ModelSet restriction) { return lab::atomic_system(n, n, std::move(restriction)); }

/// Closure by definition: every y ≼ x with x ∈ X lies in X.
bool closed_oracle(const ModelSet& X, const ModelSet& U, const QualityRelation& q) {
  for (Model x : X)
    for (Model y : U)
      if (q.at_least_as_good(y, x) && !X.contains(y)) return false;
  return true;
}

}  // namespace

TEST_SUITE("quality") {
  TEST_CASE("derived comparisons") {
    ObligationSystem s3 = atomic(3, ModelSet::universe(3));
    QualityRelation qs = s3.quality(Variant::Set);
    CHECK(qs.compare(bits("001"), bits("000")) == Order::Better);
    CHECK(qs.compare(bits("000"), bits("001")) == Order::Worse);
    CHECK(qs.compare(bits("001"), bits("001")) == Order::Equivalent);
    ObligationSystem s4 = atomic(4, ModelSet::universe(4));
    CHECK(s4.quality(Variant::Set).compare(bits("1000"), bits("0100")) == Order::Incomparable);
    QualityRelation qc = s3.quality(Variant::Count);
    CHECK(qc.better(bits("110"), bits("001")));
    CHECK(qc.better(bits("001"), bits("000")));
    CHECK(qc.compare(bits("100"), bits("010")) == Order::Equivalent);
  }

  TEST_CASE("count quality is total") {
    lab::Rng rng(9);
    for (int i = 0; i < 40; ++i) {
      ObligationSystem sys = lab::random_system(3, 3, 0.5, rng.next());
      QualityRelation qc = sys.quality(Variant::Count);
      for (Model x : sys.universe())
        for (Model y : sys.universe()) CHECK(qc.compare(x, y) != Order::Incomparable);
    }
  }

  TEST_CASE("explicit rankings") {
    QualityRelation r = QualityRelation::ranking({set({"00"}), set({"01"}), set({"11"}), set({"10"})});
    CHECK(r.better(bits("11"), bits("10")));
    CHECK(r.better(bits("00"), bits("10")));
    CHECK(r.kind() == QualityRelation::Kind::Ranking);
    QualityRelation partial = QualityRelation::partial({{bits("00"), bits("01")}, {bits("01"), bits("11")}});
    CHECK(partial.better(bits("00"), bits("11")));
    CHECK(partial.compare(bits("10"), bits("00")) == Order::Incomparable);
    CHECK(partial.strict_pairs().size() == 3);
    CHECK_THROWS_AS(QualityRelation::partial({{bits("00"), bits("01")}, {bits("01"), bits("00")}}), InvalidInput);
    CHECK_THROWS_AS(QualityRelation::ranking({set({"00"}), set({"00", "01"})}), InvalidInput);
  }

  TEST_CASE("best elements") {
    ObligationSystem d2 = atomic(4, set({"1000", "0100", "1111"}));
    CHECK(best_elements(d2.restriction(), d2.quality(Variant::Set)) == set({"1111"}));
    ObligationSystem d1 = atomic(2, set({"10", "01"}));
    CHECK(best_elements(d1.restriction(), d1.quality(Variant::Set)) == set({"10", "01"}));
    ObligationSystem full = atomic(3, ModelSet::universe(3));
    CHECK(best_elements(full.restriction(), full.quality(Variant::Set)) == set({"111"}));
    CHECK_THROWS_AS(best_elements(ModelSet(), full.quality(Variant::Set)), EmptyUniverse);
  }

  TEST_CASE("downward closure with witnesses") {
    ObligationSystem d1 = atomic(2, set({"10", "01"}));
    CHECK(is_downward_closed(set({"10"}), d1.restriction(), d1.quality(Variant::Set)));
    ObligationSystem full = atomic(2, ModelSet::universe(2));
    ClosureResult r = is_downward_closed(set({"11", "10", "00"}), full.restriction(), full.quality(Variant::Set));
    CHECK_FALSE(r.holds);
    CHECK(r.witness == std::pair<Model, Model>(bits("01"), bits("00")));
    CHECK(is_downward_closed(full.restriction(), full.restriction(), full.quality(Variant::Set)));
    CHECK_THROWS_AS(is_downward_closed(set({"11"}), set({"00"}), full.quality(Variant::Set)), PreconditionViolation);
  }

  TEST_CASE("closure agrees with its definition") {
    lab::Rng rng(21);
    for (int i = 0; i < 60; ++i) {
      ObligationSystem sys = lab::random_system(3, 3, 0.4, rng.next());
      for (Variant v : {Variant::Set, Variant::Count}) {
        QualityRelation q = sys.quality(v);
        for (const ModelSet& X : powerset(sys.restriction()))
          CHECK(is_downward_closed(X, sys.restriction(), q).holds == closed_oracle(X, sys.restriction(), q));
      }
    }
  }

  TEST_CASE("x ≺ Y") {
    ObligationSystem hn = atomic(4, set({"0000", "0001", "0010", "1110"}));
    QualityRelation qc = hn.quality(Variant::Count);
    Metric mc{hn.family(), Variant::Count};
    CHECK(better_than_set(bits("0010"), set({"0000"}), qc, mc));
    CHECK_FALSE(better_than_set(bits("0000"), set({"0001"}), qc, mc));
    CHECK(better_than_set(bits("0000"), ModelSet(), qc, mc));
  }

  TEST_CASE("locally better") {
    ObligationSystem ng = atomic(4, set({"1111", "1110", "0010", "0000"}));
    ModelSet X = set({"0010", "1111"}), Y = set({"1110", "0000"});
    CHECK(locally_better(X, Y, ng.quality(Variant::Count), {ng.family(), Variant::Count}));
    CHECK_FALSE(locally_better(X, Y, ng.quality(Variant::Set), {ng.family(), Variant::Set}));
    ObligationSystem d2 = atomic(4, set({"1000", "0100", "1111"}));
    LocalResult r = locally_better(set({"1000", "1111"}), set({"0100"}), d2.quality(Variant::Set),
                                   {d2.family(), Variant::Set});
    CHECK_FALSE(r.holds);
    REQUIRE(r.witness);
  }

  TEST_CASE("ceteris paribus improvement") {
    ObligationSystem ng = atomic(4, set({"1111", "1110", "0010", "0000"}));
    CHECK(ceteris_paribus_improving(set({"0010", "1111"}), ng.restriction(), ng.quality(Variant::Count),
                                    {ng.family(), Variant::Count}));
    ObligationSystem d2 = atomic(4, set({"1000", "0100", "1111"}));
    CHECK_FALSE(ceteris_paribus_improving(set({"1000", "1111"}), d2.restriction(), d2.quality(Variant::Set),
                                          {d2.family(), Variant::Set}));
    CHECK(ceteris_paribus_improving(d2.restriction(), d2.restriction(), d2.quality(Variant::Set),
                                    {d2.family(), Variant::Set}));
    CHECK_THROWS_AS(ceteris_paribus_improving(set({"0001"}), d2.restriction(), d2.quality(Variant::Set),
                                              {d2.family(), Variant::Set}),
                    PreconditionViolation);
  }

  TEST_CASE("soft local betterness") {
    SystemSpec spec = lab::fixture("assassin-partial");
    ModelSet X = set({"00", "10"}), Y = set({"01", "11"});
    Metric m{spec.system.family(), Variant::Set};
    SoftLocalResult strict = softly_locally_better(X, Y, spec.quality, m, FractionSize{0.0});
    CHECK(strict.holds == locally_better(X, Y, spec.quality, m).holds);
    SoftLocalResult loose = softly_locally_better(X, Y, spec.quality, m, FractionSize{0.5});
    CHECK(loose.inner.exceptions.size() <= 1);
    CHECK(loose.outer.exceptions.size() <= 1);
    CHECK(loose.holds);
  }

  TEST_CASE("zero budget soft betterness equals the hard relation") {
    lab::Rng rng(4);
    for (int i = 0; i < 100; ++i) {
      ObligationSystem sys = lab::random_system(3, 3, 0.5, rng.next());
      QualityRelation q = sys.quality(Variant::Set);
      Metric m{sys.family(), Variant::Set};
      for (const ModelSet& X : powerset(sys.restriction())) {
        ModelSet Y = subtract(sys.restriction(), X);
        CHECK(softly_locally_better(X, Y, q, m, FractionSize{0.0}).holds == locally_better(X, Y, q, m).holds);
      }
    }
  }
}
