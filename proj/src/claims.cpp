#include <algorithm>

#include "deon/errors.hpp"
#include "deon/formula.hpp"
#include "lab_engine.hpp"

namespace deon::lab::engine {

namespace {

using Test = std::function<bool(Ctx&, const ModelSet&)>;

/// A named property of a candidate X within a system.
struct Prop {
  std::string name;
  Test test;
};

Prop all(std::vector<Prop> parts) {
  std::string name;
  for (const auto& p : parts) name += (name.empty() ? "" : " and ") + p.name;
  return {name, [parts](Ctx& c, const ModelSet& X) {
            return std::all_of(parts.begin(), parts.end(), [&](const Prop& p) { return p.test(c, X); });
          }};
}

const Prop kNonempty{"X nonempty", [](Ctx&, const ModelSet& X) { return !X.empty(); }};
const Prop kClosedS{"closed (set)", [](Ctx& c, const ModelSet& X) { return is_downward_closed(X, c.U(), c.qs()).holds; }};
const Prop kClosedC{"closed (count)",
                    [](Ctx& c, const ModelSet& X) { return is_downward_closed(X, c.U(), c.qc()).holds; }};
const Prop kBestS{"contains best (set)", [](Ctx& c, const ModelSet& X) { return is_subset(c.best_s(), X); }};
const Prop kBestC{"contains best (count)", [](Ctx& c, const ModelSet& X) { return is_subset(c.best_c(), X); }};
const Prop kCpS{"ceteris paribus (set)",
                [](Ctx& c, const ModelSet& X) { return ceteris_paribus_improving(X, c.U(), c.qs(), c.ms()).holds; }};
const Prop kCpC{"ceteris paribus (count)",
                [](Ctx& c, const ModelSet& X) { return ceteris_paribus_improving(X, c.U(), c.qc(), c.mc()).holds; }};
const Prop kUi{"(ui)", [](Ctx& c, const ModelSet& X) { return is_ui(X, c.sys).holds; }};
const Prop kDelta{"D(O)", [](Ctx& c, const ModelSet& X) { return in_D_O(X, c.sys).holds; }};
const Prop kNbhdS{"neighbourhood of best (set)", [](Ctx& c, const ModelSet& X) {
                    return is_subset(c.best_s(), X) && is_neighbourhood(X, c.best_s(), c.U(), c.ms()).holds;
                  }};
const Prop kImprovingS{"improving neighbourhood of best (set)", [](Ctx& c, const ModelSet& X) {
                         return is_subset(c.best_s(), X) &&
                                is_improving_neighbourhood(X, c.best_s(), c.U(), c.ms(), c.qs()).holds;
                       }};
const Prop kImprovingC{"improving neighbourhood of best (count)", [](Ctx& c, const ModelSet& X) {
                         return is_subset(c.best_c(), X) &&
                                is_improving_neighbourhood(X, c.best_c(), c.U(), c.mc(), c.qc()).holds;
                       }};

/// Neighbourhood condition alone, vacuous when X misses a best element.
const Prop kNbhdIfBestS{"neighbourhood of best whenever best is contained (set)", [](Ctx& c, const ModelSet& X) {
                          return !is_subset(c.best_s(), X) || is_neighbourhood(X, c.best_s(), c.U(), c.ms()).holds;
                        }};

SetPredicate implies(Prop hyp, Prop concl) {
  return [hyp, concl](Ctx& c, const ModelSet& X) -> std::optional<std::string> {
    if (hyp.test(c, X) && !concl.test(c, X)) return hyp.name + " holds but " + concl.name + " fails";
    return std::nullopt;
  };
}

/// Hypothesis on X in U″, conclusion on X ∩ U′ in every restriction U′.
SetPredicate relativized(Prop hyp, Prop concl) {
  return [hyp, concl](Ctx& c, const ModelSet& X) -> std::optional<std::string> {
    if (!hyp.test(c, X)) return std::nullopt;
    for (Ctx* sub : c.restrictions()) {
      ModelSet Y = intersect(X, sub->U());
      if (!concl.test(*sub, Y))
        return hyp.name + " holds in U″ but " + concl.name + " fails for X ∩ U′ = " + Y.to_string() + " in U′ = " +
               sub->U().to_string();
    }
    return std::nullopt;
  };
}

Claim system_claim(std::string id, Status status, Domain domain, std::string summary, SystemCheck check) {
  return {id, status, std::move(summary), [=](const SearchConfig& config) {
            return run_system_claim(status, domain, check, config, claim_seed(config.seed, id));
          }};
}

Claim set_claim(std::string id, Status status, Domain domain, std::string summary, SetPredicate pred) {
  return system_claim(std::move(id), status, domain, std::move(summary), over_candidates(std::move(pred)));
}

Claim theorem(std::string id, std::string summary, SetPredicate pred) {
  return set_claim(std::move(id), Status::Theorem, Domain::Atomic, std::move(summary), std::move(pred));
}

Claim independent(std::string id, std::string summary, SetPredicate pred) {
  return set_claim(std::move(id), Status::Theorem, Domain::Independent, std::move(summary), std::move(pred));
}

Claim refutable(std::string id, std::string summary, SetPredicate pred) {
  return set_claim(std::move(id), Status::Refutable, Domain::Atomic, std::move(summary), std::move(pred));
}

Claim custom(std::string id, Status status, std::string summary, CustomRun run) {
  return {id, status, std::move(summary), [=](const SearchConfig& config) {
            return run_custom_claim(status, run, config, claim_seed(config.seed, id));
          }};
}

Claim golden(std::string id, std::string summary, std::function<Outcome()> fn) {
  return custom(std::move(id), Status::Theorem, std::move(summary),
                [fn](const SearchConfig&, std::uint64_t) { return fn(); });
}

Model bits(std::string_view b) { return Model::from_bits(b); }
ModelSet set_of(std::vector<std::string> b) { return ModelSet::from_bits(b); }

std::string str(Model m) { return m.to_string(); }

/// Runs `fn(x, y, z)` over all ordered triples of U′; `fn` returns a note on violation.
template <class Fn>
Outcome triples(Ctx& c, Fn&& fn) {
  Outcome out;
  for (Model x : c.U())
    for (Model y : c.U())
      for (Model z : c.U()) {
        ++out.instances;
        if (auto note = fn(x, y, z)) {
          out.violation = Violation{ModelSet{x, y, z}, *note, std::nullopt};
          return out;
        }
      }
  return out;
}

template <class Fn>
Outcome pairs(Ctx& c, Fn&& fn) {
  Outcome out;
  for (Model x : c.U())
    for (Model y : c.U()) {
      ++out.instances;
      if (auto note = fn(x, y)) {
        out.violation = Violation{ModelSet{x, y}, *note, std::nullopt};
        return out;
      }
    }
  return out;
}

using Note = std::optional<std::string>;

Note distance_laws(const Metric& m, Model x, Model y, Model z) {
  const IndexFamily& f = m.family;
  if (!dist_set(x, x, f).empty()) return "d(x,x) ≠ ∅ for x = " + str(x);
  if (dist_set(x, y, f) != dist_set(y, x, f)) return "d(x,y) ≠ d(y,x) for " + str(x) + ", " + str(y);
  Coords xy = dist_set(x, y, f).bits, yz = dist_set(y, z, f).bits, xz = dist_set(x, z, f).bits;
  if ((xz & ~(xy | yz)) != 0) return "d(x,z) ⊄ d(x,y) ∪ d(y,z)";
  if (dist_count(x, z, f).value > dist_count(x, y, f).value + dist_count(y, z, f).value)
    return "counting distance violates the triangle inequality";
  if (dist_count(x, y, f).value != dist_set(x, y, f).size()) return "d_c(x,y) ≠ |d_s(x,y)|";
  return std::nullopt;
}

Note quality_distance(Ctx& c, Model a, Model b, Model d) {
  const QualityRelation& q = c.qs();
  const IndexFamily& f = c.sys.family();
  auto minus = [&](Model x, Model y) { return profile(x, f).bits & ~profile(y, f).bits; };
  if (q.at_least_as_good(a, b) && dist_set(a, b, f).bits != minus(a, b)) return "x ≼ y but d(x,y) ≠ 𝒪(x) − 𝒪(y)";
  if (q.better(a, b) && q.better(b, d)) {
    Coords ab = dist_set(a, b, f).bits, bd = dist_set(b, d, f).bits;
    if (compare_distances(Variant::Set, ab, bd) != DistanceOrder::Incomparable)
      return "a ≺ b ≺ c but d(a,b) and d(b,c) are comparable";
    if (dist_set(a, d, f).bits != (ab | bd)) return "a ≺ b ≺ c but d(a,c) ≠ d(a,b) ∪ d(b,c)";
    if (!between(a, b, d, c.ms())) return "a ≺ b ≺ c but b ∉ [a,c]";
  }
  if (q.better(a, d) && q.better(b, d) && q.compare(a, b) == Order::Incomparable &&
      compare_distances(Variant::Set, dist_set(a, d, f).bits, dist_set(b, d, f).bits) != DistanceOrder::Incomparable)
    return "x ≺ y, x′ ≺ y, x ⋈ x′ but d(x,y) and d(x′,y) are comparable";
  if (q.better(a, d) && between(a, b, d, c.ms()) && !(q.at_least_as_good(a, b) && q.at_least_as_good(b, d)))
    return "x ≺ z and y ∈ [x,z] but not x ≼ y ≼ z";
  return std::nullopt;
}

Note subset_closure(Ctx& c, const ModelSet& X, const QualityRelation& q) {
  if (!is_downward_closed(X, c.U(), q).holds) return std::nullopt;
  for (const ModelSet& extra : c.subsets(subtract(c.U(), X), 5, 12)) {
    ModelSet mid = unite(X, extra);
    if (!is_downward_closed(X, mid, q).holds) return "X closed in U″ but not in U′ = " + mid.to_string();
  }
  for (const ModelSet& D : c.subsets(X, 6, 16))
    if (is_downward_closed(D, X, q).holds && !is_downward_closed(D, c.U(), q).holds)
      return "D = " + D.to_string() + " closed in closed X but not in U″";
  return std::nullopt;
}

Note union_intersection(Ctx& c, const ModelSet& X, const Prop& kind, const std::vector<ModelSet>& others) {
  if (!kind.test(c, X)) return std::nullopt;
  for (const ModelSet& Y : others) {
    if (!kind.test(c, Y)) continue;
    if (!kind.test(c, unite(X, Y))) return "X ∪ " + Y.to_string() + " is not " + kind.name;
    if (!kind.test(c, intersect(X, Y))) return "X ∩ " + Y.to_string() + " is not " + kind.name;
  }
  return std::nullopt;
}

std::vector<ModelSet> principal_downsets(Ctx& c) {
  std::vector<ModelSet> out;
  for (Model m : c.U()) out.push_back(c.down(ModelSet{m}, c.qs()));
  for (std::size_t i = 0; i < c.U().size(); ++i)
    for (std::size_t j = i + 1; j < c.U().size(); ++j) out.push_back(c.down(ModelSet{c.U()[i], c.U()[j]}, c.qs()));
  return out;
}

std::vector<ModelSet> ui_sets(Ctx& c) {
  std::vector<ModelSet> out = {ModelSet(), c.U()};
  for (const ModelSet& o : c.sys.obligations()) out.push_back(intersect(o, c.U()));
  const IndexFamily& f = c.sys.family();
  for (Model m : c.U()) {
    Coords need = profile(m, f).bits;
    std::vector<Model> members;
    for (Model u : c.U())
      if ((profile(u, f).bits & need) == need) members.push_back(u);
    out.emplace_back(std::move(members));
  }
  return out;
}

Note neighbourhood_laws(Ctx& c, const ModelSet& X, const Metric& m) {
  if (!is_neighbourhood(X, X, c.U(), m).holds) return "X is not a neighbourhood of itself";
  if (!is_neighbourhood(c.U(), X, c.U(), m).holds) return "U′ is not a neighbourhood of X";
  std::vector<ModelSet> hoods;
  for (const ModelSet& extra : c.subsets(subtract(c.U(), X), 4, 8)) {
    ModelSet Y = unite(X, extra);
    if (is_neighbourhood(Y, X, c.U(), m).holds) hoods.push_back(std::move(Y));
  }
  for (const ModelSet& A : hoods)
    for (const ModelSet& B : hoods) {
      if (!is_neighbourhood(unite(A, B), X, c.U(), m).holds) return "union of neighbourhoods " + A.to_string() + ", " + B.to_string();
      if (!is_neighbourhood(intersect(A, B), X, c.U(), m).holds)
        return "intersection of neighbourhoods " + A.to_string() + ", " + B.to_string();
    }
  return std::nullopt;
}

// Fixed examples.

Outcome example_count() {
  SystemSpec spec = fixture("count");
  const IndexFamily& f = spec.system.family();
  Metric mc{f, Variant::Count};
  Model x = bits("001"), y = bits("110"), z = bits("000");
  Golden g;
  g.expect(dist_count(x, y, f).value == 3, "d_c(001, 110) = 3");
  g.expect(dist_count(x, z, f).value == 1, "d_c(001, 000) = 1");
  g.expect(dist_count(z, y, f).value == 2, "d_c(000, 110) = 2");
  g.expect(!between(y, x, z, mc), "not ⟨110, 001, 000⟩ under d_c");
  g.expect(!interval(y, z, spec.system.restriction(), mc).contains(x), "001 ∉ [110, 000]_c");
  g.expect(spec.quality.better(y, x) && spec.quality.better(x, z), "110 ≺_c 001 ≺_c 000");
  g.expect(profile(x, f).indices() == std::vector<std::size_t>{2}, "𝒪(001) = {r}");
  return g.outcome(to_json(spec));
}

Outcome example_dependent_1() {
  SystemSpec spec = fixture("dependent-1");
  const ObligationSystem& sys = spec.system;
  ModelSet X = set_of({"10"});
  QualityRelation q = sys.quality(Variant::Set);
  Golden g;
  g.expect(!is_independent(sys).holds, "p, q dependent in U′ = {10, 01}");
  g.expect(is_downward_closed(X, sys.restriction(), q).holds, "{10} closed");
  g.expect(best_elements(sys.restriction(), q) == sys.restriction(), "both models best");
  g.expect(!is_subset(best_elements(sys.restriction(), q), X), "{10} misses a best model");
  g.expect(is_ui(X, sys).holds, "{10} is (ui)");
  return g.outcome(to_json(spec));
}

Outcome example_dependent_2() {
  SystemSpec spec = fixture("dependent-2");
  const ObligationSystem& sys = spec.system;
  const IndexFamily& f = sys.family();
  const ModelSet& U = sys.restriction();
  QualityRelation q = sys.quality(Variant::Set);
  Metric ms{f, Variant::Set};
  Model x = bits("1000"), y = bits("0100"), xp = bits("1111");
  ModelSet X{x, xp};
  DeltaAssignment delta{(Coords{1} << 2) | (Coords{1} << 3), 0};
  Golden g;
  g.expect(best_elements(U, q) == ModelSet{xp}, "best = {1111}");
  g.expect(is_downward_closed(X, U, q).holds, "X closed");
  g.expect(dist_set(x, y, f).bits == 0b0011, "d_s(x, y) = {p, q}");
  g.expect(dist_set(xp, y, f).bits == 0b1101, "d_s(x′, y) = {p, r, s}");
  g.expect(closest(y, X, ms) == X, "y ∥ X = {x, x′}");
  g.expect(q.compare(x, y) == Order::Incomparable, "x ⋈ y");
  LocalResult cp = ceteris_paribus_improving(X, U, q, ms);
  g.expect(!cp.holds && cp.witness && ModelSet{cp.witness->element, cp.witness->blocker} == ModelSet{x, y},
           "ceteris paribus fails between x and y");
  g.expect(satisfies_delta(x, delta, f) && satisfies_delta(y, delta, f) && !satisfies_delta(xp, delta, f),
           "x, y ⊨ δ(r) = δ(s) = 0, x′ ⊭ δ");
  DeltaResult d = delta_condition_holds(X, sys, delta);
  g.expect(!d.holds && d.witness && d.witness->inside == x && d.witness->outside == y, "δ condition fails via x, y");
  g.expect(!in_D_O(X, sys).holds, "X ∉ D(O)");
  return g.outcome(to_json(spec));
}

Outcome example_dependent_3() {
  SystemSpec spec = fixture("dependent-3");
  const ObligationSystem& sys = spec.system;
  const IndexFamily& f = sys.family();
  const ModelSet& U = sys.restriction();
  QualityRelation q = sys.quality(Variant::Set);
  Metric ms{f, Variant::Set};
  Model x = bits("110111"), xp = bits("011100"), xpp = bits("101000"), y = bits("100000"), z = bits("110000");
  ModelSet best{x, xp, xpp}, X{x, xp, xpp, z};
  auto coords = [&](std::initializer_list<int> idx) {
    Coords c = 0;
    for (int i : idx) c |= Coords{1} << i;
    return c;
  };
  Golden g;
  g.expect(best_elements(U, q) == best, "best = {x, x′, x″}");
  g.expect(is_downward_closed(X, U, q).holds, "X closed");
  g.expect(dist_set(z, x, f).bits == coords({3, 4, 5}), "d(z, x) = {s, t, u}");
  g.expect(dist_set(z, xp, f).bits == coords({0, 2, 3}), "d(z, x′) = {p, r, s}");
  g.expect(dist_set(z, xpp, f).bits == coords({1, 2}), "d(z, x″) = {q, r}");
  g.expect(closest(z, best, ms) == best, "z ∥ best = best");
  g.expect(interval(z, xpp, U, ms) == ModelSet{z, y, xpp}, "[z, x″] = {z, y, x″}");
  NeighbourhoodResult n = is_neighbourhood(X, best, U, ms);
  g.expect(!n.holds && n.witness && n.witness->escaped == y, "X is not a neighbourhood of best, y escapes");
  g.expect(is_improving_neighbourhood(X, best, U, ms, q).holds, "X is an improving neighbourhood of best");
  return g.outcome(to_json(spec));
}

Outcome example_not_global() {
  SystemSpec spec = fixture("not-global");
  const ObligationSystem& sys = spec.system;
  const ModelSet& U = sys.restriction();
  QualityRelation qc = sys.quality(Variant::Count), qs = sys.quality(Variant::Set);
  Metric mc{sys.family(), Variant::Count}, ms{sys.family(), Variant::Set};
  Model xp = bits("1111"), yp = bits("1110"), x = bits("0010"), y = bits("0000");
  ModelSet X{x, xp};
  Golden g;
  g.expect(qc.better(xp, yp) && qc.better(yp, x) && qc.better(x, y), "x′ ≺_c y′ ≺_c x ≺_c y");
  g.expect(closest(yp, X, mc) == ModelSet{xp}, "y′ ∥_c X = {x′}");
  g.expect(closest(y, X, mc) == ModelSet{x}, "y ∥_c X = {x}");
  g.expect(ceteris_paribus_improving(X, U, qc, mc).holds, "X ≺_l,c (U′ − X)");
  ClosureResult cl = is_downward_closed(X, U, qc);
  g.expect(!cl.holds && cl.witness == std::pair<Model, Model>(yp, x), "count closure fails with y′ ≼ x");
  g.expect(!ceteris_paribus_improving(X, U, qs, ms).holds, "set ceteris paribus fails");
  return g.outcome(to_json(spec));
}

Outcome example_h_n_local() {
  SystemSpec spec = fixture("h-n-local");
  const ObligationSystem& sys = spec.system;
  const ModelSet& U = sys.restriction();
  QualityRelation qc = sys.quality(Variant::Count);
  Metric mc{sys.family(), Variant::Count};
  Model a = bits("0000"), b = bits("0001"), c = bits("0010"), d = bits("1110");
  ModelSet X{a, c, d}, best = best_elements(U, qc);
  Golden g;
  g.expect(best == ModelSet{d}, "best = {d}");
  g.expect(interval(a, d, U, mc) == X, "[a, d]_c = {a, c, d}");
  g.expect(is_improving_neighbourhood(X, best, U, mc, qc).holds, "X is an improving neighbourhood of best");
  g.expect(qc.better(b, a), "b ≺_c a");
  g.expect(!ceteris_paribus_improving(X, U, qc, mc).holds, "X ≺_l,c (U′ − X) fails");
  return g.outcome(to_json(spec));
}

Outcome example_burnt_letter() {
  SystemSpec spec = fixture("ross");
  const ObligationSystem& sys = spec.system;
  ModelSet X = models_of(parse_formula("p | ~q", sys.vocab()), sys.vocab(), sys.restriction());
  ObligationVerdict v = check_hard_obligation(X, sys, spec.quality);
  Golden g;
  g.expect(X == set_of({"11", "10", "00"}), "p ∨ ¬q = {11, 10, 00}");
  g.expect(!v.accepted, "p ∨ ¬q rejected");
  g.expect(!v.downward_closed && !v.closure_exceptions.empty() &&
               v.closure_exceptions.front() == ModelPair(bits("01"), bits("00")),
           "closure witness (01, 00)");
  g.expect(render_relation(bits("01"), bits("00"), spec.quality) == "01 ≺ 00", "rendered 01 ≺ 00");
  return g.outcome(to_json(spec));
}

Outcome example_ross_paradox() {
  SystemSpec spec = fixture("ross");
  const ObligationSystem& sys = spec.system;
  auto verdict = [&](const char* text) {
    return check_hard_obligation(models_of(parse_formula(text, sys.vocab()), sys.vocab(), sys.restriction()), sys,
                                 spec.quality);
  };
  Golden g;
  g.expect(verdict("p").accepted, "p accepted");
  g.expect(!verdict("p | ~q").accepted, "p ∨ ¬q rejected");
  g.expect(verdict("p | q").accepted, "p ∨ q accepted");
  g.expect(verdict("p & q").accepted, "p ∧ q accepted");
  return g.outcome(to_json(spec));
}

Outcome example_three_obligations() {
  SystemSpec spec = fixture("three-obligations");
  const ObligationSystem& sys = spec.system;
  QualityRelation qs = sys.quality(Variant::Set), qc = sys.quality(Variant::Count);
  Model x = bits("100"), y = bits("011");
  Golden g;
  g.expect(qs.compare(x, y) == Order::Incomparable, "100 ⋈_s 011");
  g.expect(qc.better(y, x), "011 ≺_c 100");
  g.expect(qs.better(x, bits("000")), "100 ≺_s 000");
  return g.outcome(to_json(spec));
}

Outcome example_considerate_assassin() {
  SystemSpec total = fixture("assassin"), partial = fixture("assassin-partial");
  const ObligationSystem& sys = total.system;
  ModelSet X = models_of(parse_formula("~o", sys.vocab()), sys.vocab(), sys.restriction());
  ObligationVerdict hard = check_hard_obligation(X, sys, total.quality);
  SoftSizes two = SoftSizes::uniform(FractionSize{0.125});
  ObligationVerdict soft_total = check_soft_obligation(X, sys, total.quality, two);
  SoftSizes one = SoftSizes::uniform(FractionSize{0.1});
  ObligationVerdict soft_partial = check_soft_obligation(X, partial.system, partial.quality, one);
  ModelPair ko_kno(bits("11"), bits("10"));
  Golden g;
  g.expect(total.quality.better(bits("00"), bits("01")) && total.quality.better(bits("01"), bits("11")) &&
               total.quality.better(bits("11"), bits("10")),
           "¬k∧¬o ≺ ¬k∧o ≺ k∧o ≺ k∧¬o");
  g.expect(X == set_of({"00", "10"}), "¬o = {00, 10}");
  g.expect(!hard.accepted && !hard.downward_closed, "¬o is not a hard obligation");
  g.expect(soft_total.closure_exceptions == std::vector<ModelPair>{{bits("01"), bits("10")}, ko_kno},
           "total ranking: closure exceptions (01, 10), (11, 10)");
  g.expect(soft_partial.closure_exceptions == std::vector<ModelPair>{ko_kno}, "partial order: exception (11, 10) only");
  g.expect(soft_partial.downward_closed, "one-pair budget absorbs the exception");
  g.expect(soft_partial.accepted, "¬o is a soft obligation under the partial order");
  return g.outcome(to_json(partial));
}

Outcome example_library() {
  SystemSpec spec = fixture("library");
  const ObligationSystem& sys = spec.system;
  auto X_of = [&](const char* text) {
    return models_of(parse_formula(text, sys.vocab()), sys.vocab(), sys.restriction());
  };
  ModelSet not_w = X_of("~w");
  // Distances over the variables.
  ObligationOptions opts;
  opts.basis = Basis::Variables;
  ObligationVerdict hard = check_hard_obligation(not_w, sys, spec.quality, opts);
  ObligationVerdict soft =
      check_soft_obligation(not_w, sys, spec.quality, SoftSizes::uniform(to_size_spec(*spec.size)), opts);
  SoftSizes strict = SoftSizes::uniform(FractionSize{0.0});
  strict.ideal = FractionSize{0.5};
  ObligationVerdict ideal_only = check_soft_obligation(not_w, sys, spec.quality, strict, opts);
  Golden g;
  g.expect(best_elements(sys.restriction(), spec.quality) == set_of({"00", "11"}), "best = {00, 11}");
  g.expect(check_hard_obligation(X_of("f | ~w"), sys, spec.quality, opts).accepted, "f ∨ ¬w is a hard obligation");
  g.expect(!hard.accepted && !hard.contains_ideal, "¬w is not a hard obligation");
  g.expect(soft.accepted, "¬w is a soft obligation at ε = 0.5");
  g.expect(soft.ideal_exceptions == std::vector<Model>{bits("11")}, "ideal exception 11");
  g.expect(!ideal_only.accepted, "¬w rejected when only ideal cases may fail");
  return g.outcome(to_json(spec));
}

// Checks over whole vocabularies.

Outcome interval_agreement(const SearchConfig& config) {
  Outcome out;
  for (std::size_t n = 1; n <= std::min<std::size_t>(4, std::max<std::size_t>(1, config.max_vars)); ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    IndexFamily vars = IndexFamily::variables(Vocabulary(names));
    Metric ms{vars, Variant::Set}, mc{vars, Variant::Count};
    ModelSet U = ModelSet::universe(n);
    for (Model a : U)
      for (Model c : U) {
        ++out.instances;
        std::vector<Model> agree;
        for (Model b : U) {
          std::uint32_t same = ~(a.code() ^ c.code());
          if (((b.code() ^ a.code()) & same & ((1u << n) - 1)) == 0) agree.push_back(b);
          Coords ab = dist_set(a, b, vars).bits, bc = dist_set(b, c, vars).bits;
          bool inside = ((b.code() ^ a.code()) & same & ((1u << n) - 1)) == 0;
          if (inside && (ab & bc) != 0) {
            out.violation = Violation{ModelSet{a, b, c}, "agreeing model with overlapping distances", std::nullopt};
            return out;
          }
        }
        ModelSet A(std::move(agree));
        if (interval(a, c, U, ms) != A || interval(a, c, U, mc) != A) {
          out.violation = Violation{ModelSet{a, c}, "interval differs from the models agreeing with both ends",
                                    std::nullopt};
          return out;
        }
      }
  }
  return out;
}

Outcome hamming_neighbourhood(const SearchConfig& config) {
  Outcome out;
  for (std::size_t n = 1; n <= std::min<std::size_t>(4, std::max<std::size_t>(1, config.max_vars)); ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    Vocabulary vocab(names);
    Metric ms{IndexFamily::variables(vocab), Variant::Set};
    ModelSet U = ModelSet::universe(n);
    for (Model a : U)
      for (Model b : U) {
        ++out.instances;
        if (models_of(strongest_conjunction(ModelSet{a, b}), vocab, U) != interval(a, b, U, ms)) {
          out.violation = Violation{ModelSet{a, b}, "models of the strongest conjunction differ from [x, y]", std::nullopt};
          return out;
        }
      }
  }
  return out;
}

Outcome product_pref(const SearchConfig&, std::uint64_t seed) {
  Rng rng(seed);
  Outcome out;
  for (int n1 = 1; n1 <= 3; ++n1)
    for (int n2 = 1; n2 <= 3; ++n2) {
      int off1 = n1 * (n1 - 1), off2 = n2 * (n2 - 1);
      auto relation = [](int n, std::uint32_t mask) {
        return PreferentialSize<int>{[n, mask](const int& a, const int& b) {
          if (a == b) return true;
          int idx = a * (n - 1) + (b < a ? b : b - 1);
          return ((mask >> idx) & 1u) != 0;
        }};
      };
      std::vector<int> X(n1), Xp(n2);
      for (int i = 0; i < n1; ++i) X[i] = i;
      for (int i = 0; i < n2; ++i) Xp[i] = i;
      std::vector<std::pair<int, int>> carrier;
      for (int a : X)
        for (int b : Xp) carrier.emplace_back(a, b);
      std::vector<std::vector<std::pair<int, int>>> Cs;
      std::size_t m = carrier.size();
      if (m <= 6) {
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
          std::vector<std::pair<int, int>> C;
          for (std::size_t i = 0; i < m; ++i)
            if ((mask >> i) & 1u) C.push_back(carrier[i]);
          Cs.push_back(std::move(C));
        }
      } else {
        Cs.push_back(carrier);
        for (std::size_t skip = 0; skip < m; ++skip) {
          std::vector<std::pair<int, int>> C;
          for (std::size_t i = 0; i < m; ++i)
            if (i != skip) C.push_back(carrier[i]);
          Cs.push_back(std::move(C));
        }
        for (int r = 0; r < 16; ++r) {
          std::vector<std::pair<int, int>> C;
          for (const auto& p : carrier)
            if (rng.chance(0.6)) C.push_back(p);
          Cs.push_back(std::move(C));
        }
      }
      for (std::uint32_t r1 = 0; r1 < (1u << off1); ++r1)
        for (std::uint32_t r2 = 0; r2 < (1u << off2); ++r2) {
          SizeSpec<int> s1 = relation(n1, r1), s2 = relation(n2, r2);
          SizeSpec<std::pair<int, int>> prod = product_preference(std::get<PreferentialSize<int>>(s1),
                                                                  std::get<PreferentialSize<int>>(s2));
          for (const auto& C : Cs) {
            ++out.instances;
            if (product_is_big(C, X, Xp, s1, s2) != is_big(C, carrier, prod)) {
              out.violation = Violation{std::nullopt,
                                        "carriers " + std::to_string(n1) + "×" + std::to_string(n2) + ", relations " +
                                            std::to_string(r1) + "/" + std::to_string(r2) +
                                            ": product filter disagrees with the product relation",
                                        Json()};
              return out;
            }
          }
        }
    }
  return out;
}

Outcome ross_derivable(const SearchConfig&, std::uint64_t) {
  SystemSpec spec = fixture("ross");
  const ObligationSystem& sys = spec.system;
  ModelSet X = models_of(parse_formula("p | ~q", sys.vocab()), sys.vocab(), sys.restriction());
  ObligationVerdict v = check_hard_obligation(X, sys, spec.quality);
  Outcome out;
  out.instances = 1;
  if (!v.accepted) {
    std::string note = "p ∨ ¬q is not derivable from p";
    if (!v.closure_exceptions.empty())
      note += ": " + render_relation(v.closure_exceptions.front().first, v.closure_exceptions.front().second,
                                     spec.quality);
    out.violation = Violation{X, note, to_json(spec)};
  }
  return out;
}

}  // namespace

std::vector<Claim> build_claims() {
  const Status T = Status::Theorem, R = Status::Refutable;
  std::vector<Claim> out;

  out.push_back(golden("example-count", "counting distance and quality on three atomic obligations", example_count));
  out.push_back(golden("example-dependent-1", "closed (ui) set missing a best model", example_dependent_1));
  out.push_back(golden("example-dependent-2", "closed set with best, not ceteris paribus, not in D(O)",
                       example_dependent_2));
  out.push_back(golden("example-dependent-3", "closed set with best, not a neighbourhood of best", example_dependent_3));
  out.push_back(golden("example-not-global", "count ceteris paribus without count closure", example_not_global));
  out.push_back(golden("example-h-n-local", "improving neighbourhood without count ceteris paribus", example_h_n_local));
  out.push_back(golden("example-burnt-letter", "p ∨ ¬q rejected with witness 01 ≺ 00", example_burnt_letter));
  out.push_back(golden("example-ross-paradox", "p obligatory, p ∨ ¬q not", example_ross_paradox));
  out.push_back(golden("example-3-obligations", "one fulfilled obligation against two", example_three_obligations));
  out.push_back(golden("example-considerate-assassin", "¬o only softly closed", example_considerate_assassin));
  out.push_back(golden("example-library", "¬w a soft but not a hard obligation", example_library));

  out.push_back(system_claim("distance-laws", T, Domain::Atomic, "d(x,x) = ∅, symmetry, triangle inequality",
                             [](Ctx& c) {
                               return triples(c, [&](Model x, Model y, Model z) {
                                 if (auto n = distance_laws(c.ms(), x, y, z)) return n;
                                 return distance_laws(c.vars_set(), x, y, z);
                               });
                             }));
  out.push_back(system_claim("betweenness-symmetry", T, Domain::Atomic, "⟨x,y,z⟩ iff ⟨z,y,x⟩", [](Ctx& c) {
    return triples(c, [&](Model x, Model y, Model z) -> Note {
      for (const Metric* m : {&c.ms(), &c.mc(), &c.vars_set(), &c.vars_count()})
        if (between(x, y, z, *m) != between(z, y, x, *m)) return "betweenness not symmetric";
      return std::nullopt;
    });
  }));
  out.push_back(custom("interval-agreement", T, "[x,z] is the set of models agreeing with x and z where they agree",
                       [](const SearchConfig& c, std::uint64_t) { return interval_agreement(c); }));
  out.push_back(custom("hamming-neighbourhood", T, "models of φ_{x,y} are exactly [x,y]",
                       [](const SearchConfig& c, std::uint64_t) { return hamming_neighbourhood(c); }));
  out.push_back(theorem("subset-closure", "closure survives shrinking U′ and is transitive over subsets",
                        [](Ctx& c, const ModelSet& X) -> Note {
                          if (auto n = subset_closure(c, X, c.qs())) return n;
                          return subset_closure(c, X, c.qc());
                        }));
  out.push_back(system_claim("quality-distance", T, Domain::Atomic, "set quality and set distance agree", [](Ctx& c) {
    return triples(c, [&](Model a, Model b, Model d) { return quality_distance(c, a, b, d); });
  }));
  out.push_back(theorem("general-obligation", "X ≺_l (U′ − X) and X ≠ ∅ imply best ⊆ X",
                        [](Ctx& c, const ModelSet& X) -> Note {
                          if (auto n = implies(all({kNonempty, kCpS}), kBestS)(c, X)) return n;
                          return implies(all({kNonempty, kCpC}), kBestC)(c, X);
                        }));
  out.push_back(theorem("local-implies-closed", "X ≺_l,s (U′ − X) implies closed", implies(kCpS, kClosedS)));
  out.push_back(theorem("count-closed", "count closure implies count ceteris paribus", implies(kClosedC, kCpC)));
  out.push_back(theorem("neighbourhood-laws", "X and U′ are neighbourhoods of X; neighbourhoods closed under ∪ and ∩",
                        [](Ctx& c, const ModelSet& X) -> Note {
                          for (const Metric* m : {&c.vars_set(), &c.vars_count()})
                            if (auto n = neighbourhood_laws(c, X, *m)) return n;
                          return std::nullopt;
                        }));
  out.push_back(system_claim("count-comparable", T, Domain::Atomic, "any two models are ≼_c comparable", [](Ctx& c) {
    return pairs(c, [&](Model x, Model y) -> Note {
      if (c.qc().compare(x, y) == Order::Incomparable) return "incomparable under ≼_c";
      return std::nullopt;
    });
  }));
  out.push_back(theorem("count-closed-contains-best", "nonempty count-closed sets contain the count-best models",
                        implies(all({kNonempty, kClosedC}), kBestC)));
  out.push_back(theorem("closed-implies-ui", "closed sets are (ui)", implies(kClosedS, kUi)));
  out.push_back(theorem("closed-best-implies-improving-neighbourhood",
                        "closed sets containing best are improving neighbourhoods of best",
                        implies(all({kNonempty, kClosedS, kBestS}), kImprovingS)));
  out.push_back(theorem("cp-implies-best", "nonempty X ≺_l,s (U′ − X) contains best", implies(all({kNonempty, kCpS}), kBestS)));
  out.push_back(theorem("ui-implies-closed", "(ui) sets are closed", implies(kUi, kClosedS)));
  out.push_back(theorem("delta-implies-closed", "members of D(O) are closed", implies(kDelta, kClosedS)));
  out.push_back(theorem("delta-implies-best", "nonempty members of D(O) contain best", implies(all({kNonempty, kDelta}), kBestS)));
  out.push_back(theorem("improving-neighbourhood-implies-closed", "improving neighbourhoods of best are closed",
                        implies(kImprovingS, kClosedS)));
  out.push_back(theorem("improving-neighbourhood-implies-best", "improving neighbourhoods of best contain best",
                        implies(kImprovingS, kBestS)));

  out.push_back(independent("independent-closed-contains-best", "independent: nonempty closed sets contain best",
                            implies(all({kNonempty, kClosedS}), kBestS)));
  out.push_back(independent("independent-closed-cp", "independent: closed sets are ceteris paribus improving",
                            implies(kClosedS, kCpS)));
  out.push_back(independent("independent-closed-ui", "independent: closed sets are (ui)", implies(kClosedS, kUi)));
  out.push_back(independent("independent-closed-delta", "independent: closed sets are in D(O)", implies(kClosedS, kDelta)));
  out.push_back(independent("independent-closed-neighbourhood",
                            "independent: nonempty closed sets are neighbourhoods of best",
                            implies(all({kNonempty, kClosedS}), kNbhdS)));
  out.push_back(independent("independent-cp-implies-closed", "independent: ceteris paribus improving sets are closed",
                            implies(kCpS, kClosedS)));
  out.push_back(independent("independent-ui-implies-closed", "independent: (ui) sets are closed", implies(kUi, kClosedS)));
  out.push_back(independent("independent-delta-implies-closed", "independent: members of D(O) are closed",
                            implies(kDelta, kClosedS)));
  out.push_back(independent("independent-neighbourhood-implies-closed",
                            "independent: neighbourhoods of best are closed", implies(kNbhdS, kClosedS)));

  out.push_back(theorem("closed-union-intersection", "closed sets are closed under ∪ and ∩",
                        [](Ctx& c, const ModelSet& X) {
                          return union_intersection(c, X, kClosedS, principal_downsets(c));
                        }));
  out.push_back(theorem("ui-union-intersection", "(ui) sets are closed under ∪ and ∩",
                        [](Ctx& c, const ModelSet& X) { return union_intersection(c, X, kUi, ui_sets(c)); }));
  out.push_back(theorem("relativization-closed", "closure of X in U″ gives closure of X ∩ U′ in U′",
                        relativized(kClosedS, kClosedS)));
  out.push_back(custom("product-pref", T, "product filter equals the filter of the product relation", product_pref));
  out.push_back(system_claim("garbage-in", T, Domain::Independent, "independent: every basic obligation is derived",
                             [](Ctx& c) {
                               Outcome o;
                               for (const ModelSet& O : c.sys.obligations()) {
                                 ++o.instances;
                                 ModelSet X = intersect(O, c.U());
                                 if (!check_hard_obligation(X, c.sys, c.qs()).accepted) {
                                   o.violation = Violation{X, "basic obligation rejected", std::nullopt};
                                   break;
                                 }
                               }
                               return o;
                             }));
  out.push_back(system_claim("classical-consequence", T, Domain::Independent,
                             "independent: derived obligations are classical consequences", [](Ctx& c) {
                               Outcome o;
                               for (const ModelSet& X : derive_obligations(c.sys, c.qs()).sets) {
                                 ++o.instances;
                                 if (!is_classical_consequence(X, c.sys)) {
                                   o.violation = Violation{X, "derived obligation not implied by ∩O", std::nullopt};
                                   break;
                                 }
                               }
                               return o;
                             }));

  out.push_back(system_claim("distance-zero-not-identity", R, Domain::Atomic, "d_s(x,y) = ∅ implies x = y", [](Ctx& c) {
    return pairs(c, [&](Model x, Model y) -> Note {
      if (x != y && dist_set(x, y, c.sys.family()).empty()) return "distinct models at distance ∅";
      return std::nullopt;
    });
  }));
  out.push_back(refutable("closed-implies-best", "nonempty closed sets contain best", implies(all({kNonempty, kClosedS}), kBestS)));
  out.push_back(refutable("closed-implies-cp-set", "closed sets containing best are ceteris paribus improving",
                          implies(all({kNonempty, kClosedS, kBestS}), kCpS)));
  out.push_back(refutable("closed+best-implies-neighbourhood", "closed sets containing best are neighbourhoods of best",
                          implies(all({kNonempty, kClosedS, kBestS}), kNbhdS)));
  out.push_back(refutable("closed+best-implies-delta", "closed sets containing best are in D(O)",
                          implies(all({kNonempty, kClosedS, kBestS}), kDelta)));
  out.push_back(refutable("ui-implies-contains-best", "nonempty (ui) sets contain best", implies(all({kNonempty, kUi}), kBestS)));
  out.push_back(refutable("cp-count-implies-improving-neighbourhood",
                          "count ceteris paribus implies count improving neighbourhood of best",
                          implies(all({kNonempty, kCpC}), kImprovingC)));
  out.push_back(refutable("improving-neighbourhood-count-implies-cp",
                          "count improving neighbourhood of best implies count ceteris paribus",
                          implies(kImprovingC, kCpC)));
  out.push_back(refutable("count-cp-implies-closed", "count ceteris paribus implies count closure", implies(kCpC, kClosedC)));
  out.push_back(refutable("relativization-best", "best ⊆ X survives restriction",
                          relativized(all({kNonempty, kClosedS, kBestS}), kBestS)));
  out.push_back(refutable("relativization-neighbourhood", "the neighbourhood property survives restriction",
                          relativized(all({kNonempty, kClosedS, kNbhdS}), kNbhdIfBestS)));
  out.push_back(refutable("relativization-delta", "membership in D(O) survives restriction", relativized(kDelta, kDelta)));
  out.push_back(refutable("relativization-cp-set", "set ceteris paribus survives restriction", relativized(kCpS, kCpS)));
  out.push_back(refutable("relativization-cp-count", "count ceteris paribus survives restriction", relativized(kCpC, kCpC)));
  out.push_back(system_claim("quality-distance-count", R, Domain::Atomic, "a ≺_c b ≺_c c implies b ∈ [a,c]_c",
                             [](Ctx& c) {
                               return triples(c, [&](Model a, Model b, Model d) -> Note {
                                 if (c.qc().better(a, b) && c.qc().better(b, d) && !between(a, b, d, c.mc()))
                                   return "a ≺_c b ≺_c c but b ∉ [a,c]_c";
                                 return std::nullopt;
                               });
                             }));
  out.push_back(custom("ross-derivable", R, "p ∨ ¬q is derivable from the obligation p", ross_derivable));
  return out;
}

}  // namespace deon::lab::engine
