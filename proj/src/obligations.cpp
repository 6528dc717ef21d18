#include "deon/obligations.hpp"

#include <algorithm>
#include <unordered_set>

#include "deon/errors.hpp"

namespace deon {

namespace {

IndexFamily make_family(const Vocabulary& vocab, std::vector<std::string> names, std::vector<ModelSet> sets) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw InvalidInput("obligation names must be nonempty");
    if (!seen.insert(n).second) throw InvalidInput("duplicate obligation '" + n + "'");
  }
  return IndexFamily::obligations(std::move(sets), std::move(names), vocab.size());
}

void require_within(const ModelSet& X, const ObligationSystem& sys, const char* what) {
  if (!is_subset(X, sys.restriction())) throw PreconditionViolation(std::string(what) + " requires X ⊆ U′");
}

Coords full_mask(std::size_t k) { return k >= 64 ? ~Coords{0} : (Coords{1} << k) - 1; }

}  // namespace

ObligationSystem::ObligationSystem(Vocabulary vocab, ModelSet restriction, std::vector<std::string> names,
                                   std::vector<ModelSet> obligations)
    : vocab_(std::move(vocab)),
      restriction_(std::move(restriction)),
      family_(make_family(vocab_, std::move(names), std::move(obligations))),
      variables_(IndexFamily::variables(vocab_)) {
  if (restriction_.empty()) throw EmptyUniverse("U′ must be nonempty");
  for (Model m : restriction_)
    if (m.width() != vocab_.size()) throw InvalidInput("U′ contains a model of the wrong width");
}

bool ObligationSystem::operator==(const ObligationSystem& o) const {
  return vocab_ == o.vocab_ && restriction_ == o.restriction_ && obligation_names() == o.obligation_names() &&
         obligations() == o.obligations();
}

bool satisfies_delta(Model m, const DeltaAssignment& delta, const IndexFamily& obligations) {
  return (obligations.coords(m) & delta.domain) == (delta.values & delta.domain);
}

IndependenceResult is_independent(const ObligationSystem& sys) {
  std::size_t k = sys.obligation_count();
  std::vector<Coords> seen;
  for (Model m : sys.restriction()) seen.push_back(sys.family().coords(m));
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  if (k < 64 && seen.size() == (std::size_t{1} << k)) return {};
  Coords candidate = 0;
  for (Coords c : seen) {
    if (c != candidate) break;
    ++candidate;
  }
  return {false, DeltaAssignment{full_mask(k), candidate}};
}

UiResult is_ui(const ModelSet& X, const ObligationSystem& sys) {
  require_within(X, sys, "(ui) check");
  const IndexFamily& fam = sys.family();
  std::vector<Coords> profiles;
  for (Model m : X) profiles.push_back(fam.coords(m));
  std::sort(profiles.begin(), profiles.end());
  profiles.erase(std::unique(profiles.begin(), profiles.end()), profiles.end());
  for (Model u : sys.restriction()) {
    if (X.contains(u)) continue;
    Coords cu = fam.coords(u);
    for (Coords p : profiles)
      if ((p & ~cu) == 0) return {false, {}, u};
  }
  UiResult out;
  for (Coords p : profiles) out.family.push_back(IndexSet{p});
  return out;
}

DeltaResult delta_condition_holds(const ModelSet& X, const ObligationSystem& sys, const DeltaAssignment& delta) {
  require_within(X, sys, "D(𝒪) check");
  const IndexFamily& fam = sys.family();
  std::vector<Model> inside, outside;
  for (Model m : sys.restriction())
    if (satisfies_delta(m, delta, fam)) (X.contains(m) ? inside : outside).push_back(m);
  if (inside.empty()) return {};
  for (Model out : outside) {
    Coords co = fam.coords(out);
    bool improved = std::any_of(inside.begin(), inside.end(), [&](Model in) {
      Coords ci = fam.coords(in);
      return ci != co && (co & ~ci) == 0;
    });
    if (!improved) return {false, DeltaWitness{delta, inside.front(), out}};
  }
  return {};
}

DeltaResult in_D_O(const ModelSet& X, const ObligationSystem& sys) {
  require_within(X, sys, "D(𝒪) check");
  std::size_t k = sys.obligation_count();
  if (k > kMaxDeltaObligations)
    throw PreconditionViolation("D(𝒪) check supports at most " + std::to_string(kMaxDeltaObligations) +
                                " obligations");
  Coords all = full_mask(k);
  for (Coords domain = 0; domain <= all; ++domain) {
    Coords values = 0;
    while (true) {
      if (auto r = delta_condition_holds(X, sys, DeltaAssignment{domain, values}); !r) return r;
      if (values == domain) break;
      values = (values - domain) & domain;
    }
  }
  return {};
}

bool is_classical_consequence(const ModelSet& X, const ObligationSystem& sys) {
  require_within(X, sys, "classical consequence check");
  Coords all = full_mask(sys.obligation_count());
  for (Model m : sys.restriction())
    if (sys.family().coords(m) == all && !X.contains(m)) return false;
  return true;
}

Metric metric_for(const ObligationSystem& sys, const ObligationOptions& options) {
  Basis basis = options.basis.value_or(sys.obligation_count() > 0 ? Basis::Obligations : Basis::Variables);
  return Metric{basis == Basis::Obligations ? sys.family() : sys.variables(), options.variant};
}

SoftSizes SoftSizes::uniform(const SizeSpec<Model>& spec) {
  validate(spec);
  if (const auto* f = std::get_if<FractionSize>(&spec)) return SoftSizes{*f, *f, *f, *f};
  const auto& p = std::get<PreferentialSize<Model>>(spec);
  auto pairs = product_preference(p, p);
  return SoftSizes{p, pairs, pairs, p};
}

namespace {

struct NeighbourhoodPair {
  ModelPair pair;  // (y, x)
  std::optional<Model> escape;
};

/// For each y ∈ X and each best x ≼ y closest to y, whether [x,y] ∩ U′ ⊆ X.
std::vector<NeighbourhoodPair> neighbourhood_pairs(const ModelSet& X, const ModelSet& best,
                                                   const ModelSet& universe, const QualityRelation& q,
                                                   const Metric& metric) {
  std::vector<NeighbourhoodPair> out;
  for (Model y : X) {
    std::vector<Model> anchors;
    for (Model b : best)
      if (q.at_least_as_good(b, y)) anchors.push_back(b);
    for (Model x : closest(y, ModelSet(std::move(anchors)), metric)) {
      NeighbourhoodPair np{{y, x}, std::nullopt};
      for (Model z : universe)
        if (!X.contains(z) && between(x, z, y, metric)) {
          np.escape = z;
          break;
        }
      out.push_back(np);
    }
  }
  return out;
}

void fill_common(ObligationVerdict& v, const ModelSet& X, const ObligationSystem& sys,
                 const ObligationOptions& options) {
  v.cp_required = options.require_cp;
  v.nontrivial_required = options.require_nontrivial;
  v.nontrivial = !X.empty() && X.size() != sys.restriction().size();
  v.ui = is_ui(X, sys).holds;
}

void finish(ObligationVerdict& v) {
  v.accepted = v.contains_ideal && v.downward_closed && v.improving_neighbourhood &&
               (!v.cp_required || v.ceteris_paribus) && (!v.nontrivial_required || v.nontrivial);
}

}  // namespace

ObligationVerdict check_hard_obligation(const ModelSet& X, const ObligationSystem& sys,
                                        const QualityRelation& q, const ObligationOptions& options) {
  require_within(X, sys, "obligation check");
  const ModelSet& U = sys.restriction();
  Metric metric = metric_for(sys, options);
  ObligationVerdict v;
  ModelSet best = best_elements(U, q);
  for (Model b : best)
    if (!X.contains(b)) v.ideal_exceptions.push_back(b);
  v.contains_ideal = v.ideal_exceptions.empty();

  ClosureResult closure = is_downward_closed(X, U, q);
  v.downward_closed = closure.holds;
  if (closure.witness) v.closure_exceptions.push_back(*closure.witness);

  v.improving_neighbourhood = v.contains_ideal;
  for (const auto& np : neighbourhood_pairs(X, best, U, q, metric))
    if (np.escape) {
      v.improving_neighbourhood = false;
      v.neighbourhood_exceptions.push_back(np.pair);
      v.neighbourhood_escape = np.escape;
      break;
    }

  LocalResult cp = ceteris_paribus_improving(X, U, q, metric);
  v.ceteris_paribus = cp.holds;
  v.cp_witness = cp.witness;

  fill_common(v, X, sys, options);
  finish(v);
  return v;
}

ObligationVerdict check_soft_obligation(const ModelSet& X, const ObligationSystem& sys,
                                        const QualityRelation& q, const SoftSizes& sizes,
                                        const ObligationOptions& options) {
  require_within(X, sys, "obligation check");
  const ModelSet& U = sys.restriction();
  Metric metric = metric_for(sys, options);
  ObligationVerdict v;
  v.soft = true;
  ModelSet best = best_elements(U, q);

  auto ideal = soft_forall(best.models(), [&](Model b) { return X.contains(b); }, sizes.ideal);
  v.contains_ideal = ideal.holds;
  v.ideal_exceptions = std::move(ideal.exceptions);

  std::vector<ModelPair> all_pairs;
  all_pairs.reserve(U.size() * U.size());
  for (Model a : U)
    for (Model b : U) all_pairs.emplace_back(a, b);
  auto closure = soft_forall(
      all_pairs,
      [&](const ModelPair& p) { return !(X.contains(p.second) && !X.contains(p.first) && q.at_least_as_good(p.first, p.second)); },
      sizes.closure);
  v.downward_closed = closure.holds;
  v.closure_exceptions = std::move(closure.exceptions);

  std::vector<ModelPair> carrier, escaping;
  for (const auto& np : neighbourhood_pairs(X, best, U, q, metric)) {
    carrier.push_back(np.pair);
    if (np.escape) escaping.push_back(np.pair);
  }
  auto neighbourhood = soft_forall(
      carrier,
      [&](const ModelPair& p) { return std::find(escaping.begin(), escaping.end(), p) == escaping.end(); },
      sizes.neighbourhood);
  v.improving_neighbourhood = neighbourhood.holds;
  v.neighbourhood_exceptions = std::move(neighbourhood.exceptions);

  SoftLocalResult cp = softly_locally_better(X, subtract(U, X), q, metric, sizes.cp);
  v.ceteris_paribus = cp.holds;
  v.cp_inner_exceptions = std::move(cp.inner.exceptions);
  v.cp_outer_exceptions = std::move(cp.outer.exceptions);

  fill_common(v, X, sys, options);
  finish(v);
  return v;
}

Derivation derive_obligations(const ObligationSystem& sys, const QualityRelation& q,
                              const ObligationOptions& options, std::size_t limit) {
  const ModelSet& U = sys.restriction();
  if (U.size() > kMaxDerivationUniverse)
    throw PreconditionViolation("derivation supports |U′| ≤ " + std::to_string(kMaxDerivationUniverse));

  // Equivalence classes of U′, ordered so that strictly better classes come first.
  std::vector<std::vector<Model>> classes;
  for (Model m : U) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const auto& c) { return q.compare(c.front(), m) == Order::Equivalent; });
    if (it == classes.end())
      classes.push_back({m});
    else
      it->push_back(m);
  }
  std::size_t n = classes.size();
  std::vector<std::size_t> depth(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (q.better(classes[j].front(), classes[i].front())) ++depth[i];
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return depth[a] < depth[b]; });
  std::vector<std::uint32_t> preds(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (q.better(classes[order[j]].front(), classes[order[i]].front())) preds[i] |= std::uint32_t{1} << j;

  Derivation out;
  std::vector<Model> members;
  auto visit = [&](auto&& self, std::size_t i, std::uint32_t included) -> void {
    if (i == n) {
      ModelSet X(members);
      if (check_hard_obligation(X, sys, q, options).accepted) out.sets.push_back(std::move(X));
      return;
    }
    if ((included & preds[i]) == preds[i]) {
      const auto& cls = classes[order[i]];
      members.insert(members.end(), cls.begin(), cls.end());
      self(self, i + 1, included | (std::uint32_t{1} << i));
      members.resize(members.size() - cls.size());
    }
    if (preds[i] != 0) self(self, i + 1, included);
  };
  visit(visit, 0, 0);

  std::sort(out.sets.begin(), out.sets.end(), [](const ModelSet& a, const ModelSet& b) { return a.canonical_less(b); });
  if (limit != 0 && out.sets.size() > limit) {
    out.sets.resize(limit);
    out.limit_exceeded = true;
  }
  return out;
}

}  // namespace deon
