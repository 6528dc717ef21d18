#include "deon/quality.hpp"

#include <algorithm>
#include <map>

#include "deon/errors.hpp"

namespace deon {

struct QualityRelation::Impl {
  Kind kind = Kind::DerivedSet;
  std::optional<IndexFamily> family;
  std::vector<ModelSet> layers;
  std::map<Model, std::size_t> rank;  // layer index, or node index for Partial
  std::vector<std::pair<Model, Model>> pairs;
  std::vector<std::vector<bool>> reach;  // reach[i][j]: node i ≺ node j
};

std::string_view to_string(Order o) {
  switch (o) {
    case Order::Better: return "better";
    case Order::Equivalent: return "equivalent";
    case Order::Worse: return "worse";
    case Order::Incomparable: return "incomparable";
  }
  return "incomparable";
}

QualityRelation QualityRelation::derived(IndexFamily obligations, Variant variant) {
  auto impl = std::make_shared<Impl>();
  impl->kind = variant == Variant::Set ? Kind::DerivedSet : Kind::DerivedCount;
  impl->family = std::move(obligations);
  return QualityRelation(std::move(impl));
}

QualityRelation QualityRelation::ranking(std::vector<ModelSet> layers) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Ranking;
  for (std::size_t i = 0; i < layers.size(); ++i)
    for (Model m : layers[i])
      if (!impl->rank.emplace(m, i).second)
        throw InvalidInput("model " + m.to_string() + " appears in two ranking layers");
  impl->layers = std::move(layers);
  return QualityRelation(std::move(impl));
}

QualityRelation QualityRelation::partial(const std::vector<std::pair<Model, Model>>& strict_pairs) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Partial;
  std::vector<Model> nodes;
  for (const auto& [a, b] : strict_pairs) {
    nodes.push_back(a);
    nodes.push_back(b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (std::size_t i = 0; i < nodes.size(); ++i) impl->rank.emplace(nodes[i], i);
  std::size_t n = nodes.size();
  impl->reach.assign(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : strict_pairs) impl->reach[impl->rank[a]][impl->rank[b]] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (impl->reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (impl->reach[k][j]) impl->reach[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (impl->reach[i][i]) throw InvalidInput("explicit order has a cycle through " + nodes[i].to_string());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (impl->reach[i][j]) impl->pairs.emplace_back(nodes[i], nodes[j]);
  return QualityRelation(std::move(impl));
}

QualityRelation::Kind QualityRelation::kind() const noexcept { return impl_->kind; }
const std::vector<ModelSet>& QualityRelation::layers() const noexcept { return impl_->layers; }
const std::vector<std::pair<Model, Model>>& QualityRelation::strict_pairs() const noexcept {
  return impl_->pairs;
}

Order QualityRelation::compare(Model x, Model y) const {
  if (x == y) return Order::Equivalent;
  switch (impl_->kind) {
    case Kind::DerivedSet: {
      Coords a = impl_->family->coords(x), b = impl_->family->coords(y);
      if (a == b) return Order::Equivalent;
      if ((b & ~a) == 0) return Order::Better;
      if ((a & ~b) == 0) return Order::Worse;
      return Order::Incomparable;
    }
    case Kind::DerivedCount: {
      int a = std::popcount(impl_->family->coords(x)), b = std::popcount(impl_->family->coords(y));
      if (a == b) return Order::Equivalent;
      return a > b ? Order::Better : Order::Worse;
    }
    case Kind::Ranking:
    case Kind::Partial: {
      auto ix = impl_->rank.find(x), iy = impl_->rank.find(y);
      if (ix == impl_->rank.end() || iy == impl_->rank.end()) return Order::Incomparable;
      std::size_t i = ix->second, j = iy->second;
      if (impl_->kind == Kind::Ranking) {
        if (i == j) return Order::Equivalent;
        return i < j ? Order::Better : Order::Worse;
      }
      if (impl_->reach[i][j]) return Order::Better;
      if (impl_->reach[j][i]) return Order::Worse;
      return Order::Incomparable;
    }
  }
  return Order::Incomparable;
}

ModelSet best_elements(const ModelSet& universe, const QualityRelation& q) {
  if (universe.empty()) throw EmptyUniverse("best elements of an empty set are undefined");
  std::vector<Model> out;
  for (Model x : universe) {
    bool dominated = std::any_of(universe.begin(), universe.end(), [&](Model y) { return q.better(y, x); });
    if (!dominated) out.push_back(x);
  }
  return ModelSet(std::move(out));
}

ClosureResult is_downward_closed(const ModelSet& X, const ModelSet& universe, const QualityRelation& q) {
  if (!is_subset(X, universe)) throw PreconditionViolation("closure check requires X ⊆ U′");
  for (Model x : X)
    for (Model y : universe)
      if (!X.contains(y) && q.at_least_as_good(y, x)) return {false, std::pair{y, x}};
  return {};
}

namespace {

std::optional<Model> inner_blocker(Model x, const ModelSet& Y, const QualityRelation& q, const Metric& metric) {
  for (Model y : closest(x, Y, metric))
    if (!q.better(x, y)) return y;
  return std::nullopt;
}

std::optional<Model> outer_blocker(Model y, const ModelSet& X, const QualityRelation& q, const Metric& metric) {
  for (Model x : closest(y, X, metric))
    if (!q.better(x, y)) return x;
  return std::nullopt;
}

}  // namespace

bool better_than_set(Model x, const ModelSet& Y, const QualityRelation& q, const Metric& metric) {
  return !inner_blocker(x, Y, q, metric);
}

LocalResult locally_better(const ModelSet& X, const ModelSet& Y, const QualityRelation& q,
                           const Metric& metric) {
  for (Model x : X)
    if (auto b = inner_blocker(x, Y, q, metric)) return {false, LocalWitness{LocalWitness::Side::Inner, x, *b}};
  for (Model y : Y)
    if (auto b = outer_blocker(y, X, q, metric)) return {false, LocalWitness{LocalWitness::Side::Outer, y, *b}};
  return {};
}

SoftLocalResult softly_locally_better(const ModelSet& X, const ModelSet& Y, const QualityRelation& q,
                                      const Metric& metric, const SizeSpec<Model>& size) {
  SoftLocalResult out;
  out.inner = soft_forall(X.models(), [&](Model x) { return !inner_blocker(x, Y, q, metric); }, size);
  out.outer = soft_forall(Y.models(), [&](Model y) { return !outer_blocker(y, X, q, metric); }, size);
  out.holds = out.inner.holds && out.outer.holds;
  return out;
}

LocalResult ceteris_paribus_improving(const ModelSet& X, const ModelSet& universe,
                                      const QualityRelation& q, const Metric& metric) {
  if (!is_subset(X, universe)) throw PreconditionViolation("ceteris paribus check requires X ⊆ U′");
  return locally_better(X, subtract(universe, X), q, metric);
}

}  // namespace deon
