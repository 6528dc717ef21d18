#include "deon/metric.hpp"

#include <algorithm>

#include "deon/errors.hpp"
#include "deon/quality.hpp"

namespace deon {

namespace {

constexpr std::size_t kTableWidth = 16;

}  // namespace

struct IndexFamily::Impl {
  Kind kind = Kind::Variables;
  std::size_t width = 0;
  std::vector<std::string> names;
  std::vector<ModelSet> sets;
  std::vector<Coords> table;  // indexed by model code, filled when width <= kTableWidth

  Coords compute(Model m) const {
    Coords c = 0;
    if (kind == Kind::Variables) {
      for (std::size_t i = 0; i < width; ++i)
        if (m.value(i)) c |= Coords{1} << i;
    } else {
      for (std::size_t i = 0; i < sets.size(); ++i)
        if (sets[i].contains(m)) c |= Coords{1} << i;
    }
    return c;
  }
};

std::vector<std::size_t> IndexSet::indices() const {
  std::vector<std::size_t> out;
  for (Coords b = bits; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

IndexFamily IndexFamily::variables(const Vocabulary& vocab) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Variables;
  impl->width = vocab.size();
  impl->names = vocab.names();
  if (impl->width <= kTableWidth) {
    impl->table.resize(std::size_t{1} << impl->width);
    for (std::uint32_t c = 0; c < impl->table.size(); ++c) impl->table[c] = impl->compute(Model(c, impl->width));
  }
  return IndexFamily(std::move(impl));
}

IndexFamily IndexFamily::obligations(std::vector<ModelSet> sets, std::vector<std::string> names,
                                     std::size_t width) {
  if (sets.size() != names.size()) throw InvalidInput("obligation names and sets differ in number");
  if (sets.size() > kMaxObligations)
    throw InvalidInput("at most " + std::to_string(kMaxObligations) + " obligations are supported");
  for (const auto& s : sets)
    for (Model m : s)
      if (m.width() != width) throw InvalidInput("obligation contains a model of the wrong width");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Obligations;
  impl->width = width;
  impl->names = std::move(names);
  impl->sets = std::move(sets);
  if (width <= kTableWidth) {
    impl->table.assign(std::size_t{1} << width, 0);
    for (std::size_t i = 0; i < impl->sets.size(); ++i)
      for (Model m : impl->sets[i]) impl->table[m.code()] |= Coords{1} << i;
  }
  return IndexFamily(std::move(impl));
}

IndexFamily::Kind IndexFamily::kind() const noexcept { return impl_->kind; }
std::size_t IndexFamily::size() const noexcept { return impl_->names.size(); }
std::size_t IndexFamily::width() const noexcept { return impl_->width; }
const std::string& IndexFamily::name(std::size_t i) const { return impl_->names.at(i); }
const std::vector<std::string>& IndexFamily::names() const noexcept { return impl_->names; }
const std::vector<ModelSet>& IndexFamily::sets() const noexcept { return impl_->sets; }

Coords IndexFamily::coords(Model m) const {
  if (!impl_->table.empty()) return impl_->table[m.code()];
  return impl_->compute(m);
}

std::string IndexFamily::render(IndexSet s) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : s.indices()) {
    if (!first) out += ", ";
    first = false;
    out += name(i);
  }
  return out + "}";
}

std::string_view to_string(Variant v) { return v == Variant::Set ? "set" : "count"; }

DistanceOrder compare_distances(Variant v, Coords a, Coords b) noexcept {
  if (v == Variant::Count) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa < pb) return DistanceOrder::Less;
    if (pa > pb) return DistanceOrder::Greater;
    return DistanceOrder::Equal;
  }
  if (a == b) return DistanceOrder::Equal;
  if ((a & ~b) == 0) return DistanceOrder::Less;
  if ((b & ~a) == 0) return DistanceOrder::Greater;
  return DistanceOrder::Incomparable;
}

IndexSet profile(Model x, const IndexFamily& obligations) { return IndexSet{obligations.coords(x)}; }

SetDistance dist_set(Model x, Model y, const IndexFamily& fam) {
  return SetDistance{fam.coords(x) ^ fam.coords(y)};
}

CountDistance dist_count(Model x, Model y, const IndexFamily& fam) {
  return CountDistance{dist_set(x, y, fam).size()};
}

bool between(Model x, Model y, Model z, const Metric& metric) {
  Coords cx = metric.family.coords(x), cy = metric.family.coords(y), cz = metric.family.coords(z);
  Coords xy = cx ^ cy, yz = cy ^ cz, xz = cx ^ cz;
  if (metric.variant == Variant::Set) return (xy | yz) == xz;
  return std::popcount(xy) + std::popcount(yz) == std::popcount(xz);
}

ModelSet interval(Model x, Model z, const ModelSet& ambient, const Metric& metric) {
  std::vector<Model> out;
  for (Model y : ambient)
    if (between(x, y, z, metric)) out.push_back(y);
  return ModelSet(std::move(out));
}

ModelSet closest(Model x, const ModelSet& X, const Metric& metric) {
  Coords cx = metric.family.coords(x);
  std::vector<Coords> dist;
  dist.reserve(X.size());
  for (Model m : X) dist.push_back(cx ^ metric.family.coords(m));
  std::vector<Model> out;
  for (std::size_t i = 0; i < X.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < X.size() && !dominated; ++j)
      dominated = compare_distances(metric.variant, dist[j], dist[i]) == DistanceOrder::Less;
    if (!dominated) out.push_back(X[i]);
  }
  return ModelSet(std::move(out));
}

namespace {

void require_nested(const ModelSet& X, const ModelSet& Y, const ModelSet& universe) {
  if (!is_subset(X, Y)) throw PreconditionViolation("neighbourhood check requires X ⊆ Y");
  if (!is_subset(Y, universe)) throw PreconditionViolation("neighbourhood check requires Y ⊆ U′");
}

std::optional<NeighbourhoodWitness> escape(Model y, const ModelSet& anchors, const ModelSet& Y,
                                           const ModelSet& universe, const Metric& metric) {
  for (Model x : closest(y, anchors, metric))
    for (Model z : universe)
      if (!Y.contains(z) && between(x, z, y, metric)) return NeighbourhoodWitness{y, x, z};
  return std::nullopt;
}

}  // namespace

NeighbourhoodResult is_neighbourhood(const ModelSet& Y, const ModelSet& X, const ModelSet& universe,
                                     const Metric& metric) {
  require_nested(X, Y, universe);
  for (Model y : Y)
    if (auto w = escape(y, X, Y, universe, metric)) return {false, w};
  return {};
}

NeighbourhoodResult is_improving_neighbourhood(const ModelSet& Y, const ModelSet& X,
                                               const ModelSet& universe, const Metric& metric,
                                               const QualityRelation& quality) {
  require_nested(X, Y, universe);
  for (Model y : Y) {
    std::vector<Model> not_worse;
    for (Model x : X)
      if (quality.at_least_as_good(x, y)) not_worse.push_back(x);
    if (auto w = escape(y, ModelSet(std::move(not_worse)), Y, universe, metric)) return {false, w};
  }
  return {};
}

}  // namespace deon
