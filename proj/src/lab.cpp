#include "deon/lab.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "deon/errors.hpp"
#include "lab_engine.hpp"

namespace deon::lab {

std::string_view to_string(Status s) { return s == Status::Theorem ? "theorem" : "refutable"; }

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

std::size_t Rng::below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

std::string var_name(std::size_t i) {
  static const char* kNames[] = {"p", "q", "r", "s", "t", "u", "v", "w"};
  return i < 8 ? kNames[i] : "x" + std::to_string(i);
}

Vocabulary default_vocab(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(var_name(i));
  return Vocabulary(std::move(names));
}

std::vector<std::string> obligation_names(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back("o" + std::to_string(i + 1));
  return names;
}

ModelSet random_subset(const ModelSet& base, Rng& rng, double p) {
  std::vector<Model> out;
  for (Model m : base)
    if (rng.chance(p)) out.push_back(m);
  return ModelSet(std::move(out));
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ObligationSystem random_system(std::size_t n_vars, std::size_t n_obl, double density, std::uint64_t seed) {
  if (n_vars < 1 || n_vars > 8) throw BadParameters("random systems need 1 to 8 variables");
  if (n_obl > 8) throw BadParameters("random systems allow at most 8 obligations");
  if (!(density > 0.0 && density < 1.0)) throw BadParameters("density must lie strictly between 0 and 1");
  Rng rng(seed);
  ModelSet U = ModelSet::universe(n_vars);
  std::vector<ModelSet> sets;
  for (std::size_t i = 0; i < n_obl; ++i) sets.push_back(random_subset(U, rng, density));
  ModelSet restriction;
  while (restriction.empty()) restriction = random_subset(U, rng, 0.5);
  return ObligationSystem(default_vocab(n_vars), std::move(restriction), obligation_names(n_obl), std::move(sets));
}

ObligationSystem random_independent_system(std::size_t n_vars, std::size_t n_obl, std::uint64_t seed) {
  if (n_vars < 1 || n_vars > 8) throw BadParameters("random systems need 1 to 8 variables");
  if (n_obl < 1 || n_obl > n_vars) throw BadParameters("independent systems need 1 to n_vars obligations");
  Rng rng(seed);
  std::uint32_t size = std::uint32_t{1} << n_vars;
  std::vector<std::uint32_t> perm(size);
  for (std::uint32_t i = 0; i < size; ++i) perm[i] = i;
  for (std::uint32_t i = size - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  std::vector<std::vector<Model>> sets(n_obl);
  std::vector<std::vector<Model>> by_profile(std::size_t{1} << n_obl);
  for (std::uint32_t c = 0; c < size; ++c) {
    Model m(c, n_vars), image(perm[c], n_vars);
    std::size_t profile = 0;
    for (std::size_t i = 0; i < n_obl; ++i)
      if (image.value(i)) {
        sets[i].push_back(m);
        profile |= std::size_t{1} << i;
      }
    by_profile[profile].push_back(m);
  }
  std::vector<Model> restriction;
  for (const auto& group : by_profile) {
    std::size_t keep = rng.below(group.size());
    for (std::size_t j = 0; j < group.size(); ++j)
      if (j == keep || rng.chance(0.5)) restriction.push_back(group[j]);
  }
  std::vector<ModelSet> obligations;
  for (auto& s : sets) obligations.emplace_back(std::move(s));
  return ObligationSystem(default_vocab(n_vars), ModelSet(std::move(restriction)), obligation_names(n_obl),
                          std::move(obligations));
}

ObligationSystem atomic_system(std::size_t n, std::size_t k, ModelSet restriction) {
  Vocabulary vocab = default_vocab(n);
  ModelSet U = ModelSet::universe(n);
  std::vector<std::string> names;
  std::vector<ModelSet> sets;
  for (std::size_t i = 0; i < k; ++i) {
    names.push_back(vocab.name(i));
    std::vector<Model> members;
    for (Model m : U)
      if (m.value(i)) members.push_back(m);
    sets.emplace_back(std::move(members));
  }
  return ObligationSystem(std::move(vocab), std::move(restriction), std::move(names), std::move(sets));
}

void for_each_independent_atomic_system(std::size_t n, std::size_t k,
                                        const std::function<void(const ObligationSystem&)>& fn) {
  if (k < 1 || k > n) throw BadParameters("independent atomic systems need 1 ≤ k ≤ n");
  // Models grouped by their values on the first k variables; U′ picks a
  // nonempty subset of every group.
  std::size_t groups = std::size_t{1} << k, per_group = std::size_t{1} << (n - k);
  std::uint32_t choices = (std::uint32_t{1} << per_group) - 1;  // nonempty subset masks, offset by one
  std::vector<std::uint32_t> pick(groups, 0);
  while (true) {
    std::vector<Model> members;
    for (std::size_t g = 0; g < groups; ++g) {
      std::uint32_t mask = pick[g] + 1;
      for (std::size_t j = 0; j < per_group; ++j)
        if ((mask >> j) & 1u) members.emplace_back(static_cast<std::uint32_t>((g << (n - k)) | j), n);
    }
    fn(atomic_system(n, k, ModelSet(std::move(members))));
    std::size_t g = 0;
    while (g < groups && ++pick[g] == choices) pick[g++] = 0;
    if (g == groups) break;
  }
}

const std::vector<Claim>& claims() {
  static const std::vector<Claim> registry = engine::build_claims();
  return registry;
}

const Claim& find_claim(std::string_view id) {
  for (const auto& c : claims())
    if (c.id == id) return c;
  throw UnknownClaim("unknown claim '" + std::string(id) + "'");
}

SearchReport search_counterexample(const Claim& claim, const SearchConfig& config) {
  auto start = std::chrono::steady_clock::now();
  SearchReport report = claim.run(config);
  report.claim = claim.id;
  report.expected = claim.status;
  report.seed = config.seed;
  if (claim.status == Status::Theorem) {
    report.passed = report.counterexamples == 0;
  } else {
    report.passed = report.counterexamples > 0;
    if (!report.passed && report.detail.empty()) report.detail = "budget exhausted without a counterexample";
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SearchReport> run_paper_suite(const SearchConfig& config, const std::vector<std::string>& only) {
  std::vector<const Claim*> selected;
  if (only.empty()) {
    for (const auto& c : claims()) selected.push_back(&c);
  } else {
    for (const auto& c : claims())
      if (std::find(only.begin(), only.end(), c.id) != only.end()) selected.push_back(&c);
    for (const auto& id : only) find_claim(id);
  }
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DEON_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) threads = static_cast<std::size_t>(v);
  }
  threads = std::min(threads, std::max<std::size_t>(1, selected.size()));

  std::vector<SearchReport> reports(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) reports[i] = search_counterexample(*selected[i], config);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return reports;
}

Json report_to_json(const SearchReport& r, bool timing) {
  Json doc;
  doc["claim"] = r.claim;
  doc["status"] = std::string(to_string(r.expected));
  doc["passed"] = r.passed;
  doc["instances"] = r.instances;
  doc["counterexamples"] = r.counterexamples;
  Json coverage = Json::object();
  for (const auto& [phase, n] : r.coverage) coverage[phase] = n;
  doc["coverage"] = std::move(coverage);
  doc["seed"] = r.seed;
  if (r.counterexample) {
    Json ce;
    ce["system"] = r.counterexample->system;
    if (r.counterexample->candidate) {
      Json bits = Json::array();
      for (Model m : *r.counterexample->candidate) bits.push_back(m.to_string());
      ce["candidate"] = std::move(bits);
    }
    ce["note"] = r.counterexample->note;
    doc["counterexample"] = std::move(ce);
  } else {
    doc["counterexample"] = nullptr;
  }
  if (!r.detail.empty()) doc["detail"] = r.detail;
  if (timing) doc["elapsed_seconds"] = r.elapsed_seconds;
  return doc;
}

namespace engine {

Ctx::Ctx(const ObligationSystem& s, Rng& r, bool ex)
    : sys(s),
      rng(r),
      exhaustive(ex),
      qs_(s.quality(Variant::Set)),
      qc_(s.quality(Variant::Count)),
      ms_{s.family(), Variant::Set},
      mc_{s.family(), Variant::Count},
      vs_{s.variables(), Variant::Set},
      vc_{s.variables(), Variant::Count} {}

const ModelSet& Ctx::best_s() {
  if (!best_s_) best_s_ = best_elements(U(), qs_);
  return *best_s_;
}

const ModelSet& Ctx::best_c() {
  if (!best_c_) best_c_ = best_elements(U(), qc_);
  return *best_c_;
}

ModelSet Ctx::down(const ModelSet& seeds, const QualityRelation& q) const {
  std::vector<Model> out;
  for (Model u : U())
    if (std::any_of(seeds.begin(), seeds.end(), [&](Model s) { return q.at_least_as_good(u, s); }))
      out.push_back(u);
  return ModelSet(std::move(out));
}

std::vector<ModelSet> Ctx::subsets(const ModelSet& base, std::size_t small, std::size_t samples) {
  std::vector<ModelSet> out;
  if (exhaustive || base.size() <= small) {
    std::size_t count = std::size_t{1} << base.size();
    out.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
      std::vector<Model> members;
      for (std::size_t i = 0; i < base.size(); ++i)
        if ((mask >> i) & 1u) members.push_back(base[i]);
      out.emplace_back(std::move(members));
    }
    return out;
  }
  for (std::size_t i = 0; i < samples; ++i) out.push_back(random_subset(base, rng, 0.5));
  return out;
}

const std::vector<Ctx*>& Ctx::restrictions() {
  if (subs_ready_) return subs_;
  subs_ready_ = true;
  for (ModelSet& sub : subsets(U(), 8, 32)) {
    if (sub.empty()) continue;
    sub_systems_.push_back(
        std::make_unique<ObligationSystem>(sys.vocab(), std::move(sub), sys.obligation_names(), sys.obligations()));
    sub_ctx_.push_back(std::make_unique<Ctx>(*sub_systems_.back(), rng, exhaustive));
    subs_.push_back(sub_ctx_.back().get());
  }
  return subs_;
}

std::vector<ModelSet> candidates(Ctx& ctx) {
  const ModelSet& U = ctx.U();
  if (ctx.exhaustive || U.size() <= 6) return ctx.subsets(U, 6, 0);
  std::vector<ModelSet> out = {ModelSet(), U, ctx.best_s(), ctx.best_c()};
  for (int i = 0; i < 12; ++i) out.push_back(random_subset(U, ctx.rng, 0.5));
  for (int i = 0; i < 12; ++i) out.push_back(ctx.down(random_subset(U, ctx.rng, 0.25), ctx.qs()));
  for (int i = 0; i < 12; ++i) out.push_back(unite(ctx.down(random_subset(U, ctx.rng, 0.25), ctx.qs()), ctx.best_s()));
  for (int i = 0; i < 12; ++i) out.push_back(ctx.down(random_subset(U, ctx.rng, 0.25), ctx.qc()));
  return out;
}

SystemCheck over_candidates(SetPredicate pred) {
  return [pred = std::move(pred)](Ctx& ctx) {
    Outcome out;
    for (const ModelSet& X : candidates(ctx)) {
      ++out.instances;
      if (auto note = pred(ctx, X)) {
        out.violation = Violation{X, *note, std::nullopt};
        break;
      }
    }
    return out;
  };
}

namespace {

struct Found {
  std::size_t universe = 0, obligations = 0, width = 0;
  std::string key;
  Counterexample ce;
};

Found make_found(const ObligationSystem& sys, Violation v) {
  Found f;
  f.ce.system = v.system ? std::move(*v.system) : to_json(sys);
  f.universe = f.ce.system["universe"].size();
  f.obligations = f.ce.system["obligations"].size();
  f.width = f.ce.system["variables"].size();
  f.ce.candidate = std::move(v.candidate);
  f.ce.note = std::move(v.note);
  Json keyed = f.ce.system;
  if (f.ce.candidate) keyed["candidate"] = f.ce.candidate->to_bits();
  f.key = keyed.dump();
  return f;
}

bool smaller(const Found& a, const Found& b) {
  return std::tie(a.universe, a.obligations, a.width, a.key) < std::tie(b.universe, b.obligations, b.width, b.key);
}

ObligationSystem shrink_universe(const ObligationSystem& sys, Rng& rng) {
  ModelSet U = sys.universe();
  std::size_t target = 1 + rng.below(std::min<std::size_t>(U.size(), 8));
  std::vector<Model> pool = U.models(), chosen;
  for (std::size_t i = 0; i < target; ++i) {
    std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
    chosen.push_back(pool[i]);
  }
  return ObligationSystem(sys.vocab(), ModelSet(std::move(chosen)), sys.obligation_names(), sys.obligations());
}

}  // namespace

SearchReport run_system_claim(Status status, Domain domain, const SystemCheck& check, const SearchConfig& config,
                              std::uint64_t seed) {
  SearchReport report;
  std::optional<Found> best;
  Rng rng(seed);

  auto consider = [&](const ObligationSystem& sys, bool exhaustive) {
    Ctx ctx(sys, rng, exhaustive);
    Outcome o = check(ctx);
    report.instances += o.instances;
    if (o.violation) {
      ++report.counterexamples;
      Found f = make_found(sys, std::move(*o.violation));
      if (!best || smaller(f, *best)) best = std::move(f);
    }
    return o.instances;
  };

  std::size_t exhaustive = 0;
  std::size_t top = std::min<std::size_t>(3, config.max_vars);
  for (std::size_t n = 1; n <= top; ++n) {
    if (domain == Domain::Atomic) {
      std::uint32_t total = std::uint32_t{1} << (std::uint32_t{1} << n);
      std::vector<std::uint32_t> masks;
      for (std::uint32_t mask = 1; mask < total; ++mask) masks.push_back(mask);
      std::stable_sort(masks.begin(), masks.end(),
                       [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
      for (std::uint32_t mask : masks) {
        // Later systems are no smaller than a counterexample already found.
        if (status == Status::Refutable && best && static_cast<std::size_t>(std::popcount(mask)) > best->universe)
          continue;
        std::vector<Model> members;
        for (std::uint32_t c = 0; c < (std::uint32_t{1} << n); ++c)
          if ((mask >> c) & 1u) members.emplace_back(c, n);
        ModelSet restriction(std::move(members));
        for (std::size_t k = 0; k <= n; ++k) exhaustive += consider(atomic_system(n, k, restriction), true);
      }
    } else {
      for (std::size_t k = 1; k <= n; ++k)
        for_each_independent_atomic_system(n, k, [&](const ObligationSystem& sys) { exhaustive += consider(sys, true); });
    }
  }
  report.coverage.emplace_back("exhaustive", exhaustive);

  std::size_t sampled = 0;
  bool refutable = status == Status::Refutable;
  if (!(refutable && best)) {
    for (std::size_t s = 0; s < config.random_systems && sampled < config.budget; ++s) {
      std::size_t n = 1 + rng.below(std::max<std::size_t>(1, config.max_vars));
      std::uint64_t sys_seed = rng.next();
      std::optional<ObligationSystem> sys;
      if (domain == Domain::Atomic) {
        std::size_t k = refutable ? 1 + rng.below(std::max<std::size_t>(1, config.max_obligations))
                                  : rng.below(config.max_obligations + 1);
        double density = 0.2 + 0.6 * rng.unit();
        sys = random_system(n, k, density, sys_seed);
        if (refutable) sys = shrink_universe(*sys, rng);
      } else {
        std::size_t k = 1 + rng.below(std::min(n, std::max<std::size_t>(1, config.max_obligations)));
        sys = random_independent_system(n, k, sys_seed);
      }
      sampled += consider(*sys, false);
      if (refutable && best) break;
    }
  }
  report.coverage.emplace_back("random", sampled);
  if (best) report.counterexample = std::move(best->ce);
  return report;
}

SearchReport run_custom_claim(Status, const CustomRun& run, const SearchConfig& config, std::uint64_t seed) {
  SearchReport report;
  Outcome o = run(config, seed);
  report.instances = o.instances;
  report.coverage.emplace_back("fixed", o.instances);
  if (o.violation) {
    report.counterexamples = 1;
    report.counterexample = Counterexample{o.violation->system.value_or(Json()), o.violation->candidate,
                                           o.violation->note};
  }
  return report;
}

void Golden::expect(bool ok, const std::string& what) {
  ++checks_;
  if (!ok) failures_.push_back(what);
}

Outcome Golden::outcome(const Json& system) const {
  Outcome o;
  o.instances = checks_;
  if (!failures_.empty()) {
    std::string note = "failed: ";
    for (std::size_t i = 0; i < failures_.size(); ++i) note += (i ? "; " : "") + failures_[i];
    o.violation = Violation{std::nullopt, note, system};
  }
  return o;
}

}  // namespace engine

namespace engine {
std::uint64_t claim_seed(std::uint64_t base, std::string_view id) { return splitmix(base ^ fnv1a(id)); }
}  // namespace engine

}  // namespace deon::lab
