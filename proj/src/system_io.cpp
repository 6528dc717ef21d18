#include "deon/system_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "deon/errors.hpp"

namespace deon {

namespace {

ModelSet bits_to_set(const Json& arr, std::size_t width, const char* what) {
  if (!arr.is_array()) throw InvalidInput(std::string(what) + " must be a list of bitstrings");
  std::vector<Model> out;
  for (const auto& item : arr) {
    if (!item.is_string()) throw InvalidInput(std::string(what) + " must contain bitstrings");
    Model m = Model::from_bits(item.get<std::string>());
    if (m.width() != width)
      throw InvalidInput(std::string(what) + ": bitstring '" + item.get<std::string>() + "' has width " +
                         std::to_string(m.width()) + ", expected " + std::to_string(width));
    out.push_back(m);
  }
  return ModelSet(std::move(out));
}

Json set_to_bits(const ModelSet& s) {
  Json arr = Json::array();
  for (Model m : s) arr.push_back(m.to_string());
  return arr;
}

Json set_to_bits(const std::vector<Model>& s) {
  Json arr = Json::array();
  for (Model m : s) arr.push_back(m.to_string());
  return arr;
}

Json pairs_to_bits(const std::vector<ModelPair>& ps) {
  Json arr = Json::array();
  for (const auto& [a, b] : ps) arr.push_back(Json::array({a.to_string(), b.to_string()}));
  return arr;
}

/// Formula string or bitstring list, evaluated over U.
ModelSet formula_or_bits(const Json& value, const Vocabulary& vocab, const ModelSet& U, const char* what) {
  if (value.is_string()) return models_of(parse_formula(value.get<std::string>(), vocab), vocab, U);
  return bits_to_set(value, vocab.size(), what);
}

Variant parse_variant(const Json& v, const char* what) {
  if (v == "set") return Variant::Set;
  if (v == "count") return Variant::Count;
  throw InvalidInput(std::string(what) + " must be \"set\" or \"count\"");
}

}  // namespace

PreferentialSize<Model> preference_from_ideal(ModelSet ideal) {
  return {[ideal = std::move(ideal)](const Model& a, const Model& b) {
    return ideal.contains(a) || !ideal.contains(b);
  }};
}

SizeSpec<Model> to_size_spec(const SizeConfig& config) {
  if (const auto* f = std::get_if<FractionSize>(&config)) {
    validate(*f);
    return *f;
  }
  return preference_from_ideal(std::get<ModelSet>(config));
}

SystemSpec load_system(const Json& doc) {
  if (!doc.is_object()) throw InvalidInput("system document must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "variables" && key != "universe" && key != "obligations" && key != "quality" &&
        key != "distance" && key != "size")
      throw InvalidInput("unknown field '" + key + "'");
  if (!doc.contains("variables") || !doc["variables"].is_array())
    throw InvalidInput("field 'variables' must be a list of names");
  std::vector<std::string> names;
  for (const auto& v : doc["variables"]) {
    if (!v.is_string()) throw InvalidInput("variable names must be strings");
    names.push_back(v.get<std::string>());
  }
  Vocabulary vocab(std::move(names));
  ModelSet U = ModelSet::universe(vocab.size());

  ModelSet restriction = U;
  if (doc.contains("universe")) {
    restriction = formula_or_bits(doc["universe"], vocab, U, "universe");
    if (restriction.empty()) throw EmptyUniverse("universe is empty");
  }

  std::vector<std::string> obl_names;
  std::vector<ModelSet> obl_sets;
  if (doc.contains("obligations")) {
    const Json& obl = doc["obligations"];
    if (!obl.is_object()) throw InvalidInput("field 'obligations' must map names to formulas or bitstring lists");
    for (const auto& [name, value] : obl.items()) {
      obl_names.push_back(name);
      obl_sets.push_back(formula_or_bits(value, vocab, U, "obligation"));
    }
  }
  ObligationSystem sys(vocab, restriction, std::move(obl_names), std::move(obl_sets));

  std::optional<QualityRelation> quality;
  std::string quality_name = "set";
  std::optional<Variant> derived_variant = Variant::Set;
  if (doc.contains("quality")) {
    const Json& q = doc["quality"];
    if (q.is_string()) {
      derived_variant = parse_variant(q, "quality");
      quality_name = q.get<std::string>();
    } else if (q.is_object() && q.size() == 1 && q.contains("explicit")) {
      if (!q["explicit"].is_array()) throw InvalidInput("explicit quality must be a list of layers");
      std::vector<ModelSet> layers;
      for (const auto& layer : q["explicit"]) {
        layers.push_back(bits_to_set(layer, vocab.size(), "quality layer"));
        if (!is_subset(layers.back(), restriction)) throw InvalidInput("quality layer leaves the universe");
      }
      quality = QualityRelation::ranking(std::move(layers));
      quality_name = "explicit";
      derived_variant.reset();
    } else if (q.is_object() && q.size() == 1 && q.contains("explicit_pairs")) {
      if (!q["explicit_pairs"].is_array()) throw InvalidInput("explicit_pairs must be a list of pairs");
      std::vector<std::pair<Model, Model>> pairs;
      for (const auto& p : q["explicit_pairs"]) {
        ModelSet both = bits_to_set(p, vocab.size(), "quality pair");
        if (!p.is_array() || p.size() != 2 || both.size() != 2)
          throw InvalidInput("each explicit pair must list two distinct bitstrings");
        Model a = Model::from_bits(p[0].get<std::string>()), b = Model::from_bits(p[1].get<std::string>());
        if (!restriction.contains(a) || !restriction.contains(b))
          throw InvalidInput("quality pair leaves the universe");
        pairs.emplace_back(a, b);
      }
      quality = QualityRelation::partial(pairs);
      quality_name = "explicit_pairs";
      derived_variant.reset();
    } else {
      throw InvalidInput("quality must be \"set\", \"count\", {\"explicit\": ...} or {\"explicit_pairs\": ...}");
    }
  }
  if (derived_variant) quality = sys.quality(*derived_variant);

  Variant distance = derived_variant.value_or(Variant::Set);
  if (doc.contains("distance")) distance = parse_variant(doc["distance"], "distance");

  std::optional<SizeConfig> size;
  if (doc.contains("size")) {
    const Json& s = doc["size"];
    if (s.is_object() && s.size() == 1 && s.contains("epsilon") && s["epsilon"].is_number()) {
      FractionSize f{s["epsilon"].get<double>()};
      validate(f);
      size = f;
    } else if (s.is_object() && s.size() == 1 && s.contains("ideal")) {
      size = bits_to_set(s["ideal"], vocab.size(), "size ideal");
    } else {
      throw InvalidInput("size must be {\"epsilon\": number} or {\"ideal\": [bitstrings]}");
    }
  }

  return SystemSpec{std::move(sys), std::move(*quality), quality_name, distance, std::move(size)};
}

SystemSpec load_system_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return load_system(doc);
}

Json to_json(const ObligationSystem& sys) {
  Json doc;
  doc["variables"] = sys.vocab().names();
  doc["universe"] = set_to_bits(sys.restriction());
  Json obl = Json::object();
  for (std::size_t i = 0; i < sys.obligation_count(); ++i)
    obl[sys.obligation_names()[i]] = set_to_bits(sys.obligations()[i]);
  doc["obligations"] = std::move(obl);
  doc["quality"] = "set";
  doc["distance"] = "set";
  return doc;
}

Json to_json(const SystemSpec& spec) {
  Json doc = to_json(spec.system);
  if (spec.quality_name == "explicit") {
    Json layers = Json::array();
    for (const auto& layer : spec.quality.layers()) layers.push_back(set_to_bits(layer));
    doc["quality"] = Json{{"explicit", std::move(layers)}};
  } else if (spec.quality_name == "explicit_pairs") {
    doc["quality"] = Json{{"explicit_pairs", pairs_to_bits(spec.quality.strict_pairs())}};
  } else {
    doc["quality"] = spec.quality_name;
  }
  doc["distance"] = std::string(to_string(spec.distance));
  if (spec.size) {
    if (const auto* f = std::get_if<FractionSize>(&*spec.size))
      doc["size"] = Json{{"epsilon", f->epsilon}};
    else
      doc["size"] = Json{{"ideal", set_to_bits(std::get<ModelSet>(*spec.size))}};
  }
  return doc;
}

ModelSet parse_candidate(std::string_view text, const ObligationSystem& sys) {
  bool bitlist = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return c == '0' || c == '1' || c == ',' || c == '[' || c == ']' || c == '"' || c == ' ' || c == '\t';
  });
  bitlist = bitlist && text.find_first_of("01") != std::string_view::npos;
  if (!bitlist) {
    const ModelSet U = sys.universe();
    return intersect(models_of(parse_formula(text, sys.vocab()), sys.vocab(), U), sys.restriction());
  }
  std::vector<Model> out;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    Model m = Model::from_bits(current);
    if (m.width() != sys.width()) throw InvalidInput("candidate bitstring '" + current + "' has the wrong width");
    if (!sys.restriction().contains(m)) throw InvalidInput("candidate model " + current + " is outside U′");
    out.push_back(m);
    current.clear();
  };
  for (char c : text) {
    if (c == '0' || c == '1')
      current += c;
    else
      flush();
  }
  flush();
  return ModelSet(std::move(out));
}

Formula describe_models(const ModelSet& X, const ModelSet& ambient, const Vocabulary& vocab) {
  if (!is_subset(X, ambient)) throw PreconditionViolation("description requires X ⊆ ambient");
  if (X.empty()) return Formula::bottom();
  if (X == ambient) return Formula::top();
  std::size_t n = vocab.size();
  auto literal_cube = [&](std::uint32_t care, std::uint32_t value) {
    std::vector<Formula> lits;
    for (std::size_t v = 0; v < n; ++v) {
      if (!((care >> v) & 1u)) continue;
      Formula var = Formula::variable(v);
      lits.push_back(((value >> v) & 1u) ? var : Formula::negation(var));
    }
    if (lits.size() == 1) return lits.front();
    return Formula::conjunction(std::move(lits));
  };
  auto model_mask = [&](Model m) {
    std::uint32_t bits = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (m.value(v)) bits |= std::uint32_t{1} << v;
    return bits;
  };

  std::vector<Formula> disjuncts;
  if (n > 10) {
    for (Model m : X) disjuncts.push_back(literal_cube((std::uint32_t{1} << n) - 1, model_mask(m)));
  } else {
    struct Cube {
      std::uint32_t care, value;
      std::vector<bool> covers;  // over members of X
    };
    std::vector<std::uint32_t> cares((std::size_t{1} << n) - 1);
    for (std::uint32_t c = 1; c < (std::uint32_t{1} << n); ++c) cares[c - 1] = c;
    std::stable_sort(cares.begin(), cares.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    std::vector<std::uint32_t> amb, xs;
    for (Model m : ambient) amb.push_back(model_mask(m));
    for (Model m : X) xs.push_back(model_mask(m));
    std::vector<Cube> cubes;
    for (std::uint32_t care : cares) {
      std::uint32_t value = 0;
      while (true) {
        bool consistent = true;
        for (std::size_t i = 0; i < amb.size() && consistent; ++i)
          if ((amb[i] & care) == value && !X.contains(ambient[i])) consistent = false;
        if (consistent) {
          Cube cube{care, value, std::vector<bool>(xs.size())};
          bool any = false;
          for (std::size_t i = 0; i < xs.size(); ++i) any |= (cube.covers[i] = (xs[i] & care) == value);
          if (any) cubes.push_back(std::move(cube));
        }
        if (value == care) break;
        value = (value - care) & care;
      }
    }
    std::vector<bool> covered(xs.size(), false);
    std::size_t remaining = xs.size();
    while (remaining > 0) {
      std::size_t best = 0, best_gain = 0;
      for (std::size_t c = 0; c < cubes.size(); ++c) {
        std::size_t gain = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) gain += cubes[c].covers[i] && !covered[i];
        if (gain > best_gain) {
          best_gain = gain;
          best = c;
        }
      }
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (cubes[best].covers[i] && !covered[i]) {
          covered[i] = true;
          --remaining;
        }
      disjuncts.push_back(literal_cube(cubes[best].care, cubes[best].value));
    }
  }
  if (disjuncts.size() == 1) return disjuncts.front();
  return Formula::disjunction(std::move(disjuncts));
}

std::string render_relation(Model a, Model b, const QualityRelation& q) {
  const char* op = " ? ";
  switch (q.compare(a, b)) {
    case Order::Better: op = " ≺ "; break;
    case Order::Equivalent: op = " ∼ "; break;
    case Order::Worse: op = " ≻ "; break;
    case Order::Incomparable: op = " ⋈ "; break;
  }
  return a.to_string() + op + b.to_string();
}

namespace {

Json local_witness_json(const std::optional<LocalWitness>& w) {
  if (!w) return nullptr;
  return Json{{"side", w->side == LocalWitness::Side::Inner ? "inner" : "outer"},
              {"element", w->element.to_string()},
              {"blocker", w->blocker.to_string()}};
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

Json verdict_to_json(const ObligationVerdict& v, const ModelSet& X, const QualityRelation& q) {
  Json criteria;
  criteria["contains_ideal"] = {{"required", true}, {"holds", v.contains_ideal},
                                {"exceptions", set_to_bits(v.ideal_exceptions)}};
  Json relations = Json::array();
  for (const auto& [a, b] : v.closure_exceptions) relations.push_back(render_relation(a, b, q));
  criteria["downward_closed"] = {{"required", true}, {"holds", v.downward_closed},
                                 {"exceptions", pairs_to_bits(v.closure_exceptions)},
                                 {"relations", std::move(relations)}};
  Json nb = {{"required", true}, {"holds", v.improving_neighbourhood},
             {"exceptions", pairs_to_bits(v.neighbourhood_exceptions)}};
  if (v.neighbourhood_escape) nb["escape"] = v.neighbourhood_escape->to_string();
  criteria["improving_neighbourhood"] = std::move(nb);
  Json cp = {{"required", v.cp_required}, {"holds", v.ceteris_paribus}};
  if (v.soft) {
    cp["inner_exceptions"] = set_to_bits(v.cp_inner_exceptions);
    cp["outer_exceptions"] = set_to_bits(v.cp_outer_exceptions);
  } else {
    cp["witness"] = local_witness_json(v.cp_witness);
  }
  criteria["ceteris_paribus"] = std::move(cp);
  criteria["nontrivial"] = {{"required", v.nontrivial_required}, {"holds", v.nontrivial}};
  Json doc;
  doc["candidate"] = set_to_bits(X);
  doc["mode"] = v.soft ? "soft" : "hard";
  doc["accepted"] = v.accepted;
  doc["criteria"] = std::move(criteria);
  doc["ui"] = v.ui;
  return doc;
}

std::string verdict_to_text(const ObligationVerdict& v, const ModelSet& X, const QualityRelation& q,
                            bool full) {
  std::ostringstream out;
  auto row = [&](const char* name, bool holds, bool required, const std::string& note) {
    out << "  " << name;
    for (std::size_t i = std::string_view(name).size(); i < 26; ++i) out << ' ';
    out << yes_no(holds);
    if (!required) out << " (not required)";
    if (!note.empty()) out << "  " << note;
    out << '\n';
  };
  auto list = [](const std::vector<Model>& ms) {
    std::string s;
    for (Model m : ms) s += (s.empty() ? "" : ", ") + m.to_string();
    return s;
  };

  out << (v.soft ? "soft" : "hard") << " obligation check of " << X.to_string() << '\n';

  std::string ideal_note;
  if (!v.ideal_exceptions.empty() && (full || !v.contains_ideal)) ideal_note = "missing " + list(v.ideal_exceptions);
  row("contains ideal cases", v.contains_ideal, true, ideal_note);

  std::string closure_note;
  if (!v.closure_exceptions.empty() && (full || !v.downward_closed)) {
    for (std::size_t i = 0; i < v.closure_exceptions.size(); ++i) {
      if (i) closure_note += ", ";
      closure_note += render_relation(v.closure_exceptions[i].first, v.closure_exceptions[i].second, q);
      if (!full && i == 0) break;
    }
  }
  row("downward closed", v.downward_closed, true, closure_note);

  std::string nb_note;
  if (!v.neighbourhood_exceptions.empty() && (full || !v.improving_neighbourhood)) {
    const auto& [y, x] = v.neighbourhood_exceptions.front();
    nb_note = "[" + x.to_string() + ", " + y.to_string() + "]";
    if (v.neighbourhood_escape) nb_note += " reaches " + v.neighbourhood_escape->to_string();
    if (v.neighbourhood_exceptions.size() > 1)
      nb_note += " (+" + std::to_string(v.neighbourhood_exceptions.size() - 1) + " more)";
  }
  row("improving neighbourhood", v.improving_neighbourhood, true, nb_note);

  std::string cp_note;
  if (!v.ceteris_paribus && (full || v.cp_required)) {
    if (v.cp_witness) {
      const auto& w = *v.cp_witness;
      cp_note = w.side == LocalWitness::Side::Inner
                    ? w.element.to_string() + " is not better than closest outside " + w.blocker.to_string()
                    : "closest inside " + w.blocker.to_string() + " is not better than " + w.element.to_string();
    } else if (v.soft) {
      cp_note = "inner exceptions " + list(v.cp_inner_exceptions) + "; outer exceptions " +
                list(v.cp_outer_exceptions);
    }
  }
  row("ceteris paribus improving", v.ceteris_paribus, v.cp_required, cp_note);
  row("nontrivial", v.nontrivial, v.nontrivial_required, "");
  if (full) row("(ui)", v.ui, false, "");
  out << "verdict: " << (v.accepted ? "accept" : "reject") << '\n';
  return out.str();
}

}  // namespace deon
