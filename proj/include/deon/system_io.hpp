#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "deon/formula.hpp"
#include "deon/obligations.hpp"

namespace deon {

using Json = nlohmann::ordered_json;

/// A size notion as written in a system file: an exception budget or an
/// extensional set of ideal (minimal) models.
using SizeConfig = std::variant<FractionSize, ModelSet>;

/// Preference whose minimal elements within any carrier are its members in
/// `ideal` (or the whole carrier when it meets none of them).
PreferentialSize<Model> preference_from_ideal(ModelSet ideal);
SizeSpec<Model> to_size_spec(const SizeConfig& config);

/// Everything a system file describes.
struct SystemSpec {
  ObligationSystem system;
  QualityRelation quality;
  /// The quality field as written: "set", "count" or "explicit".
  std::string quality_name;
  /// Distance variant; defaults to the quality variant for derived
  /// qualities and to "set" otherwise.
  Variant distance = Variant::Set;
  std::optional<SizeConfig> size;
};

/// Parses a system document. Throws InvalidInput, SyntaxError or
/// UnknownVariable on malformed content.
SystemSpec load_system(const Json& doc);
SystemSpec load_system_file(const std::filesystem::path& path);

/// Canonical document: bitstring lists everywhere, obligations in order.
Json to_json(const SystemSpec& spec);
/// The same document for a system with derived set quality.
Json to_json(const ObligationSystem& sys);

/// A candidate obligation: either a formula (evaluated over U, then
/// intersected with U′) or a bitstring list such as "[10, 11]" or "10,11",
/// whose members must lie in U′.
ModelSet parse_candidate(std::string_view text, const ObligationSystem& sys);

/// Disjunction of conjunctions of literals whose models within `ambient`
/// are exactly X ⊆ ambient, built greedily from the largest cubes.
Formula describe_models(const ModelSet& X, const ModelSet& ambient, const Vocabulary& vocab);

Json verdict_to_json(const ObligationVerdict& v, const ModelSet& X, const QualityRelation& q);
/// Human-readable verdict; `full` adds exception lists and informational fields.
std::string verdict_to_text(const ObligationVerdict& v, const ModelSet& X, const QualityRelation& q,
                            bool full);

/// "01 ≺ 00" or "01 ∼ 00".
std::string render_relation(Model a, Model b, const QualityRelation& q);

}  // namespace deon
