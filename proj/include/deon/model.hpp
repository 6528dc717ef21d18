#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deon {

inline constexpr std::size_t kMaxVariables = 24;

/// Ordered list of distinct propositional variable names. The order is the
/// canonical order used for every bitstring rendering of a model.
class Vocabulary {
 public:
  explicit Vocabulary(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::uint32_t universe_size() const noexcept { return std::uint32_t{1} << names_.size(); }

  bool operator==(const Vocabulary&) const = default;

 private:
  std::vector<std::string> names_;
};

/// A total truth assignment over a vocabulary of `width` variables.
///
/// Variable 0 is stored in the most significant of the `width` bits, so the
/// integer order of codes coincides with lexicographic order of bitstrings
/// ("110" over (p,q,r) has code 6).
class Model {
 public:
  constexpr Model() = default;
  constexpr Model(std::uint32_t code, std::size_t width)
      : code_(code), width_(static_cast<std::uint8_t>(width)) {}

  /// Parses "0"/"1" strings, leftmost character = first variable.
  static Model from_bits(std::string_view bits);

  constexpr std::uint32_t code() const noexcept { return code_; }
  constexpr std::size_t width() const noexcept { return width_; }
  constexpr bool value(std::size_t var) const noexcept {
    return ((code_ >> (width_ - 1 - var)) & 1u) != 0;
  }
  Model with(std::size_t var, bool v) const noexcept;

  std::string to_string() const;

  constexpr auto operator<=>(const Model&) const = default;

 private:
  std::uint32_t code_ = 0;
  std::uint8_t width_ = 0;
};

/// Extensional set of models, kept sorted and duplicate free.
class ModelSet {
 public:
  using const_iterator = std::vector<Model>::const_iterator;

  ModelSet() = default;
  explicit ModelSet(std::vector<Model> models);
  ModelSet(std::initializer_list<Model> models) : ModelSet(std::vector<Model>(models)) {}

  /// All 2^width models.
  static ModelSet universe(std::size_t width);
  static ModelSet from_bits(const std::vector<std::string>& bits);

  bool contains(Model m) const;
  std::size_t size() const noexcept { return models_.size(); }
  bool empty() const noexcept { return models_.empty(); }
  const_iterator begin() const noexcept { return models_.begin(); }
  const_iterator end() const noexcept { return models_.end(); }
  const Model& operator[](std::size_t i) const { return models_[i]; }
  const std::vector<Model>& models() const noexcept { return models_; }

  std::vector<std::string> to_bits() const;
  /// "{110, 100}"
  std::string to_string() const;

  bool operator==(const ModelSet&) const = default;
  /// Canonical order: cardinality first, then lexicographic member list.
  bool canonical_less(const ModelSet& other) const;

 private:
  struct Presorted {};
  ModelSet(Presorted, std::vector<Model> models) : models_(std::move(models)) {}

  friend ModelSet unite(const ModelSet&, const ModelSet&);
  friend ModelSet intersect(const ModelSet&, const ModelSet&);
  friend ModelSet subtract(const ModelSet&, const ModelSet&);

  std::vector<Model> models_;
};

ModelSet unite(const ModelSet& a, const ModelSet& b);
ModelSet intersect(const ModelSet& a, const ModelSet& b);
ModelSet subtract(const ModelSet& a, const ModelSet& b);
bool is_subset(const ModelSet& a, const ModelSet& b);

}  // namespace deon
