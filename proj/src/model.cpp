#include "deon/model.hpp"

#include <cctype>
#include <algorithm>
#include <iterator>
#include <unordered_set>

#include "deon/errors.hpp"

namespace deon {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InvalidInput("vocabulary must contain at least one variable");
  if (names_.size() > kMaxVariables)
    throw InvalidInput("vocabulary exceeds " + std::to_string(kMaxVariables) + " variables");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!valid_identifier(n)) throw InvalidInput("invalid variable name '" + n + "'");
    if (n == "T" || n == "F") throw InvalidInput("'" + n + "' is reserved for a constant");
    if (!seen.insert(n).second) throw InvalidInput("duplicate variable '" + n + "'");
  }
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

Model Model::from_bits(std::string_view bits) {
  if (bits.empty() || bits.size() > kMaxVariables)
    throw InvalidInput("bitstring '" + std::string(bits) + "' has invalid width");
  std::uint32_t code = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidInput("bitstring '" + std::string(bits) + "' is not binary");
    code = (code << 1) | static_cast<std::uint32_t>(c == '1');
  }
  return Model(code, bits.size());
}

Model Model::with(std::size_t var, bool v) const noexcept {
  std::uint32_t bit = std::uint32_t{1} << (width_ - 1 - var);
  return Model(v ? (code_ | bit) : (code_ & ~bit), width_);
}

std::string Model::to_string() const {
  std::string out(width_, '0');
  for (std::size_t i = 0; i < width_; ++i)
    if (value(i)) out[i] = '1';
  return out;
}

ModelSet::ModelSet(std::vector<Model> models) : models_(std::move(models)) {
  std::sort(models_.begin(), models_.end());
  models_.erase(std::unique(models_.begin(), models_.end()), models_.end());
}

ModelSet ModelSet::universe(std::size_t width) {
  if (width == 0 || width > kMaxVariables) throw InvalidInput("invalid universe width");
  std::vector<Model> all;
  std::uint32_t count = std::uint32_t{1} << width;
  all.reserve(count);
  for (std::uint32_t c = 0; c < count; ++c) all.emplace_back(c, width);
  return ModelSet(Presorted{}, std::move(all));
}

ModelSet ModelSet::from_bits(const std::vector<std::string>& bits) {
  std::vector<Model> ms;
  ms.reserve(bits.size());
  for (const auto& b : bits) {
    ms.push_back(Model::from_bits(b));
    if (ms.back().width() != ms.front().width()) throw InvalidInput("bitstrings differ in width");
  }
  return ModelSet(std::move(ms));
}

bool ModelSet::contains(Model m) const {
  return std::binary_search(models_.begin(), models_.end(), m);
}

std::vector<std::string> ModelSet::to_bits() const {
  std::vector<std::string> out;
  out.reserve(models_.size());
  for (const auto& m : models_) out.push_back(m.to_string());
  return out;
}

std::string ModelSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < models_.size(); ++i) {
    if (i) out += ", ";
    out += models_[i].to_string();
  }
  return out + "}";
}

bool ModelSet::canonical_less(const ModelSet& other) const {
  if (models_.size() != other.models_.size()) return models_.size() < other.models_.size();
  return models_ < other.models_;
}

ModelSet unite(const ModelSet& a, const ModelSet& b) {
  std::vector<Model> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return ModelSet(ModelSet::Presorted{}, std::move(out));
}

ModelSet intersect(const ModelSet& a, const ModelSet& b) {
  std::vector<Model> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return ModelSet(ModelSet::Presorted{}, std::move(out));
}

ModelSet subtract(const ModelSet& a, const ModelSet& b) {
  std::vector<Model> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return ModelSet(ModelSet::Presorted{}, std::move(out));
}

bool is_subset(const ModelSet& a, const ModelSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace deon
