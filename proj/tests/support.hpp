#pragma once

#include <string>

#include "deon/model.hpp"

namespace deon::testing {

inline std::string data(const std::string& name) { return std::string(DEON_TEST_DATA) + "/" + name; }

inline Model bits(const char* b) { return Model::from_bits(b); }

inline ModelSet set(std::initializer_list<const char*> b) {
  std::vector<Model> ms;
  for (const char* s : b) ms.push_back(Model::from_bits(s));
  return ModelSet(std::move(ms));
}

/// All subsets of `base`, in mask order.
inline std::vector<ModelSet> powerset(const ModelSet& base) {
  std::vector<ModelSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << base.size()); ++mask) {
    std::vector<Model> ms;
    for (std::size_t i = 0; i < base.size(); ++i)
      if ((mask >> i) & 1u) ms.push_back(base[i]);
    out.emplace_back(std::move(ms));
  }
  return out;
}

}  // namespace deon::testing
