#include <algorithm>

#include "deon/errors.hpp"
#include "deon/lab.hpp"

namespace deon::lab {

namespace {

struct Entry {
  const char* name;
  const char* doc;
};

const Entry kFixtures[] = {
    {"count", R"({"variables": ["p", "q", "r"], "obligations": {"p": "p", "q": "q", "r": "r"}, "quality": "count"})"},
    {"dependent-1", R"({"variables": ["p", "q"], "universe": ["10", "01"], "obligations": {"p": "p", "q": "q"}})"},
    {"dependent-2", R"({"variables": ["p", "q", "r", "s"], "universe": ["1000", "0100", "1111"],
      "obligations": {"p": "p", "q": "q", "r": "r", "s": "s"}})"},
    {"dependent-3", R"({"variables": ["p", "q", "r", "s", "t", "u"],
      "universe": ["110111", "011100", "101000", "100000", "110000"],
      "obligations": {"p": "p", "q": "q", "r": "r", "s": "s", "t": "t", "u": "u"}})"},
    {"not-global", R"({"variables": ["p", "q", "r", "s"], "universe": ["1111", "1110", "0010", "0000"],
      "obligations": {"p": "p", "q": "q", "r": "r", "s": "s"}, "quality": "count"})"},
    {"h-n-local", R"({"variables": ["p", "q", "r", "s"], "universe": ["0000", "0001", "0010", "1110"],
      "obligations": {"p": "p", "q": "q", "r": "r", "s": "s"}, "quality": "count"})"},
    {"ross", R"({"variables": ["p", "q"], "obligations": {"p": "p", "q": "q"}})"},
    {"three-obligations", R"({"variables": ["o1", "o2", "o3"], "obligations": {"o1": "o1", "o2": "o2", "o3": "o3"}})"},
    {"assassin", R"({"variables": ["k", "o"], "obligations": {"refrain": "~k", "abstain": "~o", "offer": "k -> o"},
      "quality": {"explicit": [["00"], ["01"], ["11"], ["10"]]}})"},
    {"assassin-partial", R"({"variables": ["k", "o"], "obligations": {"refrain": "~k", "abstain": "~o", "offer": "k -> o"},
      "quality": {"explicit_pairs": [["00", "01"], ["00", "11"], ["00", "10"], ["11", "10"]]}})"},
    {"library", R"({"variables": ["f", "w"], "obligations": {"dry": "f | ~w", "douse": "~f | w"},
      "size": {"epsilon": 0.5}})"},
};

}  // namespace

SystemSpec fixture(std::string_view name) {
  for (const auto& e : kFixtures)
    if (name == e.name) return load_system(Json::parse(e.doc));
  throw InvalidInput("unknown fixture '" + std::string(name) + "'");
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : kFixtures) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

}  // namespace deon::lab
