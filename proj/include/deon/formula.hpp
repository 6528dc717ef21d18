#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "deon/model.hpp"

namespace deon {

/// Propositional formula AST. Conjunction and disjunction are n-ary
/// (at least two arguments); implication and equivalence are binary.
struct Formula {
  enum class Kind { True, False, Var, Not, And, Or, Implies, Iff };

  Kind kind = Kind::True;
  std::size_t var = 0;
  std::vector<Formula> args;

  static Formula top() { return {Kind::True, 0, {}}; }
  static Formula bottom() { return {Kind::False, 0, {}}; }
  static Formula variable(std::size_t i) { return {Kind::Var, i, {}}; }
  static Formula negation(Formula f) { return {Kind::Not, 0, {std::move(f)}}; }
  static Formula conjunction(std::vector<Formula> fs) { return {Kind::And, 0, std::move(fs)}; }
  static Formula disjunction(std::vector<Formula> fs) { return {Kind::Or, 0, std::move(fs)}; }
  static Formula implication(Formula a, Formula b) { return {Kind::Implies, 0, {std::move(a), std::move(b)}}; }
  static Formula equivalence(Formula a, Formula b) { return {Kind::Iff, 0, {std::move(a), std::move(b)}}; }

  bool operator==(const Formula&) const = default;
};

/// Grammar (ASCII, Unicode aliases ¬ ∧ ∨ → ↔ accepted):
///   iff  := imp ( "<->" iff )?
///   imp  := or  ( "->" imp )?
///   or   := and ( "|" and )*
///   and  := not ( "&" not )*
///   not  := "~" not | atom
///   atom := "T" | "F" | identifier | "(" iff ")"
///
/// Throws SyntaxError (with byte offset) or UnknownVariable.
Formula parse_formula(std::string_view text, const Vocabulary& vocab);

/// Renders with the minimal parentheses needed for parse_formula to rebuild
/// the identical tree.
std::string to_string(const Formula& f, const Vocabulary& vocab);

bool evaluate(const Formula& f, Model m);

/// Members of `ambient` satisfying `f`.
ModelSet models_of(const Formula& f, const Vocabulary& vocab, const ModelSet& ambient);

/// Conjunction of every literal that is constant across `models`; ⊤ when no
/// variable is constant. Throws EmptySet for an empty argument.
Formula strongest_conjunction(const ModelSet& models);

enum class FormulaClass { InLAnd, InLOrAnd, General };

/// Syntactic classification: consistent conjunction of literals, disjunction
/// of such conjunctions, or anything else. ⊤ counts as the empty conjunction.
FormulaClass classify_formula(const Formula& f);

std::string_view to_string(FormulaClass c);

}  // namespace deon
