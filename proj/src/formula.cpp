#include "deon/formula.hpp"

#include <algorithm>
#include <cctype>

#include "deon/errors.hpp"

namespace deon {

namespace {

enum class Tok { Ident, Not, And, Or, Implies, Iff, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::size_t at = pos_;
    if (pos_ >= src_.size()) return {Tok::End, at, {}};
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      return {Tok::Ident, at, src_.substr(at, pos_ - at)};
    }
    switch (c) {
      case '~': ++pos_; return {Tok::Not, at, {}};
      case '&': ++pos_; return {Tok::And, at, {}};
      case '|': ++pos_; return {Tok::Or, at, {}};
      case '(': ++pos_; return {Tok::LParen, at, {}};
      case ')': ++pos_; return {Tok::RParen, at, {}};
      default: break;
    }
    if (src_.substr(pos_, 2) == "->") { pos_ += 2; return {Tok::Implies, at, {}}; }
    if (src_.substr(pos_, 3) == "<->") { pos_ += 3; return {Tok::Iff, at, {}}; }
    // UTF-8 aliases: ¬ ∧ ∨ → ↔
    if (src_.substr(pos_, 2) == "\xC2\xAC") { pos_ += 2; return {Tok::Not, at, {}}; }
    if (src_.substr(pos_, 3) == "\xE2\x88\xA7") { pos_ += 3; return {Tok::And, at, {}}; }
    if (src_.substr(pos_, 3) == "\xE2\x88\xA8") { pos_ += 3; return {Tok::Or, at, {}}; }
    if (src_.substr(pos_, 3) == "\xE2\x86\x92") { pos_ += 3; return {Tok::Implies, at, {}}; }
    if (src_.substr(pos_, 3) == "\xE2\x86\x94") { pos_ += 3; return {Tok::Iff, at, {}}; }
    throw SyntaxError("unexpected character", at);
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view src, const Vocabulary& vocab) : lexer_(src), vocab_(vocab) {
    advance();
  }

  Formula parse() {
    Formula f = parse_iff();
    if (cur_.kind != Tok::End) throw SyntaxError("unexpected token", cur_.offset);
    return f;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (cur_.kind == Tok::Iff) {
      advance();
      return Formula::equivalence(std::move(lhs), parse_iff());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (cur_.kind == Tok::Implies) {
      advance();
      return Formula::implication(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula first = parse_and();
    if (cur_.kind != Tok::Or) return first;
    std::vector<Formula> args;
    args.push_back(std::move(first));
    while (cur_.kind == Tok::Or) {
      advance();
      args.push_back(parse_and());
    }
    return Formula::disjunction(std::move(args));
  }

  Formula parse_and() {
    Formula first = parse_not();
    if (cur_.kind != Tok::And) return first;
    std::vector<Formula> args;
    args.push_back(std::move(first));
    while (cur_.kind == Tok::And) {
      advance();
      args.push_back(parse_not());
    }
    return Formula::conjunction(std::move(args));
  }

  Formula parse_not() {
    if (cur_.kind == Tok::Not) {
      advance();
      return Formula::negation(parse_not());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    switch (cur_.kind) {
      case Tok::Ident: {
        std::string_view name = cur_.text;
        advance();
        if (name == "T") return Formula::top();
        if (name == "F") return Formula::bottom();
        auto idx = vocab_.index_of(name);
        if (!idx) throw UnknownVariable(std::string(name));
        return Formula::variable(*idx);
      }
      case Tok::LParen: {
        advance();
        Formula inner = parse_iff();
        if (cur_.kind != Tok::RParen) throw SyntaxError("expected ')'", cur_.offset);
        advance();
        return inner;
      }
      default:
        throw SyntaxError("expected operand", cur_.offset);
    }
  }

  Lexer lexer_;
  const Vocabulary& vocab_;
  Token cur_{Tok::End, 0, {}};
};

using K = Formula::Kind;

bool is_binary(K k) { return k == K::And || k == K::Or || k == K::Implies || k == K::Iff; }

void render(const Formula& f, const Vocabulary& vocab, std::string& out);

void render_child(const Formula& f, bool parens, const Vocabulary& vocab, std::string& out) {
  if (parens) out += '(';
  render(f, vocab, out);
  if (parens) out += ')';
}

void render(const Formula& f, const Vocabulary& vocab, std::string& out) {
  switch (f.kind) {
    case K::True: out += 'T'; return;
    case K::False: out += 'F'; return;
    case K::Var: out += vocab.name(f.var); return;
    case K::Not:
      out += '~';
      render_child(f.args[0], is_binary(f.args[0].kind), vocab, out);
      return;
    case K::And:
    case K::Or: {
      const char* op = f.kind == K::And ? " & " : " | ";
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += op;
        K ck = f.args[i].kind;
        bool parens = ck == K::Or || ck == K::Implies || ck == K::Iff || (f.kind == K::And && ck == K::And);
        render_child(f.args[i], parens, vocab, out);
      }
      return;
    }
    case K::Implies: {
      K lk = f.args[0].kind;
      render_child(f.args[0], lk == K::Implies || lk == K::Iff, vocab, out);
      out += " -> ";
      render_child(f.args[1], f.args[1].kind == K::Iff, vocab, out);
      return;
    }
    case K::Iff:
      render_child(f.args[0], f.args[0].kind == K::Iff, vocab, out);
      out += " <-> ";
      render_child(f.args[1], false, vocab, out);
      return;
  }
}

bool is_literal(const Formula& f) {
  return f.kind == K::Var || (f.kind == K::Not && f.args[0].kind == K::Var);
}

bool is_consistent_conjunction(const Formula& f) {
  if (f.kind == K::True || is_literal(f)) return true;
  if (f.kind != K::And) return false;
  std::vector<int> polarity;  // 0 unseen, 1 positive, -1 negative
  for (const auto& a : f.args) {
    if (!is_literal(a)) return false;
    std::size_t v = a.kind == K::Var ? a.var : a.args[0].var;
    int sign = a.kind == K::Var ? 1 : -1;
    if (polarity.size() <= v) polarity.resize(v + 1, 0);
    if (polarity[v] == -sign) return false;
    polarity[v] = sign;
  }
  return true;
}

}  // namespace

Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  return Parser(text, vocab).parse();
}

std::string to_string(const Formula& f, const Vocabulary& vocab) {
  std::string out;
  render(f, vocab, out);
  return out;
}

bool evaluate(const Formula& f, Model m) {
  switch (f.kind) {
    case K::True: return true;
    case K::False: return false;
    case K::Var: return m.value(f.var);
    case K::Not: return !evaluate(f.args[0], m);
    case K::And:
      for (const auto& a : f.args)
        if (!evaluate(a, m)) return false;
      return true;
    case K::Or:
      for (const auto& a : f.args)
        if (evaluate(a, m)) return true;
      return false;
    case K::Implies: return !evaluate(f.args[0], m) || evaluate(f.args[1], m);
    case K::Iff: return evaluate(f.args[0], m) == evaluate(f.args[1], m);
  }
  return false;
}

ModelSet models_of(const Formula& f, const Vocabulary& vocab, const ModelSet& ambient) {
  std::vector<Model> out;
  for (Model m : ambient) {
    if (m.width() != vocab.size()) throw PreconditionViolation("model width differs from vocabulary");
    if (evaluate(f, m)) out.push_back(m);
  }
  return ModelSet(std::move(out));
}

Formula strongest_conjunction(const ModelSet& models) {
  if (models.empty()) throw EmptySet("strongest conjunction of an empty model set is undefined");
  std::size_t n = models[0].width();
  std::vector<Formula> literals;
  for (std::size_t v = 0; v < n; ++v) {
    bool first = models[0].value(v);
    bool constant = std::all_of(models.begin(), models.end(), [&](Model m) { return m.value(v) == first; });
    if (!constant) continue;
    literals.push_back(first ? Formula::variable(v) : Formula::negation(Formula::variable(v)));
  }
  if (literals.empty()) return Formula::top();
  if (literals.size() == 1) return literals.front();
  return Formula::conjunction(std::move(literals));
}

FormulaClass classify_formula(const Formula& f) {
  if (is_consistent_conjunction(f)) return FormulaClass::InLAnd;
  if (f.kind != K::Or) return FormulaClass::General;
  for (const auto& a : f.args) {
    if (is_consistent_conjunction(a)) continue;
    if (a.kind == K::Or && classify_formula(a) != FormulaClass::General) continue;
    return FormulaClass::General;
  }
  return FormulaClass::InLOrAnd;
}

std::string_view to_string(FormulaClass c) {
  switch (c) {
    case FormulaClass::InLAnd: return "L_and";
    case FormulaClass::InLOrAnd: return "L_or_and";
    case FormulaClass::General: return "general";
  }
  return "general";
}

}  // namespace deon
