#pragma once

// Recursive-descent parser for propositional, likelihood (>>) and conditional (=>) formulas.
//
//   expr    := imp [ ('>>' | '=>') imp ]
//   imp     := or [ '->' imp ]
//   or      := and { '|' and }
//   and     := unary { '&' unary }
//   unary   := '!' unary | primary
//   primary := ident | 'true' | 'false' | '(' expr ')'
//   ident   := [a-z][a-z0-9_]*
//
// The generic tree is then checked against the requested language.

#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "relik/error.hpp"
#include "relik/formula.hpp"

namespace relik {

namespace parse_detail {

enum class Tok { ident, kw_true, kw_false, lparen, rparen, bang, amp, bar, arrow, gg, cond, end };

inline std::string describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::kw_true: return "'true'";
    case Tok::kw_false: return "'false'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::bang: return "'!'";
    case Tok::amp: return "'&'";
    case Tok::bar: return "'|'";
    case Tok::arrow: return "'->'";
    case Tok::gg: return "'>>'";
    case Tok::cond: return "'=>'";
    case Tok::end: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto two = [&](char a, char b) { return i + 1 < s.size() && s[i] == a && s[i + 1] == b; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < s.size() && ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= '0' && s[j] <= '9') || s[j] == '_')) ++j;
      std::string word(s.substr(i, j - i));
      Tok k = word == "true" ? Tok::kw_true : word == "false" ? Tok::kw_false : Tok::ident;
      out.push_back({k, i, std::move(word)});
      i = j;
      continue;
    }
    if (two('-', '>')) {
      out.push_back({Tok::arrow, i, "->"});
      i += 2;
    } else if (two('>', '>')) {
      out.push_back({Tok::gg, i, ">>"});
      i += 2;
    } else if (two('=', '>')) {
      out.push_back({Tok::cond, i, "=>"});
      i += 2;
    } else if (c == '(') {
      out.push_back({Tok::lparen, i++, "("});
    } else if (c == ')') {
      out.push_back({Tok::rparen, i++, ")"});
    } else if (c == '!') {
      out.push_back({Tok::bang, i++, "!"});
    } else if (c == '&') {
      out.push_back({Tok::amp, i++, "&"});
    } else if (c == '|') {
      out.push_back({Tok::bar, i++, "|"});
    } else {
      throw ParseError(i, {"identifier", "'true'", "'false'", "'('", "'!'"},
                       std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::end, s.size(), ""});
  return out;
}

/// Generic syntax tree before classification.
struct Node {
  enum class Kind { var, constant, negation, conjunction, disjunction, implication, likelihood, conditional };
  Kind kind;
  std::size_t pos;  // operator or leaf position
  std::string name;
  bool value = false;
  std::shared_ptr<Node> lhs, rhs;
};
using NodePtr = std::shared_ptr<Node>;

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  NodePtr parse_all() {
    auto n = expr();
    if (peek().kind != Tok::end) fail({Tok::end, Tok::amp, Tok::bar, Tok::arrow, Tok::gg, Tok::cond}, "unexpected token");
    return n;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }

  [[noreturn]] void fail(std::vector<Tok> expected, const std::string& msg) const {
    std::vector<std::string> names;
    for (auto t : expected) names.push_back(describe(t));
    const auto& t = peek();
    throw ParseError(t.pos, std::move(names), msg + (t.kind == Tok::end ? " (end of input)" : " '" + t.text + "'"));
  }

  static NodePtr make(Node::Kind k, std::size_t pos, NodePtr l = nullptr, NodePtr r = nullptr) {
    return std::make_shared<Node>(Node{k, pos, {}, false, std::move(l), std::move(r)});
  }

  NodePtr expr() {
    auto l = imp();
    if (peek().kind == Tok::gg || peek().kind == Tok::cond) {
      const auto& op = take();
      auto r = imp();
      if (peek().kind == Tok::gg || peek().kind == Tok::cond)
        throw ParseError(peek().pos, {describe(Tok::end), describe(Tok::rparen)},
                         "modal operators may not be chained or nested");
      return make(op.kind == Tok::gg ? Node::Kind::likelihood : Node::Kind::conditional, op.pos, l, r);
    }
    return l;
  }

  NodePtr imp() {
    auto l = disj();
    if (peek().kind == Tok::arrow) {
      const auto pos = take().pos;
      return make(Node::Kind::implication, pos, l, imp());
    }
    return l;
  }

  NodePtr disj() {
    auto l = conj();
    while (peek().kind == Tok::bar) {
      const auto pos = take().pos;
      l = make(Node::Kind::disjunction, pos, l, conj());
    }
    return l;
  }

  NodePtr conj() {
    auto l = unary();
    while (peek().kind == Tok::amp) {
      const auto pos = take().pos;
      l = make(Node::Kind::conjunction, pos, l, unary());
    }
    return l;
  }

  NodePtr unary() {
    if (peek().kind == Tok::bang) {
      const auto pos = take().pos;
      return make(Node::Kind::negation, pos, unary());
    }
    return primary();
  }

  NodePtr primary() {
    const auto& t = peek();
    switch (t.kind) {
      case Tok::ident: {
        take();
        auto n = make(Node::Kind::var, t.pos);
        n->name = t.text;
        return n;
      }
      case Tok::kw_true:
      case Tok::kw_false: {
        take();
        auto n = make(Node::Kind::constant, t.pos);
        n->value = t.kind == Tok::kw_true;
        return n;
      }
      case Tok::lparen: {
        take();
        auto n = expr();
        if (peek().kind != Tok::rparen) fail({Tok::rparen}, "unbalanced parenthesis, found");
        take();
        return n;
      }
      default: fail({Tok::ident, Tok::kw_true, Tok::kw_false, Tok::lparen, Tok::bang}, "expected a formula, found");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

inline const std::vector<std::string>& prop_operand_expected() {
  static const std::vector<std::string> e{"identifier", "'true'", "'false'", "'('", "'!'"};
  return e;
}

inline PropFormula to_prop(const Node& n, const char* context) {
  using K = Node::Kind;
  switch (n.kind) {
    case K::var: return PropFormula::var(n.name);
    case K::constant: return PropFormula::constant(n.value);
    case K::negation: return PropFormula::neg(to_prop(*n.lhs, context));
    case K::conjunction: return PropFormula::conj(to_prop(*n.lhs, context), to_prop(*n.rhs, context));
    case K::disjunction: return PropFormula::disj(to_prop(*n.lhs, context), to_prop(*n.rhs, context));
    case K::implication: return PropFormula::implies(to_prop(*n.lhs, context), to_prop(*n.rhs, context));
    case K::likelihood:
    case K::conditional:
      throw ParseError(n.pos, prop_operand_expected(), std::string("modal operator inside ") + context);
  }
  throw ParseError(n.pos, {}, "unreachable");
}

template <class Atom>
Combination<Atom> to_modal(const Node& n, Node::Kind wanted, const char* op) {
  using K = Node::Kind;
  using C = Combination<Atom>;
  switch (n.kind) {
    case K::negation: return C::neg(to_modal<Atom>(*n.lhs, wanted, op));
    case K::conjunction: return C::conj(to_modal<Atom>(*n.lhs, wanted, op), to_modal<Atom>(*n.rhs, wanted, op));
    case K::disjunction: return C::disj(to_modal<Atom>(*n.lhs, wanted, op), to_modal<Atom>(*n.rhs, wanted, op));
    case K::likelihood:
    case K::conditional: {
      if (n.kind != wanted)
        throw ParseError(n.pos, {std::string("'") + op + "'"}, "wrong modal operator for this language");
      auto l = to_prop(*n.lhs, "a modal operand (nesting is not allowed)");
      auto r = to_prop(*n.rhs, "a modal operand (nesting is not allowed)");
      if constexpr (std::is_same_v<Atom, Likelihood>)
        return C::atom(Likelihood{std::move(l), std::move(r)});
      else
        return C::atom(Conditional{std::move(l), std::move(r)});
    }
    case K::implication:
      throw ParseError(n.pos, {"'&'", "'|'"}, "'->' connects propositional formulas only");
    default:
      throw ParseError(n.pos, {std::string("'") + op + "'"},
                       "bare propositional formula where a modal formula is required");
  }
}

}  // namespace parse_detail

inline PropFormula parse_prop(std::string_view text) {
  auto n = parse_detail::Parser(text).parse_all();
  return parse_detail::to_prop(*n, "a propositional formula");
}

/// Likelihood language: Boolean combinations of `phi >> psi` with propositional phi, psi.
inline LFormula parse_l(std::string_view text) {
  auto n = parse_detail::Parser(text).parse_all();
  return parse_detail::to_modal<Likelihood>(*n, parse_detail::Node::Kind::likelihood, ">>");
}

/// Conditional language: Boolean combinations of `psi => phi`.
inline CondFormula parse_cond(std::string_view text) {
  auto n = parse_detail::Parser(text).parse_all();
  return parse_detail::to_modal<Conditional>(*n, parse_detail::Node::Kind::conditional, "=>");
}

}  // namespace relik
