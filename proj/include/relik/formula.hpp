#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "relik/error.hpp"

namespace relik {

/// Immutable propositional formula. Implication is sugar for !a | b.
class PropFormula {
 public:
  enum class Kind { var, constant, negation, conjunction, disjunction };

  PropFormula() : PropFormula(constant(true)) {}

  static PropFormula var(std::string name) { return PropFormula(Node{Kind::var, std::move(name), false, nullptr, nullptr}); }
  static PropFormula constant(bool value) { return PropFormula(Node{Kind::constant, {}, value, nullptr, nullptr}); }
  static PropFormula top() { return constant(true); }
  static PropFormula bottom() { return constant(false); }
  static PropFormula neg(PropFormula a) { return PropFormula(Node{Kind::negation, {}, false, box(std::move(a)), nullptr}); }
  static PropFormula conj(PropFormula a, PropFormula b) {
    return PropFormula(Node{Kind::conjunction, {}, false, box(std::move(a)), box(std::move(b))});
  }
  static PropFormula disj(PropFormula a, PropFormula b) {
    return PropFormula(Node{Kind::disjunction, {}, false, box(std::move(a)), box(std::move(b))});
  }
  static PropFormula implies(PropFormula a, PropFormula b) { return disj(neg(std::move(a)), std::move(b)); }

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  bool value() const { return node_->value; }
  const PropFormula& operand() const { return *node_->lhs; }
  const PropFormula& lhs() const { return *node_->lhs; }
  const PropFormula& rhs() const { return *node_->rhs; }

  /// `truth(name)` gives the value of a proposition symbol.
  template <class Truth>
  bool evaluate(Truth&& truth) const {
    switch (kind()) {
      case Kind::var: return truth(name());
      case Kind::constant: return value();
      case Kind::negation: return !operand().evaluate(truth);
      case Kind::conjunction: return lhs().evaluate(truth) && rhs().evaluate(truth);
      case Kind::disjunction: return lhs().evaluate(truth) || rhs().evaluate(truth);
    }
    return false;
  }

  void collect_props(std::set<std::string>& out) const {
    switch (kind()) {
      case Kind::var: out.insert(name()); break;
      case Kind::constant: break;
      case Kind::negation: operand().collect_props(out); break;
      default:
        lhs().collect_props(out);
        rhs().collect_props(out);
    }
  }

  friend bool operator==(const PropFormula& a, const PropFormula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::var: return a.name() == b.name();
      case Kind::constant: return a.value() == b.value();
      case Kind::negation: return a.operand() == b.operand();
      default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    bool value = false;
    std::shared_ptr<const PropFormula> lhs;
    std::shared_ptr<const PropFormula> rhs;
  };

  static std::shared_ptr<const PropFormula> box(PropFormula f) {
    return std::make_shared<const PropFormula>(std::move(f));
  }

  explicit PropFormula(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  std::shared_ptr<const Node> node_;
};

/// Boolean combination of non-nesting modal atoms.
template <class Atom>
class Combination {
 public:
  enum class Kind { atom, negation, conjunction, disjunction };
  using atom_type = Atom;

  static Combination atom(Atom a) {
    Combination c;
    c.node_ = std::make_shared<const Node>(Node{Kind::atom, std::move(a), {}, {}});
    return c;
  }
  static Combination neg(Combination a) { return make(Kind::negation, std::move(a), {}); }
  static Combination conj(Combination a, Combination b) { return make(Kind::conjunction, std::move(a), std::move(b)); }
  static Combination disj(Combination a, Combination b) { return make(Kind::disjunction, std::move(a), std::move(b)); }
  static Combination implies(Combination a, Combination b) { return disj(neg(std::move(a)), std::move(b)); }

  Kind kind() const { return node_->kind; }
  const Atom& atom_value() const { return node_->atom; }
  const Combination& operand() const { return *node_->lhs; }
  const Combination& lhs() const { return *node_->lhs; }
  const Combination& rhs() const { return *node_->rhs; }

  template <class Value>
  bool evaluate(Value&& atom_value_fn) const {
    switch (kind()) {
      case Kind::atom: return atom_value_fn(atom_value());
      case Kind::negation: return !operand().evaluate(atom_value_fn);
      case Kind::conjunction: return lhs().evaluate(atom_value_fn) && rhs().evaluate(atom_value_fn);
      case Kind::disjunction: return lhs().evaluate(atom_value_fn) || rhs().evaluate(atom_value_fn);
    }
    return false;
  }

  /// Visits atoms leftmost first.
  template <class Visit>
  void for_each_atom(Visit&& visit) const {
    switch (kind()) {
      case Kind::atom: visit(atom_value()); break;
      case Kind::negation: operand().for_each_atom(visit); break;
      default:
        lhs().for_each_atom(visit);
        rhs().for_each_atom(visit);
    }
  }

  /// Replaces every atom by `f(atom)`, a combination of another kind, keeping the connectives.
  template <class Out, class F>
  Out substitute(F&& f) const {
    switch (kind()) {
      case Kind::atom: return f(atom_value());
      case Kind::negation: return Out::neg(operand().template substitute<Out>(f));
      case Kind::conjunction:
        return Out::conj(lhs().template substitute<Out>(f), rhs().template substitute<Out>(f));
      default: return Out::disj(lhs().template substitute<Out>(f), rhs().template substitute<Out>(f));
    }
  }

  friend bool operator==(const Combination& a, const Combination& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::atom: return a.atom_value() == b.atom_value();
      case Kind::negation: return a.operand() == b.operand();
      default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }

 private:
  struct Node {
    Kind kind;
    Atom atom;
    std::shared_ptr<const Combination> lhs;
    std::shared_ptr<const Combination> rhs;
  };

  static Combination make(Kind k, std::optional<Combination> a, std::optional<Combination> b) {
    Combination c;
    auto l = a ? std::make_shared<const Combination>(std::move(*a)) : nullptr;
    auto r = b ? std::make_shared<const Combination>(std::move(*b)) : nullptr;
    c.node_ = std::make_shared<const Node>(Node{k, Atom{}, std::move(l), std::move(r)});
    return c;
  }

  std::shared_ptr<const Node> node_;
};

/// more >> less: the worlds satisfying `more` are strictly more likely than those satisfying `less`.
struct Likelihood {
  PropFormula more;
  PropFormula less;

  friend bool operator==(const Likelihood&, const Likelihood&) = default;
};

/// antecedent => consequent.
struct Conditional {
  PropFormula antecedent;
  PropFormula consequent;

  friend bool operator==(const Conditional&, const Conditional&) = default;
};

using LFormula = Combination<Likelihood>;
using CondFormula = Combination<Conditional>;

inline LFormula gg(PropFormula more, PropFormula less) {
  return LFormula::atom(Likelihood{std::move(more), std::move(less)});
}

inline CondFormula arrow(PropFormula antecedent, PropFormula consequent) {
  return CondFormula::atom(Conditional{std::move(antecedent), std::move(consequent)});
}

/// K phi = !(!phi >> false): phi holds at every world.
inline LFormula K(PropFormula phi) { return LFormula::neg(gg(PropFormula::neg(std::move(phi)), PropFormula::bottom())); }

/// Distinct basic subformulas in leftmost-first order.
template <class Atom>
std::vector<Atom> basic_subformulas(const Combination<Atom>& f) {
  std::vector<Atom> out;
  f.for_each_atom([&](const Atom& a) {
    for (const auto& seen : out)
      if (seen == a) return;
    out.push_back(a);
  });
  return out;
}

template <class Atom>
std::set<std::string> props_of(const Combination<Atom>& f) {
  std::set<std::string> out;
  f.for_each_atom([&](const Atom& a) {
    if constexpr (std::is_same_v<Atom, Likelihood>) {
      a.more.collect_props(out);
      a.less.collect_props(out);
    } else {
      a.antecedent.collect_props(out);
      a.consequent.collect_props(out);
    }
  });
  return out;
}

namespace detail {

inline int precedence(PropFormula::Kind k) {
  switch (k) {
    case PropFormula::Kind::disjunction: return 1;
    case PropFormula::Kind::conjunction: return 2;
    case PropFormula::Kind::negation: return 3;
    default: return 4;
  }
}

template <class Atom>
int precedence(typename Combination<Atom>::Kind k) {
  using K = typename Combination<Atom>::Kind;
  switch (k) {
    case K::disjunction: return 1;
    case K::conjunction: return 2;
    case K::negation: return 3;
    default: return 0;  // modal atoms are always parenthesized below a connective
  }
}

}  // namespace detail

/// Canonical text: minimal parentheses, left-associative binaries, "!", "&", "|".
inline std::string to_string(const PropFormula& f) {
  using K = PropFormula::Kind;
  auto wrap = [](const PropFormula& child, int min_prec) {
    auto s = to_string(child);
    return detail::precedence(child.kind()) < min_prec ? "(" + s + ")" : s;
  };
  switch (f.kind()) {
    case K::var: return f.name();
    case K::constant: return f.value() ? "true" : "false";
    case K::negation: return "!" + wrap(f.operand(), 3);
    case K::conjunction: return wrap(f.lhs(), 2) + " & " + wrap(f.rhs(), 3);
    case K::disjunction: return wrap(f.lhs(), 1) + " | " + wrap(f.rhs(), 2);
  }
  return {};
}

namespace detail {

inline std::string modal_operand(const PropFormula& f) {
  auto s = to_string(f);
  const auto k = f.kind();
  return (k == PropFormula::Kind::conjunction || k == PropFormula::Kind::disjunction) ? "(" + s + ")" : s;
}

inline std::string atom_text(const Likelihood& a) { return modal_operand(a.more) + " >> " + modal_operand(a.less); }
inline std::string atom_text(const Conditional& a) {
  return modal_operand(a.antecedent) + " => " + modal_operand(a.consequent);
}

}  // namespace detail

template <class Atom>
std::string to_string(const Combination<Atom>& f) {
  using K = typename Combination<Atom>::Kind;
  auto wrap = [](const Combination<Atom>& child, int min_prec) {
    auto s = to_string(child);
    return detail::precedence<Atom>(child.kind()) < min_prec ? "(" + s + ")" : s;
  };
  switch (f.kind()) {
    case K::atom: return detail::atom_text(f.atom_value());
    case K::negation: return "!" + wrap(f.operand(), 3);
    case K::conjunction: return wrap(f.lhs(), 2) + " & " + wrap(f.rhs(), 3);
    case K::disjunction: return wrap(f.lhs(), 1) + " | " + wrap(f.rhs(), 2);
  }
  return {};
}

}  // namespace relik
