#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relik/error.hpp"
#include "relik/formula.hpp"
#include "relik/preorder.hpp"
#include "relik/set_lifting.hpp"
#include "relik/world_set.hpp"

namespace relik {

/// Truth assignment over a vocabulary: bit i is the value of proposition i.
using Assignment = std::uint64_t;

/// Declared, ordered proposition symbols.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > 64) throw Error(Errc::resource_limit, "more than 64 propositions");
    auto sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(Errc::invalid_argument, "duplicate proposition name");
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  std::size_t index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw Error(Errc::unknown_proposition, "proposition '" + name + "' is not declared");
    return static_cast<std::size_t>(it - names_.begin());
  }

  bool holds(const PropFormula& f, Assignment a) const {
    return f.evaluate([&](const std::string& n) { return ((a >> index(n)) & 1u) != 0; });
  }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> names_;
};

/// (W, >=, pi): worlds under a preorder, each carrying a total assignment.
class PreferentialStructure {
 public:
  PreferentialStructure() = default;
  PreferentialStructure(Vocabulary vocab, Preorder order, std::vector<Assignment> valuation)
      : vocab_(std::move(vocab)), order_(std::move(order)), strict_(strict_of(order_)), valuation_(std::move(valuation)) {
    if (valuation_.size() != order_.size())
      throw Error(Errc::invalid_argument, "valuation does not cover every world");
    const Assignment mask = vocab_.size() == 64 ? ~Assignment{0} : (Assignment{1} << vocab_.size()) - 1;
    for (auto a : valuation_)
      if (a & ~mask) throw Error(Errc::invalid_argument, "assignment mentions an undeclared proposition");
  }

  const Vocabulary& vocabulary() const { return vocab_; }
  const Preorder& order() const { return order_; }
  const StrictOrder& strict() const { return strict_; }
  const std::vector<Assignment>& valuation() const { return valuation_; }
  std::size_t size() const { return order_.size(); }
  Assignment assignment(WorldId w) const { return valuation_.at(w.index); }

  bool holds_at(WorldId w, const std::string& prop) const {
    return ((valuation_.at(w.index) >> vocab_.index(prop)) & 1u) != 0;
  }

 private:
  Vocabulary vocab_;
  Preorder order_;
  StrictOrder strict_;
  std::vector<Assignment> valuation_;
};

/// [[phi]]: the worlds whose assignment satisfies phi.
inline WorldSet truth_set(const PreferentialStructure& m, const PropFormula& phi) {
  auto check = [&](auto&& self, const PropFormula& f) -> void {
    switch (f.kind()) {
      case PropFormula::Kind::var: m.vocabulary().index(f.name()); return;
      case PropFormula::Kind::constant: return;
      case PropFormula::Kind::negation: self(self, f.operand()); return;
      default:
        self(self, f.lhs());
        self(self, f.rhs());
    }
  };
  check(check, phi);
  WorldSet out(m.size());
  for (std::size_t w = 0; w < m.size(); ++w)
    if (m.vocabulary().holds(phi, m.valuation()[w])) out.insert(WorldId{w});
  return out;
}

inline bool sat(const PreferentialStructure& m, const Likelihood& a) {
  return succ_s(m.strict(), truth_set(m, a.more), truth_set(m, a.less));
}

/// M |= f, with every basic formula read through >s on truth sets.
inline bool sat(const PreferentialStructure& m, const LFormula& f) {
  return f.evaluate([&](const Likelihood& a) { return sat(m, a); });
}

}  // namespace relik
