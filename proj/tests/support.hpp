#pragma once

// Enumerators, random generators and definition-level oracles shared by the test binaries.
// The oracles work on plain index vectors and never call the library's lifting code.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relik/algebra.hpp"
#include "relik/formula.hpp"
#include "relik/preorder.hpp"
#include "relik/relation_properties.hpp"
#include "relik/set_lifting.hpp"
#include "relik/structure.hpp"
#include "relik/world_set.hpp"

namespace relik::testing {

/// Every reflexive transitive relation on n labelled worlds.
inline std::vector<Preorder> all_preorders(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) off.emplace_back(i, j);
  std::vector<Preorder> out;
  const auto carrier = Carrier::numbered(n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << off.size()); ++m) {
    Relation r = Relation::identity(n);
    for (std::size_t b = 0; b < off.size(); ++b)
      if ((m >> b) & 1u) r.set(off[b].first, off[b].second);
    if (r.is_transitive()) out.emplace_back(carrier, r);
  }
  return out;
}

/// Every irreflexive transitive relation on n labelled worlds.
inline std::vector<StrictOrder> all_strict_orders(std::size_t n) {
  std::vector<StrictOrder> out;
  for (const auto& p : all_preorders(n)) {
    bool antisymmetric = true;
    for (std::size_t i = 0; i < n && antisymmetric; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && p.relation()(i, j) && p.relation()(j, i)) antisymmetric = false;
    if (antisymmetric) out.push_back(strict_of(p));
  }
  return out;
}

inline std::vector<Preorder> all_total_preorders(std::size_t n) {
  std::vector<Preorder> out;
  for (auto& p : all_preorders(n))
    if (is_total(p)) out.push_back(std::move(p));
  return out;
}

/// Closure of a random set of generator pairs; `density` is the chance of each ordered pair.
inline Preorder random_preorder(std::mt19937_64& rng, std::size_t n, double density = 0.3) {
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<WorldId, WorldId>> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && coin(rng)) gens.push_back({WorldId{i}, WorldId{j}});
  return Preorder::from_generators(Carrier::numbered(n), gens);
}

/// Random strict order: pairs i > j only for i < j under a random labelling, then closed.
inline StrictOrder random_strict_order(std::mt19937_64& rng, std::size_t n, double density = 0.35) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<WorldId, WorldId>> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) gens.push_back({WorldId{perm[i]}, WorldId{perm[j]}});
  return StrictOrder::from_generators(Carrier::numbered(n), gens);
}

inline Preorder random_total_preorder(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> d(0, n == 0 ? 0 : n - 1);
  std::vector<std::size_t> rank(n);
  for (auto& r : rank) r = d(rng);
  Relation geq(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rank[i] <= rank[j]) geq.set(i, j);
  return Preorder(Carrier::numbered(n), geq);
}

inline std::vector<WorldSet> all_subsets(std::size_t n) {
  std::vector<WorldSet> out;
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) out.emplace_back(Bits(n, m));
  return out;
}

namespace oracle {

using Set = std::vector<std::size_t>;
using Rel = std::function<bool(std::size_t, std::size_t)>;

inline Set members(std::size_t mask) {
  Set s;
  for (std::size_t i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) s.push_back(i);
  return s;
}

inline bool geq_s(const Rel& geq, const Set& U, const Set& V) {
  return std::all_of(V.begin(), V.end(), [&](std::size_t v) {
    return std::any_of(U.begin(), U.end(), [&](std::size_t u) { return geq(u, v); });
  });
}

inline bool succ_s(const Rel& gt, const Set& U, const Set& V) {
  if (U.empty()) return false;
  return std::all_of(V.begin(), V.end(), [&](std::size_t v) {
    return std::any_of(U.begin(), U.end(), [&](std::size_t u) {
      const bool dominates = std::none_of(V.begin(), V.end(), [&](std::size_t x) { return gt(x, u); });
      return gt(u, v) && dominates;
    });
  });
}

inline Rel geq_of(const Preorder& p) {
  return [&p](std::size_t a, std::size_t b) { return p.relation()(a, b); };
}

inline Rel gt_of(const Preorder& p) {
  return [&p](std::size_t a, std::size_t b) { return p.relation()(a, b) && !p.relation()(b, a); };
}

inline Rel gt_of(const StrictOrder& s) {
  return [&s](std::size_t a, std::size_t b) { return s.relation()(a, b); };
}

/// best(V) straight from the definition.
inline Set best(const Rel& gt, const Set& V) {
  Set out;
  for (auto v : V)
    if (std::none_of(V.begin(), V.end(), [&](std::size_t x) { return gt(x, v); })) out.push_back(v);
  return out;
}

}  // namespace oracle

/// Random propositional formula over the given symbols.
inline PropFormula random_prop(std::mt19937_64& rng, const std::vector<std::string>& props, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
  const int k = pick(rng);
  if (k == 0 || props.empty()) {
    std::uniform_int_distribution<int> c(0, 5);
    const int v = c(rng);
    if (props.empty() || v == 5) return PropFormula::constant(std::bernoulli_distribution(0.5)(rng));
    return PropFormula::var(props[std::uniform_int_distribution<std::size_t>(0, props.size() - 1)(rng)]);
  }
  if (k == 1) return PropFormula::var(props[std::uniform_int_distribution<std::size_t>(0, props.size() - 1)(rng)]);
  if (k == 2) return PropFormula::neg(random_prop(rng, props, depth - 1));
  if (k == 3) return PropFormula::conj(random_prop(rng, props, depth - 1), random_prop(rng, props, depth - 1));
  if (k == 4) return PropFormula::disj(random_prop(rng, props, depth - 1), random_prop(rng, props, depth - 1));
  return PropFormula::neg(PropFormula::conj(random_prop(rng, props, depth - 1), random_prop(rng, props, depth - 1)));
}

/// Random Boolean combination of `atoms` (each used at least once when possible).
template <class C>
C random_combination(std::mt19937_64& rng, const std::vector<C>& atoms, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 3);
  switch (pick(rng)) {
    case 0: {
      auto a = atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng)];
      return std::bernoulli_distribution(0.4)(rng) ? C::neg(a) : a;
    }
    case 1: return C::neg(random_combination(rng, atoms, depth - 1));
    case 2: return C::conj(random_combination(rng, atoms, depth - 1), random_combination(rng, atoms, depth - 1));
    default: return C::disj(random_combination(rng, atoms, depth - 1), random_combination(rng, atoms, depth - 1));
  }
}

/// Random likelihood formula with at most `max_basics` distinct basic subformulas.
inline LFormula random_lformula(std::mt19937_64& rng, const std::vector<std::string>& props, std::size_t max_basics,
                                int prop_depth = 2, int depth = 2) {
  std::uniform_int_distribution<std::size_t> nb(1, max_basics);
  std::vector<LFormula> atoms;
  const auto n = nb(rng);
  for (std::size_t i = 0; i < n; ++i)
    atoms.push_back(gg(random_prop(rng, props, prop_depth), random_prop(rng, props, prop_depth)));
  return random_combination(rng, atoms, depth);
}

/// One formula per truth function over `props`, in disjunctive normal form (false for the empty one).
inline std::vector<PropFormula> all_truth_functions(const std::vector<std::string>& props) {
  const std::size_t rows = std::size_t{1} << props.size();
  std::vector<PropFormula> out;
  for (std::uint64_t table = 0; table < (std::uint64_t{1} << rows); ++table) {
    std::optional<PropFormula> f;
    for (std::size_t row = 0; row < rows; ++row) {
      if (!((table >> row) & 1u)) continue;
      std::optional<PropFormula> minterm;
      for (std::size_t i = 0; i < props.size(); ++i) {
        auto lit = ((row >> i) & 1u) ? PropFormula::var(props[i]) : PropFormula::neg(PropFormula::var(props[i]));
        minterm = minterm ? PropFormula::conj(*minterm, lit) : lit;
      }
      const auto m = minterm.value_or(PropFormula::top());
      f = f ? PropFormula::disj(*f, m) : m;
    }
    out.push_back(f.value_or(PropFormula::bottom()));
  }
  return out;
}

/// Instances of the axiom schemes with random propositional arguments.
namespace axioms {

using P = PropFormula;

inline P rp(std::mt19937_64& rng, const std::vector<std::string>& props) { return random_prop(rng, props, 2); }

/// Substitution instance of a propositional tautology, with basic formulas for the letters.
inline LFormula l1(std::mt19937_64& rng, const std::vector<std::string>& props) {
  using T = Combination<int>;
  std::vector<T> letters;
  for (int i = 0; i < 3; ++i) letters.push_back(T::atom(i));
  auto tautology = [](const T& t) {
    for (int a = 0; a < 8; ++a)
      if (!t.evaluate([&](int i) { return ((a >> i) & 1) != 0; })) return false;
    return true;
  };
  T shape = random_combination(rng, letters, 3);
  for (int tries = 0; tries < 50 && !tautology(shape); ++tries) shape = random_combination(rng, letters, 3);
  if (!tautology(shape)) shape = T::disj(shape, T::neg(shape));
  std::vector<LFormula> basics;
  for (int i = 0; i < 3; ++i) basics.push_back(gg(rp(rng, props), rp(rng, props)));
  return shape.substitute<LFormula>([&](int i) { return basics[static_cast<std::size_t>(i)]; });
}

inline LFormula l2(std::mt19937_64& rng, const std::vector<std::string>& props) {
  const auto f = rp(rng, props);
  return LFormula::neg(gg(f, f));
}

inline LFormula l3(std::mt19937_64& rng, const std::vector<std::string>& props) {
  const auto a = rp(rng, props), b = rp(rng, props), c = rp(rng, props);
  return LFormula::implies(LFormula::conj(gg(P::disj(a, b), c), gg(P::disj(a, c), b)), gg(a, P::disj(b, c)));
}

/// Half the time the primed formulas are built to make the K premises true.
inline LFormula l4(std::mt19937_64& rng, const std::vector<std::string>& props) {
  const auto phi = rp(rng, props), psi = rp(rng, props);
  P phi2 = rp(rng, props), psi2 = rp(rng, props);
  if (std::bernoulli_distribution(0.5)(rng)) {
    phi2 = P::disj(phi, phi2);
    psi2 = P::conj(psi, psi2);
  }
  const auto premise =
      LFormula::conj(LFormula::conj(K(P::implies(phi, phi2)), K(P::implies(psi2, psi))), gg(phi, psi));
  return LFormula::implies(premise, gg(phi2, psi2));
}

inline LFormula l5(std::mt19937_64& rng, const std::vector<std::string>& props) {
  const auto a = rp(rng, props), b = rp(rng, props), c = rp(rng, props);
  return LFormula::implies(gg(a, b), LFormula::disj(gg(a, c), gg(c, b)));
}

inline LFormula l6(std::mt19937_64& rng, const std::vector<std::string>& props) {
  const auto a = rp(rng, props), b = rp(rng, props), c = rp(rng, props);
  return LFormula::implies(LFormula::conj(gg(a, b), gg(b, c)), gg(a, c));
}

inline LFormula l7(std::mt19937_64& rng, const std::vector<std::string>& props) {
  const auto a = rp(rng, props), b = rp(rng, props), c = rp(rng, props);
  return LFormula::implies(LFormula::conj(gg(a, b), gg(a, c)), gg(a, P::disj(b, c)));
}

}  // namespace axioms

/// Random structure over `props` with n worlds and a random preorder.
inline PreferentialStructure random_structure(std::mt19937_64& rng, const std::vector<std::string>& props,
                                              std::size_t n, bool total = false) {
  std::uniform_int_distribution<Assignment> val(0, (Assignment{1} << props.size()) - 1);
  std::vector<Assignment> v(n);
  for (auto& a : v) a = val(rng);
  auto order = total ? random_total_preorder(rng, n) : random_preorder(rng, n);
  return PreferentialStructure(Vocabulary(props), order, v);
}

/// Every structure on n worlds over `props`: all preorders times all valuations.
template <class Visit>
void for_each_structure(const std::vector<std::string>& props, std::size_t n, const std::vector<Preorder>& orders,
                        Visit&& visit) {
  const std::size_t per = std::size_t{1} << props.size();
  std::size_t combos = 1;
  for (std::size_t i = 0; i < n; ++i) combos *= per;
  for (const auto& order : orders)
    for (std::size_t c = 0; c < combos; ++c) {
      std::vector<Assignment> v(n);
      std::size_t x = c;
      for (auto& a : v) {
        a = x % per;
        x /= per;
      }
      visit(PreferentialStructure(Vocabulary(props), order, v));
    }
}

/// The materialized >s of a strict order on the powerset of its worlds.
inline SetRelation strict_lifting(const StrictOrder& s) {
  return materialize_lifted(FiniteAlgebra::powerset(s.carrier()),
                            [&](const WorldSet& u, const WorldSet& v) { return succ_s(s, u, v); });
}

/// The materialized >=s of a preorder on the powerset of its worlds.
inline SetRelation weak_lifting(const Preorder& p) {
  return materialize_lifted(FiniteAlgebra::powerset(p.carrier()),
                            [&](const WorldSet& u, const WorldSet& v) { return geq_s(p, u, v); });
}

/// Like for_each_structure, but only valuations listed in non-decreasing order. Every structure is
/// isomorphic to one of these, since permuting worlds to sort the valuation permutes the order too.
template <class Visit>
void for_each_structure_sorted(const std::vector<std::string>& props, std::size_t n,
                               const std::vector<Preorder>& orders, Visit&& visit) {
  const Assignment per = Assignment{1} << props.size();
  std::vector<std::vector<Assignment>> valuations;
  std::vector<Assignment> v(n);
  auto rec = [&](auto&& self, std::size_t i, Assignment from) -> void {
    if (i == n) {
      valuations.push_back(v);
      return;
    }
    for (Assignment a = from; a < per; ++a) {
      v[i] = a;
      self(self, i + 1, a);
    }
  };
  rec(rec, 0, 0);
  const Vocabulary vocab(props);
  for (const auto& order : orders)
    for (const auto& val : valuations) visit(PreferentialStructure(vocab, order, val));
}

/// First broken instance of the rule lemmas: orderly+qualitative gives transitive+union;
/// strict+modular+union gives qualitative; qualitative gives (Y-X) R X from Y R X; orderly+qualitative
/// gives (X1 u X') R X3 from (X1 u X2) R X3 and X' R X2.
inline std::optional<std::string> rule_violation(const SetRelation& r) {
  const bool orderly = is_orderly(r), qualitative = is_qualitative(r);
  if (orderly && qualitative && !(is_transitive(r) && has_union_property(r)))
    return "orderly and qualitative but not transitive with union";
  if (is_strict_partial_order(r) && is_modular(r) && has_union_property(r) && !qualitative)
    return "strict, modular and union but not qualitative";
  if (!qualitative) return std::nullopt;
  const auto f = static_cast<AtomMask>(r.family_size());
  for (AtomMask y = 0; y < f; ++y)
    for (AtomMask x = 0; x < f; ++x)
      if (r.contains(y, x) && !r.contains(y & ~x, x))
        return "difference rule fails at " + std::to_string(y) + "," + std::to_string(x);
  if (!orderly) return std::nullopt;
  for (AtomMask y = 0; y < f; ++y)
    for (AtomMask x3 = 0; x3 < f; ++x3) {
      if (!r.contains(y, x3)) continue;
      // every split y = x1 u x2
      for (AtomMask x2 = y;; x2 = (x2 - 1) & y) {
        for (AtomMask extra = x2;; extra = (extra - 1) & x2) {
          const AtomMask x1 = (y & ~x2) | extra;
          for (AtomMask xp = 0; xp < f; ++xp)
            if (r.contains(xp, x2) && !r.contains(x1 | xp, x3))
              return "replacement rule fails at " + std::to_string(x1) + "," + std::to_string(x2) + "," +
                     std::to_string(x3) + "," + std::to_string(xp);
          if (extra == 0) break;
        }
        if (x2 == 0) break;
      }
    }
  return std::nullopt;
}

/// Powerset algebra over the world names of a carrier.
inline FiniteAlgebra powerset_of(const Carrier& c) { return FiniteAlgebra::powerset(c); }

inline PreferentialStructure two_chains() {
  Carrier c = Carrier::numbered(4);
  auto order = Preorder::from_generators(c, {{WorldId{0}, WorldId{2}}, {WorldId{1}, WorldId{3}}});
  // bit 0 = p, bit 1 = q
  return PreferentialStructure(Vocabulary({"p", "q"}), order, {0b11, 0b01, 0b10, 0b10});
}

inline LFormula two_chains_formula() {
  using P = PropFormula;
  const auto p = P::var("p"), q = P::var("q");
  const auto target = P::conj(P::neg(p), q);
  return LFormula::conj(LFormula::conj(gg(p, target), LFormula::neg(gg(P::conj(p, q), target))),
                        LFormula::neg(gg(P::conj(p, P::neg(q)), target)));
}

/// Two incomparable worlds.
inline Preorder incomparable_pair() { return Preorder::discrete(Carrier::numbered(2)); }

/// Relation over three atoms A = {a}, B = {b}, C = {c} on ground {a, b, c}:
/// (B u C) > A, W > A, and X > empty for nonempty X.
inline SetRelation multi_world_relation() {
  SetRelation r(FiniteAlgebra::powerset(Carrier({"a", "b", "c"})));
  r.insert(0b110, 0b001);
  r.insert(0b111, 0b001);
  for (AtomMask x = 1; x < 8; ++x) r.insert(x, 0);
  return r;
}

}  // namespace relik::testing
