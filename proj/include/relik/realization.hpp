#pragma once

// World-level orderings whose lifted set ordering agrees with a given relation on an algebra.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relik/algebra.hpp"
#include "relik/error.hpp"
#include "relik/mp_tree.hpp"
#include "relik/preorder.hpp"
#include "relik/relation_properties.hpp"
#include "relik/set_lifting.hpp"

namespace relik {

/// Which lifting a realization is compared against: >=s (weak) or >s (strict).
enum class Lifting { weak, strict };

struct Realization {
  Preorder preorder;
  /// Atom index of the algebra for each world.
  std::vector<std::size_t> atom_of_world;
  /// Tree each world was allocated for; present only for strict realizations.
  std::optional<std::vector<MPTree>> tree_of_world;
  Lifting lifting = Lifting::strict;

  WorldSet worlds_of(AtomMask m) const {
    WorldSet s(preorder.size());
    for (std::size_t w = 0; w < atom_of_world.size(); ++w)
      if ((m >> atom_of_world[w]) & 1u) s.insert(WorldId{w});
    return s;
  }
};

struct AgreementResult {
  bool agrees = true;
  /// First (U, V) scanned with U outer and V inner where the two sides differ.
  std::optional<std::pair<AtomMask, AtomMask>> counterexample;
  /// Whether the relation held at the counterexample (the lifted side then did not).
  bool relation_side = false;
};

/// Exhaustive biconditional scan of r against the lifting of the realization's order.
inline AgreementResult agreement(const SetRelation& r, const Realization& real) {
  const auto k = r.algebra().atom_count();
  for (auto a : real.atom_of_world)
    if (a >= k) throw Error(Errc::invalid_argument, "realization maps a world to an unknown atom");
  const auto f = static_cast<AtomMask>(r.family_size());
  std::vector<WorldSet> sets;
  sets.reserve(f);
  for (AtomMask m = 0; m < f; ++m) sets.push_back(real.worlds_of(m));
  std::optional<StrictOrder> strict;
  if (real.lifting == Lifting::strict) strict = strict_of(real.preorder);
  for (AtomMask u = 0; u < f; ++u)
    for (AtomMask v = 0; v < f; ++v) {
      const bool lifted = strict ? succ_s(*strict, sets[u], sets[v]) : geq_s(real.preorder, sets[u], sets[v]);
      const bool held = r.contains(u, v);
      if (lifted != held) return {false, std::make_pair(u, v), held};
    }
  return {};
}

/// Realization whose worlds are the algebra's ground elements under the given preorder.
inline Realization realization_on_ground(const FiniteAlgebra& algebra, Preorder order, Lifting lifting) {
  if (order.size() != algebra.ground().size())
    throw Error(Errc::invalid_argument, "order carrier differs from the ground set");
  Realization real{std::move(order), {}, std::nullopt, lifting};
  for (std::size_t w = 0; w < real.preorder.size(); ++w) {
    const auto e = algebra.ground().id(real.preorder.carrier().name(WorldId{w}));
    real.atom_of_world.push_back(algebra.atom_of(e.index));
  }
  return real;
}

/// Total case: one world per ground element, v >= w iff atom(v) R atom(w).
/// Checks total preorder, orderly and union before building, and agreement after.
inline Realization realize_total(const SetRelation& r) {
  if (!is_preorder(r) || !is_total(r))
    throw Error(Errc::not_total_preorder, "relation is not a total preorder on the family");
  if (!is_orderly(r)) throw Error(Errc::invalid_relation, "relation is not orderly");
  if (!has_union_property(r)) throw Error(Errc::invalid_relation, "relation lacks the union property");
  const auto& alg = r.algebra();
  const auto n = alg.ground().size();
  Relation geq(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (r.contains(AtomMask{1} << alg.atom_of(v), AtomMask{1} << alg.atom_of(w))) geq.set(v, w);
  auto real = realization_on_ground(alg, Preorder(alg.ground(), std::move(geq)), Lifting::weak);
  if (auto a = agreement(r, real); !a.agrees)
    throw Error(Errc::agreement_failure, "realized order disagrees with the relation");
  return real;
}

struct RealizeOptions {
  std::size_t max_atoms = 5;
  TreeLimits trees;
};

/// World name for the j-th tree (from 1) of an atom.
inline std::string realized_world_name(const FiniteAlgebra& alg, std::size_t atom, std::size_t j) {
  const auto first = alg.atoms()[atom].find_first();
  return alg.ground().name(WorldId{first}) + "_" + std::to_string(j);
}

/// Partial case: one world per (atom, minimal-pair tree rooted at that atom);
/// u > w iff the tree of u is a proper subtree of the tree of w.
inline Realization realize_partial(const SetRelation& r, RealizeOptions options = {}) {
  if (!is_strict_partial_order(r)) throw Error(Errc::invalid_relation, "relation is not a strict partial order");
  const auto& alg = r.algebra();
  if (alg.atom_count() > options.max_atoms)
    throw Error(Errc::resource_limit, "algebra has " + std::to_string(alg.atom_count()) +
                                          " atoms, above the cap of " + std::to_string(options.max_atoms));
  const auto table = minimal_pair_table(r);
  TreeEnumerator enumerator(table, options.trees);

  std::vector<std::string> names;
  std::vector<std::size_t> atom_of_world;
  std::vector<MPTree> tree_of_world;
  for (std::size_t a = 0; a < alg.atom_count(); ++a) {
    const auto& trees = enumerator.trees(a);
    if (trees.empty()) throw Error(Errc::agreement_failure, "atom has no minimal-pair tree");
    for (std::size_t j = 0; j < trees.size(); ++j) {
      names.push_back(realized_world_name(alg, a, j + 1));
      atom_of_world.push_back(a);
      tree_of_world.push_back(trees[j]);
    }
  }

  std::map<MPTree, std::size_t> world_of_tree;
  for (std::size_t w = 0; w < tree_of_world.size(); ++w) world_of_tree.emplace(tree_of_world[w], w);
  Relation gt(tree_of_world.size());
  for (std::size_t w = 0; w < tree_of_world.size(); ++w)
    for (const auto& sub : proper_subtrees(tree_of_world[w])) {
      auto it = world_of_tree.find(sub);
      if (it == world_of_tree.end())
        throw Error(Errc::agreement_failure, "proper subtree is not itself an allocated tree");
      gt.set(it->second, w);
    }

  Carrier carrier(std::move(names));
  Realization real{StrictOrder(carrier, std::move(gt)).reflexive_closure(), std::move(atom_of_world),
                   std::move(tree_of_world), Lifting::strict};
  if (auto a = agreement(r, real); !a.agrees) {
    const auto [u, v] = *a.counterexample;
    throw Error(Errc::agreement_failure, "realized order disagrees with the relation at masks (" +
                                             std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  return real;
}

}  // namespace relik
