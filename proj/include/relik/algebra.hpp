#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relik/error.hpp"
#include "relik/preorder.hpp"
#include "relik/world_set.hpp"

namespace relik {

/// A member of a finite algebra, written as the set of atoms whose union it is.
/// Bit i stands for atom i; union, intersection and complement are bitwise.
using AtomMask = std::uint32_t;

struct AlgebraLimits {
  /// Largest family accepted by the exhaustive audits and constructions.
  std::size_t max_family = 256;
};

/// Finite algebra of subsets of a named ground set, stored through its atoms.
class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;

  /// Validates closure under union and complement and that the ground set is present.
  static FiniteAlgebra from_family(Carrier ground, const std::vector<Bits>& family,
                                   AlgebraLimits limits = {}) {
    const std::size_t n = ground.size();
    std::vector<Bits> members;
    for (const auto& m : family) {
      if (m.size() != n) throw Error(Errc::invalid_algebra, "member is not a subset of the ground set");
      if (std::find(members.begin(), members.end(), m) == members.end()) members.push_back(m);
    }
    Bits full(n);
    full.set();
    auto present = [&](const Bits& b) {
      return std::find(members.begin(), members.end(), b) != members.end();
    };
    if (!present(full)) throw Error(Errc::invalid_algebra, "family does not contain the ground set");
    for (const auto& a : members) {
      if (!present(~a)) throw Error(Errc::invalid_algebra, "family is not closed under complement");
      for (const auto& b : members)
        if (!present(a | b)) throw Error(Errc::invalid_algebra, "family is not closed under union");
    }
    std::vector<Bits> atoms;
    for (const auto& m : members) {
      if (m.none()) continue;
      bool minimal = true;
      for (const auto& o : members)
        if (o.any() && o != m && o.is_subset_of(m)) {
          minimal = false;
          break;
        }
      if (minimal) atoms.push_back(m);
    }
    FiniteAlgebra alg(std::move(ground), std::move(atoms), limits);
    if (alg.family_size() != members.size())
      throw Error(Errc::invalid_algebra, "family is not generated by its atoms");
    return alg;
  }

  /// Every subset of the ground set; atoms are the singletons.
  static FiniteAlgebra powerset(Carrier ground, AlgebraLimits limits = {}) {
    std::vector<Bits> atoms;
    for (std::size_t i = 0; i < ground.size(); ++i) {
      Bits b(ground.size());
      b.set(i);
      atoms.push_back(std::move(b));
    }
    return FiniteAlgebra(std::move(ground), std::move(atoms), limits);
  }

  /// Algebra whose atoms are the given nonempty disjoint blocks covering the ground set.
  static FiniteAlgebra from_partition(Carrier ground, std::vector<Bits> blocks,
                                      AlgebraLimits limits = {}) {
    Bits seen(ground.size());
    for (const auto& b : blocks) {
      if (b.size() != ground.size() || b.none())
        throw Error(Errc::invalid_algebra, "partition block is empty or foreign");
      if (b.intersects(seen)) throw Error(Errc::invalid_algebra, "partition blocks overlap");
      seen |= b;
    }
    if (!seen.all()) throw Error(Errc::invalid_algebra, "partition does not cover the ground set");
    return FiniteAlgebra(std::move(ground), std::move(blocks), limits);
  }

  /// Smallest algebra containing the generators: atoms are the classes of elements that
  /// agree on membership in every generator.
  static FiniteAlgebra generated_by(Carrier ground, const std::vector<Bits>& generators,
                                    AlgebraLimits limits = {}) {
    std::map<std::vector<bool>, Bits> classes;
    for (std::size_t e = 0; e < ground.size(); ++e) {
      std::vector<bool> signature;
      for (const auto& g : generators) {
        if (g.size() != ground.size()) throw Error(Errc::invalid_algebra, "generator is foreign");
        signature.push_back(g.test(e));
      }
      auto [it, fresh] = classes.try_emplace(signature, Bits(ground.size()));
      it->second.set(e);
    }
    std::vector<Bits> blocks;
    for (auto& [sig, block] : classes) blocks.push_back(block);
    return from_partition(std::move(ground), std::move(blocks), limits);
  }

  const Carrier& ground() const { return ground_; }
  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t family_size() const { return std::size_t{1} << atoms_.size(); }
  const std::vector<Bits>& atoms() const { return atoms_; }
  AtomMask full() const { return static_cast<AtomMask>(family_size() - 1); }

  Bits elements(AtomMask m) const {
    Bits out(ground_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (m & (AtomMask{1} << i)) out |= atoms_[i];
    return out;
  }

  /// Mask of a ground subset, or nothing if it is not a member of the family.
  std::optional<AtomMask> mask_of(const Bits& elements) const {
    if (elements.size() != ground_.size()) return std::nullopt;
    AtomMask m = 0;
    Bits covered(ground_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (atoms_[i].is_subset_of(elements)) {
        m |= AtomMask{1} << i;
        covered |= atoms_[i];
      } else if (atoms_[i].intersects(elements)) {
        return std::nullopt;
      }
    }
    if (covered != elements) return std::nullopt;
    return m;
  }

  /// Index of the atom containing a ground element.
  std::size_t atom_of(std::size_t element) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i].test(element)) return i;
    throw Error(Errc::invalid_algebra, "element is in no atom");
  }

  std::vector<std::string> element_names(AtomMask m) const { return ground_.names_of(WorldSet(elements(m))); }

  friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

 private:
  FiniteAlgebra(Carrier ground, std::vector<Bits> atoms, AlgebraLimits limits)
      : ground_(std::move(ground)), atoms_(std::move(atoms)) {
    if (atoms_.size() >= 31 || family_size() > limits.max_family)
      throw Error(Errc::resource_limit, "algebra with " + std::to_string(atoms_.size()) +
                                            " atoms exceeds the family cap of " +
                                            std::to_string(limits.max_family));
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Bits& a, const Bits& b) { return a.find_first() < b.find_first(); });
  }

  Carrier ground_;
  std::vector<Bits> atoms_;
};

inline bool is_subset(AtomMask a, AtomMask b) { return (a & ~b) == 0; }
inline int cardinality(AtomMask a) { return std::popcount(a); }

/// Binary relation on the members of a finite algebra.
class SetRelation {
 public:
  SetRelation() = default;
  explicit SetRelation(FiniteAlgebra algebra)
      : algebra_(std::move(algebra)), pairs_(algebra_.family_size() * algebra_.family_size()) {}

  const FiniteAlgebra& algebra() const { return algebra_; }
  std::size_t family_size() const { return algebra_.family_size(); }

  bool contains(AtomMask u, AtomMask v) const { return pairs_.test(index(u, v)); }
  void insert(AtomMask u, AtomMask v) { pairs_.set(index(u, v)); }
  void erase(AtomMask u, AtomMask v) { pairs_.reset(index(u, v)); }
  std::size_t pair_count() const { return pairs_.count(); }

  /// All pairs in (left, right) lexicographic order of masks.
  std::vector<std::pair<AtomMask, AtomMask>> pairs() const {
    std::vector<std::pair<AtomMask, AtomMask>> out;
    const auto f = family_size();
    for (auto i = pairs_.find_first(); i != Bits::npos; i = pairs_.find_next(i))
      out.emplace_back(static_cast<AtomMask>(i / f), static_cast<AtomMask>(i % f));
    return out;
  }

  friend bool operator==(const SetRelation&, const SetRelation&) = default;

 private:
  std::size_t index(AtomMask u, AtomMask v) const {
    const auto f = family_size();
    if (u >= f || v >= f) throw Error(Errc::invalid_relation, "set is not a member of the family");
    return static_cast<std::size_t>(u) * f + v;
  }

  FiniteAlgebra algebra_;
  Bits pairs_;
};

/// Builds the extensional relation {(U, V) : pred(U, V)} over the algebra.
template <class Pred>
SetRelation materialize(const FiniteAlgebra& algebra, Pred&& pred) {
  SetRelation r(algebra);
  const auto f = static_cast<AtomMask>(algebra.family_size());
  for (AtomMask u = 0; u < f; ++u)
    for (AtomMask v = 0; v < f; ++v)
      if (pred(u, v)) r.insert(u, v);
  return r;
}

/// Materializes a lifted world-set ordering; the algebra's ground set must be the order's carrier.
template <class Lifted>
SetRelation materialize_lifted(const FiniteAlgebra& algebra, Lifted&& lifted) {
  std::vector<WorldSet> sets;
  sets.reserve(algebra.family_size());
  for (AtomMask m = 0; m < algebra.family_size(); ++m) sets.emplace_back(algebra.elements(m));
  return materialize(algebra, [&](AtomMask u, AtomMask v) { return lifted(sets[u], sets[v]); });
}

}  // namespace relik
