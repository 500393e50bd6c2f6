#pragma once

// Orderings on sets of worlds lifted from an ordering on worlds.

#include <cstddef>
#include <string>

#include "relik/error.hpp"
#include "relik/preorder.hpp"
#include "relik/world_set.hpp"

namespace relik {

namespace detail {

inline void require_within(std::size_t carrier_size, const WorldSet& s) {
  if (s.universe() != carrier_size)
    throw Error(Errc::foreign_world, "set over a carrier of size " + std::to_string(s.universe()) +
                                         " used with an order of size " +
                                         std::to_string(carrier_size));
}

}  // namespace detail

/// U >=s V: every v in V has some u in U with u >= v.
inline bool geq_s(const Preorder& p, const WorldSet& U, const WorldSet& V) {
  detail::require_within(p.size(), U);
  detail::require_within(p.size(), V);
  const auto& geq = p.relation();
  for (WorldId v : V) {
    bool covered = false;
    for (WorldId u : U)
      if (geq(u.index, v.index)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

/// w dominates V when no member of V is strictly above w.
inline bool dominates(const StrictOrder& s, WorldId w, const WorldSet& V) {
  detail::require_within(s.size(), V);
  if (w.index >= s.size()) throw Error(Errc::foreign_world, "world outside the order");
  return !s.above(w).intersects(V.bits());
}

/// U >s V: U is nonempty and every v in V is strictly below some u in U that dominates V.
inline bool succ_s(const StrictOrder& s, const WorldSet& U, const WorldSet& V) {
  detail::require_within(s.size(), U);
  detail::require_within(s.size(), V);
  if (U.empty()) return false;
  for (WorldId v : V) {
    bool covered = false;
    for (WorldId u : U)
      if (s.gt(u, v) && !s.above(u).intersects(V.bits())) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

/// Finite-set form of >s without the domination clause.
inline bool succ_s_naive(const StrictOrder& s, const WorldSet& U, const WorldSet& V) {
  detail::require_within(s.size(), U);
  detail::require_within(s.size(), V);
  if (U.empty()) return false;
  for (WorldId v : V)
    if (!s.above(v).intersects(U.bits())) return false;
  return true;
}

/// U >' V: U >=s V and not V >=s U.
inline bool succ_prime(const Preorder& p, const WorldSet& U, const WorldSet& V) {
  return geq_s(p, U, V) && !geq_s(p, V, U);
}

/// The six classical liftings kept for comparison with >=s; not used by the logic.
namespace lifting_variants {

namespace detail {

template <class Pred>
bool all_pairs(const WorldSet& U, const WorldSet& V, Pred&& pred) {
  for (WorldId u : U)
    for (WorldId v : V)
      if (!pred(u, v)) return false;
  return true;
}

template <class Pred>
bool symmetric_difference_covered(const WorldSet& U, const WorldSet& V, Pred&& pred) {
  const WorldSet only_u = U - V;
  for (WorldId v : V - U) {
    bool covered = false;
    for (WorldId u : only_u)
      if (pred(u, v)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

}  // namespace detail

/// k = 1..6. Variants 3 and 6 carry a nonemptiness clause so that they are irreflexive:
/// 3 requires U nonempty, 6 requires U - V nonempty.
inline bool lift_k(int k, const Preorder& p, const WorldSet& U, const WorldSet& V) {
  relik::detail::require_within(p.size(), U);
  relik::detail::require_within(p.size(), V);
  auto geq = [&](WorldId u, WorldId v) { return p.geq(u, v); };
  auto gt = [&](WorldId u, WorldId v) { return p.gt(u, v); };
  switch (k) {
    case 1: return detail::all_pairs(U, V, geq);
    case 2: return detail::all_pairs(U, V, geq) && !detail::all_pairs(V, U, geq);
    case 3: return !U.empty() && detail::all_pairs(U, V, gt);
    case 4: return detail::symmetric_difference_covered(U, V, geq);
    case 5:
      return detail::symmetric_difference_covered(U, V, geq) &&
             !detail::symmetric_difference_covered(V, U, geq);
    case 6: return !(U - V).empty() && detail::symmetric_difference_covered(U, V, gt);
    default: throw Error(Errc::invalid_argument, "lifting index must be in 1..6");
  }
}

}  // namespace lifting_variants

}  // namespace relik
