#pragma once

// Exhaustive property checks for relations on a finite algebra. Each check returns the
// first violating tuple it meets, scanning masks in increasing order.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relik/algebra.hpp"

namespace relik {

using Witness = std::vector<AtomMask>;

namespace props {

inline std::optional<Witness> reflexive_violation(const SetRelation& r) {
  for (AtomMask u = 0; u < r.family_size(); ++u)
    if (!r.contains(u, u)) return Witness{u};
  return std::nullopt;
}

inline std::optional<Witness> irreflexive_violation(const SetRelation& r) {
  for (AtomMask u = 0; u < r.family_size(); ++u)
    if (r.contains(u, u)) return Witness{u};
  return std::nullopt;
}

/// (U, V, W) with U R V, V R W, not U R W.
inline std::optional<Witness> transitive_violation(const SetRelation& r) {
  const auto f = static_cast<AtomMask>(r.family_size());
  for (AtomMask u = 0; u < f; ++u)
    for (AtomMask v = 0; v < f; ++v) {
      if (!r.contains(u, v)) continue;
      for (AtomMask w = 0; w < f; ++w)
        if (r.contains(v, w) && !r.contains(u, w)) return Witness{u, v, w};
    }
  return std::nullopt;
}

inline std::optional<Witness> total_violation(const SetRelation& r) {
  const auto f = static_cast<AtomMask>(r.family_size());
  for (AtomMask u = 0; u < f; ++u)
    for (AtomMask v = u; v < f; ++v)
      if (!r.contains(u, v) && !r.contains(v, u)) return Witness{u, v};
  return std::nullopt;
}

/// (V1, V2, V3) with V1 R V2, not V3 R V2, not V1 R V3.
inline std::optional<Witness> modular_violation(const SetRelation& r) {
  auto w = modularity_witness(r.family_size(), [&](std::size_t a, std::size_t b) {
    return r.contains(static_cast<AtomMask>(a), static_cast<AtomMask>(b));
  });
  if (!w) return std::nullopt;
  return Witness{static_cast<AtomMask>((*w)[0]), static_cast<AtomMask>((*w)[1]),
                 static_cast<AtomMask>((*w)[2])};
}

/// (U, V, U', V') with U R V, U' a superset of U, V' a subset of V, and not U' R V'.
/// Scanning single-atom steps suffices: a violation exists iff one exists between neighbours.
inline std::optional<Witness> orderly_violation(const SetRelation& r) {
  const auto f = static_cast<AtomMask>(r.family_size());
  const auto k = r.algebra().atom_count();
  for (AtomMask u = 0; u < f; ++u)
    for (AtomMask v = 0; v < f; ++v) {
      if (!r.contains(u, v)) continue;
      for (std::size_t i = 0; i < k; ++i) {
        const AtomMask bit = AtomMask{1} << i;
        if (!(u & bit) && !r.contains(u | bit, v)) return Witness{u, v, u | bit, v};
        if ((v & bit) && !r.contains(u, v & ~bit)) return Witness{u, v, u, v & ~bit};
      }
    }
  return std::nullopt;
}

/// (V1, V2, V3) with V1 R V2, V1 R V3, not V1 R (V2 u V3).
inline std::optional<Witness> union_violation(const SetRelation& r) {
  const auto f = static_cast<AtomMask>(r.family_size());
  for (AtomMask a = 0; a < f; ++a)
    for (AtomMask b = 0; b < f; ++b) {
      if (!r.contains(a, b)) continue;
      for (AtomMask c = 0; c < f; ++c)
        if (r.contains(a, c) && !r.contains(a, b | c)) return Witness{a, b, c};
    }
  return std::nullopt;
}

/// (V1, V2, V3) with (V1 u V2) R V3, (V1 u V3) R V2, not V1 R (V2 u V3).
inline std::optional<Witness> qualitative_violation(const SetRelation& r) {
  const auto f = static_cast<AtomMask>(r.family_size());
  for (AtomMask a = 0; a < f; ++a)
    for (AtomMask b = 0; b < f; ++b)
      for (AtomMask c = 0; c < f; ++c)
        if (r.contains(a | b, c) && r.contains(a | c, b) && !r.contains(a, b | c))
          return Witness{a, b, c};
  return std::nullopt;
}

}  // namespace props

inline bool is_reflexive(const SetRelation& r) { return !props::reflexive_violation(r); }
inline bool is_irreflexive(const SetRelation& r) { return !props::irreflexive_violation(r); }
inline bool is_transitive(const SetRelation& r) { return !props::transitive_violation(r); }
inline bool is_total(const SetRelation& r) { return !props::total_violation(r); }
inline bool is_modular(const SetRelation& r) { return !props::modular_violation(r); }
inline bool is_orderly(const SetRelation& r) { return !props::orderly_violation(r); }
inline bool has_union_property(const SetRelation& r) { return !props::union_violation(r); }
inline bool is_qualitative(const SetRelation& r) { return !props::qualitative_violation(r); }
inline bool is_preorder(const SetRelation& r) { return is_reflexive(r) && is_transitive(r); }
inline bool is_strict_partial_order(const SetRelation& r) {
  return is_irreflexive(r) && is_transitive(r);
}

struct PropertyCheck {
  std::string name;
  bool holds = true;
  /// Present only when the property fails; layout depends on the property.
  std::optional<Witness> witness;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;

  const PropertyCheck& operator[](const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw Error(Errc::invalid_argument, "no property named '" + name + "'");
  }
};

/// Witness layouts:
///   reflexive/irreflexive [U]; transitive [U, V, W]; total [U, V];
///   modular, union, qualitative [V1, V2, V3]; orderly [U, V, U', V'];
///   preorder and strict_partial_order reuse the witness of the failing component.
inline PropertyReport audit(const SetRelation& r) {
  PropertyReport report;
  auto add = [&](std::string name, std::optional<Witness> w) {
    report.checks.push_back({std::move(name), !w.has_value(), std::move(w)});
  };
  auto reflexive = props::reflexive_violation(r);
  auto irreflexive = props::irreflexive_violation(r);
  auto transitive = props::transitive_violation(r);
  add("reflexive", reflexive);
  add("irreflexive", irreflexive);
  add("transitive", transitive);
  add("total", props::total_violation(r));
  add("modular", props::modular_violation(r));
  add("orderly", props::orderly_violation(r));
  add("union", props::union_violation(r));
  add("qualitative", props::qualitative_violation(r));
  add("preorder", reflexive ? reflexive : transitive);
  add("strict_partial_order", irreflexive ? irreflexive : transitive);
  return report;
}

}  // namespace relik
