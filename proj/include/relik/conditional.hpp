#pragma once

// The conditional operator psi => phi and its translations to and from >>.

#include <string_view>

#include "relik/error.hpp"
#include "relik/formula.hpp"
#include "relik/set_lifting.hpp"
#include "relik/structure.hpp"

namespace relik {

/// Members of V with nothing in V strictly above them; best of the empty set is empty.
inline WorldSet best(const StrictOrder& s, const WorldSet& V) {
  detail::require_within(s.size(), V);
  WorldSet out(s.size());
  for (WorldId v : V)
    if (!s.above(v).intersects(V.bits())) out.insert(v);
  return out;
}

/// Domination reading: every world in [[!phi & psi]] is strictly below some world of
/// [[phi & psi]] that dominates [[!phi & psi]].
inline bool sat_arrow(const PreferentialStructure& m, const PropFormula& psi, const PropFormula& phi) {
  const auto good = truth_set(m, PropFormula::conj(phi, psi));
  const auto bad = truth_set(m, PropFormula::conj(PropFormula::neg(phi), psi));
  const auto& s = m.strict();
  for (WorldId u : bad) {
    bool covered = false;
    for (WorldId v : good)
      if (s.gt(v, u) && dominates(s, v, bad)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

/// best([[psi]]) is contained in [[phi]].
inline bool sat_arrow_best(const PreferentialStructure& m, const PropFormula& psi, const PropFormula& phi) {
  return best(m.strict(), truth_set(m, psi)).is_subset_of(truth_set(m, phi));
}

enum class ArrowSemantics { domination, best };

inline bool sat_cond(const PreferentialStructure& m, const CondFormula& f,
                     ArrowSemantics semantics = ArrowSemantics::domination) {
  return f.evaluate([&](const Conditional& c) {
    return semantics == ArrowSemantics::domination ? sat_arrow(m, c.antecedent, c.consequent)
                                                   : sat_arrow_best(m, c.antecedent, c.consequent);
  });
}

/// psi =>' phi: K !psi | ((phi & psi) >> (!phi & psi)).
inline LFormula desugar_arrow_prime(const PropFormula& psi, const PropFormula& phi) {
  using P = PropFormula;
  return LFormula::disj(K(P::neg(psi)), gg(P::conj(phi, psi), P::conj(P::neg(phi), psi)));
}

enum class GgVariant { prime, dprime, tprime };

inline std::string_view to_string(GgVariant v) {
  switch (v) {
    case GgVariant::prime: return "prime";
    case GgVariant::dprime: return "dprime";
    case GgVariant::tprime: return "tprime";
  }
  return "?";
}

inline GgVariant parse_variant(std::string_view s) {
  if (s == "prime") return GgVariant::prime;
  if (s == "dprime") return GgVariant::dprime;
  if (s == "tprime") return GgVariant::tprime;
  throw Error(Errc::invalid_argument, "variant must be prime, dprime or tprime");
}

/// phi >> psi written with => only.
///   prime:  ((phi | psi) => (phi & !psi)) & !((phi | psi) => psi)
///   dprime: !(phi => psi) & ((phi | psi) => !psi)
///   tprime: !(phi => false) & ((phi | psi) => (phi & !psi))
inline CondFormula translate_gg(GgVariant variant, const PropFormula& phi, const PropFormula& psi) {
  using P = PropFormula;
  using C = CondFormula;
  const auto either = P::disj(phi, psi);
  switch (variant) {
    case GgVariant::prime:
      return C::conj(arrow(either, P::conj(phi, P::neg(psi))), C::neg(arrow(either, psi)));
    case GgVariant::dprime:
      return C::conj(C::neg(arrow(phi, psi)), arrow(either, P::neg(psi)));
    case GgVariant::tprime:
      return C::conj(C::neg(arrow(phi, P::bottom())), arrow(either, P::conj(phi, P::neg(psi))));
  }
  throw Error(Errc::invalid_argument, "unknown variant");
}

/// Rewrites every basic formula of an L-formula with `translate_gg`.
inline CondFormula to_conditional(const LFormula& f, GgVariant variant = GgVariant::prime) {
  return f.substitute<CondFormula>([&](const Likelihood& a) { return translate_gg(variant, a.more, a.less); });
}

/// Rewrites every conditional atom with `desugar_arrow_prime`.
inline LFormula to_likelihood(const CondFormula& f) {
  return f.substitute<LFormula>([](const Conditional& c) { return desugar_arrow_prime(c.antecedent, c.consequent); });
}

}  // namespace relik
