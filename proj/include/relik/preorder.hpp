#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relik/error.hpp"
#include "relik/world_set.hpp"

namespace relik {

/// Named finite set of worlds. Names are unique; ids are positions.
class Carrier {
 public:
  Carrier() = default;
  explicit Carrier(std::vector<std::string> names) : names_(std::move(names)) {
    auto sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(Errc::invalid_argument, "duplicate world name");
  }

  /// Worlds named w1 ... wn.
  static Carrier numbered(std::size_t n, const std::string& prefix = "w") {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i + 1));
    return Carrier(std::move(names));
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(WorldId w) const { return names_.at(w.index); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<WorldId> find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return WorldId{static_cast<std::size_t>(it - names_.begin())};
  }

  WorldId id(const std::string& name) const {
    if (auto w = find(name)) return *w;
    throw Error(Errc::foreign_world, "unknown world '" + name + "'");
  }

  WorldSet set_of(const std::vector<std::string>& names) const {
    WorldSet s(size());
    for (const auto& n : names) s.insert(id(n));
    return s;
  }

  std::vector<std::string> names_of(const WorldSet& s) const {
    std::vector<std::string> out;
    for (WorldId w : s) out.push_back(name(w));
    return out;
  }

  friend bool operator==(const Carrier&, const Carrier&) = default;

 private:
  std::vector<std::string> names_;
};

/// Reflexive, transitive relation on a carrier: geq(u, v) reads "u is at least as likely as v".
class Preorder {
 public:
  Preorder() = default;

  /// Validates eagerly; an invalid relation is rejected, never repaired.
  Preorder(Carrier carrier, Relation geq) : carrier_(std::move(carrier)), geq_(std::move(geq)) {
    if (geq_.size() != carrier_.size())
      throw Error(Errc::invalid_preorder, "relation size does not match carrier");
    if (!geq_.is_reflexive()) throw Error(Errc::invalid_preorder, "relation is not reflexive");
    if (!geq_.is_transitive()) throw Error(Errc::invalid_preorder, "relation is not transitive");
  }

  /// Reflexive-transitive closure of the generator pairs (u >= v).
  static Preorder from_generators(Carrier carrier,
                                  const std::vector<std::pair<WorldId, WorldId>>& generators) {
    Relation r = Relation::identity(carrier.size());
    for (auto [u, v] : generators) {
      if (u.index >= carrier.size() || v.index >= carrier.size())
        throw Error(Errc::foreign_world, "generator mentions a world outside the carrier");
      r.set(u.index, v.index);
    }
    return Preorder(std::move(carrier), r.transitive_closure());
  }

  static Preorder discrete(Carrier carrier) {
    auto n = carrier.size();
    return Preorder(std::move(carrier), Relation::identity(n));
  }

  std::size_t size() const { return carrier_.size(); }
  const Carrier& carrier() const { return carrier_; }
  const Relation& relation() const { return geq_; }
  bool geq(WorldId u, WorldId v) const { return geq_(u.index, v.index); }
  bool gt(WorldId u, WorldId v) const { return geq(u, v) && !geq(v, u); }

  friend bool operator==(const Preorder&, const Preorder&) = default;

 private:
  Carrier carrier_;
  Relation geq_;
};

/// Irreflexive, transitive relation: gt(u, v) reads "u is strictly more likely than v".
class StrictOrder {
 public:
  StrictOrder() = default;

  StrictOrder(Carrier carrier, Relation gt) : carrier_(std::move(carrier)), gt_(std::move(gt)) {
    if (gt_.size() != carrier_.size())
      throw Error(Errc::not_strict, "relation size does not match carrier");
    if (!gt_.is_irreflexive()) throw Error(Errc::not_strict, "relation is reflexive at some world");
    if (!gt_.is_transitive()) throw Error(Errc::not_strict, "relation is not transitive");
    above_ = gt_.transpose();
  }

  static StrictOrder from_generators(Carrier carrier,
                                     const std::vector<std::pair<WorldId, WorldId>>& generators) {
    Relation r(carrier.size());
    for (auto [u, v] : generators) {
      if (u.index >= carrier.size() || v.index >= carrier.size())
        throw Error(Errc::foreign_world, "generator mentions a world outside the carrier");
      r.set(u.index, v.index);
    }
    return StrictOrder(std::move(carrier), r.transitive_closure());
  }

  std::size_t size() const { return carrier_.size(); }
  const Carrier& carrier() const { return carrier_; }
  const Relation& relation() const { return gt_; }
  bool gt(WorldId u, WorldId v) const { return gt_(u.index, v.index); }

  /// Every u with u > w.
  const Bits& above(WorldId w) const { return above_.row(w.index); }
  /// Every v with w > v.
  const Bits& below(WorldId w) const { return gt_.row(w.index); }

  /// The preorder whose strict part is this order: u >= v iff u = v or u > v.
  Preorder reflexive_closure() const {
    Relation r = gt_;
    for (std::size_t i = 0; i < size(); ++i) r.set(i, i);
    return Preorder(carrier_, std::move(r));
  }

  friend bool operator==(const StrictOrder& a, const StrictOrder& b) {
    return a.carrier_ == b.carrier_ && a.gt_ == b.gt_;
  }

 private:
  Carrier carrier_;
  Relation gt_;
  Relation above_;
};

/// u > v iff u >= v and not v >= u.
inline StrictOrder strict_of(const Preorder& p) {
  Relation gt(p.size());
  for (std::size_t u = 0; u < p.size(); ++u)
    for (std::size_t v = 0; v < p.size(); ++v)
      if (p.relation()(u, v) && !p.relation()(v, u)) gt.set(u, v);
  return StrictOrder(p.carrier(), std::move(gt));
}

inline bool is_total(const Preorder& p) {
  for (std::size_t u = 0; u < p.size(); ++u)
    for (std::size_t v = u + 1; v < p.size(); ++v)
      if (!p.relation()(u, v) && !p.relation()(v, u)) return false;
  return true;
}

/// First triple (w1, w2, w3) with w1 R w2 but neither w3 R w2 nor w1 R w3.
template <class Rel>
std::optional<std::array<std::size_t, 3>> modularity_witness(std::size_t n, Rel&& rel) {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!rel(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (!rel(c, b) && !rel(a, c)) return std::array<std::size_t, 3>{a, b, c};
    }
  return std::nullopt;
}

/// w1 R w2 implies, for every w3, w3 R w2 or w1 R w3. Works on any carrier of size n.
template <class Rel>
bool is_modular(std::size_t n, Rel&& rel) {
  return !modularity_witness(n, std::forward<Rel>(rel)).has_value();
}

inline bool is_modular(const Relation& r) {
  return is_modular(r.size(), [&](std::size_t i, std::size_t j) { return r(i, j); });
}

inline bool is_modular(const StrictOrder& s) { return is_modular(s.relation()); }

/// The total preorder whose strict part is `s`: w >= v iff w > v or the two are incomparable.
inline Preorder total_from_modular(const StrictOrder& s) {
  if (!is_modular(s)) throw Error(Errc::not_modular, "strict order is not modular");
  const auto& gt = s.relation();
  Relation geq(s.size());
  for (std::size_t w = 0; w < s.size(); ++w)
    for (std::size_t v = 0; v < s.size(); ++v)
      if (gt(w, v) || (!gt(w, v) && !gt(v, w))) geq.set(w, v);
  return Preorder(s.carrier(), std::move(geq));
}

/// Same as above for an unvalidated relation; reports NotStrict before NotModular.
inline Preorder total_from_modular(const Carrier& carrier, const Relation& candidate) {
  return total_from_modular(StrictOrder(carrier, candidate));
}

}  // namespace relik
