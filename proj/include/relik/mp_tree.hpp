#pragma once

// Minimal pairs of an orderly qualitative relation and the atom-labelled trees built from them.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relik/algebra.hpp"
#include "relik/error.hpp"
#include "relik/relation_properties.hpp"

namespace relik {

/// (atom, support): support R atom, and no proper sub-member of the support does.
struct MinimalPair {
  std::size_t atom = 0;
  AtomMask support = 0;

  friend auto operator<=>(const MinimalPair&, const MinimalPair&) = default;
};

/// Minimal supports grouped by atom; the form every tree construction consumes.
class MinimalPairTable {
 public:
  MinimalPairTable() = default;
  explicit MinimalPairTable(std::size_t atom_count) : supports_(atom_count) {}

  static MinimalPairTable from_pairs(std::size_t atom_count, const std::vector<MinimalPair>& pairs) {
    MinimalPairTable t(atom_count);
    for (const auto& p : pairs) t.add(p);
    return t;
  }

  void add(const MinimalPair& p) {
    if (p.atom >= supports_.size()) throw Error(Errc::invalid_argument, "atom index out of range");
    auto& s = supports_[p.atom];
    if (std::find(s.begin(), s.end(), p.support) == s.end()) {
      s.push_back(p.support);
      std::sort(s.begin(), s.end());
    }
  }

  std::size_t atom_count() const { return supports_.size(); }
  const std::vector<AtomMask>& supports(std::size_t atom) const { return supports_.at(atom); }

  /// Atoms that occur in some support of `atom`.
  AtomMask reachable(std::size_t atom) const {
    AtomMask m = 0;
    for (auto s : supports_.at(atom)) m |= s;
    return m;
  }

  std::vector<MinimalPair> pairs() const {
    std::vector<MinimalPair> out;
    for (std::size_t a = 0; a < supports_.size(); ++a)
      for (auto s : supports_[a]) out.push_back({a, s});
    return out;
  }

 private:
  std::vector<std::vector<AtomMask>> supports_;
};

namespace detail {

inline void require_irreflexive_orderly_qualitative(const SetRelation& r) {
  if (!is_irreflexive(r)) throw Error(Errc::invalid_relation, "relation is not irreflexive");
  if (!is_orderly(r)) throw Error(Errc::invalid_relation, "relation is not orderly");
  if (!is_qualitative(r)) throw Error(Errc::invalid_relation, "relation is not qualitative");
}

inline std::vector<MinimalPair> minimal_pairs_unchecked(const SetRelation& r) {
  std::vector<MinimalPair> out;
  const auto f = static_cast<AtomMask>(r.family_size());
  for (std::size_t a = 0; a < r.algebra().atom_count(); ++a) {
    const AtomMask atom = AtomMask{1} << a;
    for (AtomMask x = 0; x < f; ++x) {
      if (!r.contains(x, atom)) continue;
      bool minimal = true;
      // proper sub-members of x
      for (AtomMask sub = (x - 1) & x;; sub = (sub - 1) & x) {
        if (r.contains(sub, atom)) {
          minimal = false;
          break;
        }
        if (sub == 0) break;
      }
      if (x == 0) minimal = true;
      if (minimal) out.push_back({a, x});
    }
  }
  return out;
}

}  // namespace detail

/// Every minimal pair of an irreflexive, orderly, qualitative relation, ordered by (atom, support).
inline std::vector<MinimalPair> minimal_pairs(const SetRelation& r) {
  detail::require_irreflexive_orderly_qualitative(r);
  auto pairs = detail::minimal_pairs_unchecked(r);
  for (const auto& p : pairs)
    if (p.support & (AtomMask{1} << p.atom))
      throw Error(Errc::invalid_relation, "minimal pair support contains its own atom");
  return pairs;
}

inline MinimalPairTable minimal_pair_table(const SetRelation& r) {
  return MinimalPairTable::from_pairs(r.algebra().atom_count(), minimal_pairs(r));
}

/// Rooted tree labelled by atom indices. Children are kept sorted by label, which is a
/// canonical form because sibling labels are distinct.
struct MPTree {
  std::size_t label = 0;
  std::vector<MPTree> children;

  friend bool operator==(const MPTree& a, const MPTree& b) {
    return a.label == b.label && a.children == b.children;
  }
  friend std::strong_ordering operator<=>(const MPTree& a, const MPTree& b) {
    if (auto c = a.label <=> b.label; c != 0) return c;
    const auto n = std::min(a.children.size(), b.children.size());
    for (std::size_t i = 0; i < n; ++i)
      if (auto c = a.children[i] <=> b.children[i]; c != 0) return c;
    return a.children.size() <=> b.children.size();
  }

  std::size_t node_count() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.node_count();
    return n;
  }
};

/// Text form "A(B,C(D))" with atom names supplied by the caller.
template <class Name>
std::string to_string(const MPTree& t, Name&& name) {
  std::string out = name(t.label);
  if (!t.children.empty()) {
    out += "(";
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      if (i) out += ",";
      out += to_string(t.children[i], name);
    }
    out += ")";
  }
  return out;
}

inline std::string to_string(const MPTree& t) {
  return to_string(t, [](std::size_t l) { return std::to_string(l); });
}

/// Subtrees rooted at strict descendants of the root.
inline void collect_proper_subtrees(const MPTree& t, std::set<MPTree>& out) {
  for (const auto& c : t.children) {
    out.insert(c);
    collect_proper_subtrees(c, out);
  }
}

inline std::set<MPTree> proper_subtrees(const MPTree& t) {
  std::set<MPTree> out;
  collect_proper_subtrees(t, out);
  return out;
}

/// Checks the four minimal-pair-tree conditions; returns the first violated one, if any.
inline std::optional<std::string> mp_tree_violation(const MPTree& t, const MinimalPairTable& table) {
  struct Walker {
    const MinimalPairTable& table;
    std::vector<std::size_t> path;

    std::optional<std::string> visit(const MPTree& node) {
      if (node.label >= table.atom_count()) return "label out of range";
      if (std::find(path.begin(), path.end(), node.label) != path.end())
        return "label " + std::to_string(node.label) + " repeats along a path";
      std::set<std::size_t> seen;
      for (const auto& c : node.children) {
        if (!seen.insert(c.label).second) return "two children share a label";
        bool justified = false;
        for (auto s : table.supports(node.label))
          if (s & (AtomMask{1} << c.label)) justified = true;
        if (!justified) return "child label not in any support of its parent";
      }
      for (auto s : table.supports(node.label)) {
        bool hit = false;
        for (const auto& c : node.children)
          if (s & (AtomMask{1} << c.label)) hit = true;
        if (!hit) return "a minimal pair of the node label has no child inside its support";
      }
      path.push_back(node.label);
      for (const auto& c : node.children)
        if (auto v = visit(c)) return v;
      path.pop_back();
      return std::nullopt;
    }
  };
  Walker w{table, {}};
  return w.visit(t);
}

inline bool is_mp_tree(const MPTree& t, const MinimalPairTable& table) {
  return !mp_tree_violation(t, table).has_value();
}

struct TreeLimits {
  /// Cap on the number of trees produced across all memoized sub-enumerations.
  std::size_t max_trees = 200000;
};

/// Enumerates every minimal-pair tree rooted at an atom. A node's children are a label set
/// drawn from its minimal-pair supports (minus labels already on the path) that meets every
/// support; each child independently ranges over the trees for its label under the longer path.
class TreeEnumerator {
 public:
  explicit TreeEnumerator(const MinimalPairTable& table, TreeLimits limits = {})
      : table_(table), limits_(limits) {}

  const std::vector<MPTree>& trees(std::size_t label, AtomMask ancestors = 0) {
    const auto key = std::make_pair(label, ancestors);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto result = build(label, ancestors);
    return memo_.emplace(key, std::move(result)).first->second;
  }

  std::size_t produced() const { return produced_; }

 private:
  std::vector<MPTree> build(std::size_t label, AtomMask ancestors) {
    const auto& supports = table_.supports(label);
    if (supports.empty()) return {count(MPTree{label, {}})};
    const AtomMask path = ancestors | (AtomMask{1} << label);
    const AtomMask candidates = table_.reachable(label) & ~path;
    for (auto s : supports)
      if ((s & candidates) == 0) return {};

    std::vector<MPTree> out;
    for (AtomMask chosen = 1; chosen <= candidates; ++chosen) {
      if (chosen & ~candidates) continue;
      bool hits_all = true;
      for (auto s : supports)
        if ((s & chosen) == 0) {
          hits_all = false;
          break;
        }
      if (!hits_all) continue;

      std::vector<const std::vector<MPTree>*> options;
      bool viable = true;
      for (AtomMask rest = chosen; rest; rest &= rest - 1) {
        const auto child = static_cast<std::size_t>(std::countr_zero(rest));
        const auto& sub = trees(child, path);
        if (sub.empty()) {
          viable = false;
          break;
        }
        options.push_back(&sub);
      }
      if (!viable) continue;

      std::vector<std::size_t> pick(options.size(), 0);
      while (true) {
        MPTree t{label, {}};
        t.children.reserve(options.size());
        for (std::size_t i = 0; i < options.size(); ++i) t.children.push_back((*options[i])[pick[i]]);
        out.push_back(count(std::move(t)));
        std::size_t i = 0;
        for (; i < options.size(); ++i) {
          if (++pick[i] < options[i]->size()) break;
          pick[i] = 0;
        }
        if (i == options.size()) break;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  MPTree count(MPTree t) {
    if (++produced_ > limits_.max_trees)
      throw Error(Errc::resource_limit,
                  "minimal-pair tree enumeration exceeded " + std::to_string(limits_.max_trees) + " trees");
    return t;
  }

  const MinimalPairTable& table_;
  TreeLimits limits_;
  std::map<std::pair<std::size_t, AtomMask>, std::vector<MPTree>> memo_;
  std::size_t produced_ = 0;
};

inline std::vector<MPTree> enum_mp_trees(const MinimalPairTable& table, std::size_t atom,
                                         TreeLimits limits = {}) {
  TreeEnumerator e(table, limits);
  return e.trees(atom);
}

/// Validates the relation (irreflexive, orderly, qualitative) before enumerating.
inline std::vector<MPTree> enum_mp_trees(const SetRelation& r, std::size_t atom, TreeLimits limits = {}) {
  if (atom >= r.algebra().atom_count()) throw Error(Errc::invalid_argument, "atom index out of range");
  return enum_mp_trees(minimal_pair_table(r), atom, limits);
}

/// Node-indexed tree; node 0 is the root.
struct LabeledTree {
  struct Node {
    std::size_t label = 0;
    std::optional<std::size_t> parent;
    std::size_t depth = 0;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;

  bool has_ancestor_labeled(std::size_t node, std::size_t label) const {
    for (auto p = nodes[node].parent; p; p = nodes[*p].parent)
      if (nodes[*p].label == label) return true;
    return false;
  }
};

/// Stage 0 is the root labelled `atom`; each of `stages` expansions gives every deepest leaf
/// labelled B one child per atom C lying in some support of B. Labels may repeat along paths.
/// By default the number of stages is the number of atoms (log2 of the family size).
inline LabeledTree full_tree(const MinimalPairTable& table, std::size_t atom,
                             std::optional<std::size_t> stages = std::nullopt,
                             std::size_t max_nodes = 1'000'000) {
  if (atom >= table.atom_count()) throw Error(Errc::invalid_argument, "atom index out of range");
  const std::size_t depth = stages.value_or(table.atom_count());
  LabeledTree t;
  t.nodes.push_back({atom, std::nullopt, 0, {}});
  std::vector<std::size_t> frontier{0};
  for (std::size_t stage = 1; stage <= depth; ++stage) {
    std::vector<std::size_t> next;
    for (auto leaf : frontier) {
      const AtomMask reach = table.reachable(t.nodes[leaf].label);
      for (AtomMask rest = reach; rest; rest &= rest - 1) {
        const auto c = static_cast<std::size_t>(std::countr_zero(rest));
        if (t.nodes.size() >= max_nodes)
          throw Error(Errc::resource_limit, "full tree exceeded " + std::to_string(max_nodes) + " nodes");
        t.nodes.push_back({c, leaf, stage, {}});
        t.nodes[leaf].children.push_back(t.nodes.size() - 1);
        next.push_back(t.nodes.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  return t;
}

inline LabeledTree full_tree(const SetRelation& r, std::size_t atom) {
  return full_tree(minimal_pair_table(r), atom);
}

struct MarkResult {
  /// 0 for unmarked nodes, otherwise the stage (from 1) at which the node was marked.
  std::vector<std::size_t> stage;
  bool root_unmarked = true;

  bool marked(std::size_t node) const { return stage[node] != 0; }
};

/// Staged marking of a full tree against a member X. A node labelled B is marked when
/// (1) B lies in X, (2) an ancestor carries label B, or (3) for some minimal pair (B, Y)
/// every child labelled inside Y was marked at an earlier stage. Stops at a stage that marks nothing.
inline MarkResult mark(const MinimalPairTable& table, const LabeledTree& tree, AtomMask x) {
  MarkResult res;
  res.stage.assign(tree.nodes.size(), 0);
  for (std::size_t stage = 1;; ++stage) {
    std::vector<std::size_t> fresh;
    for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
      if (res.stage[n]) continue;
      const auto& node = tree.nodes[n];
      bool hit = (x >> node.label) & 1u;
      if (!hit) hit = tree.has_ancestor_labeled(n, node.label);
      if (!hit) {
        for (auto y : table.supports(node.label)) {
          bool all_marked = true;
          for (auto c : node.children)
            if (((y >> tree.nodes[c].label) & 1u) && (res.stage[c] == 0 || res.stage[c] >= stage)) {
              all_marked = false;
              break;
            }
          if (all_marked) {
            hit = true;
            break;
          }
        }
      }
      if (hit) fresh.push_back(n);
    }
    if (fresh.empty()) break;
    for (auto n : fresh) res.stage[n] = stage;
  }
  res.root_unmarked = res.stage.empty() || res.stage[0] == 0;
  return res;
}

/// The tree of unmarked nodes all of whose ancestors are unmarked; empty when the root is marked.
inline std::optional<MPTree> unmarked_subtree(const LabeledTree& tree, const MarkResult& marks) {
  if (!marks.root_unmarked) return std::nullopt;
  auto build = [&](auto&& self, std::size_t n) -> MPTree {
    MPTree t{tree.nodes[n].label, {}};
    for (auto c : tree.nodes[n].children)
      if (!marks.marked(c)) t.children.push_back(self(self, c));
    std::sort(t.children.begin(), t.children.end());
    return t;
  };
  return build(build, 0);
}

}  // namespace relik
