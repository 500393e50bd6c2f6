#pragma once

// Satisfiability for the likelihood language over finite preferential structures.

#include <algorithm>
#include <bit>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relik/algebra.hpp"
#include "relik/error.hpp"
#include "relik/formula.hpp"
#include "relik/preorder.hpp"
#include "relik/realization.hpp"
#include "relik/structure.hpp"

namespace relik {

enum class Verdict { sat, unsat, resource_limit };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::sat: return "SAT";
    case Verdict::unsat: return "UNSAT";
    case Verdict::resource_limit: return "RESOURCE_LIMIT";
  }
  return "?";
}

/// How a verdict was reached.
struct Certificate {
  /// Polarity per basic subformula (true = asserted) of the accepting branch.
  std::vector<bool> sigma;
  /// Populated assignments of the accepting branch, ascending.
  std::vector<Assignment> populated;
  std::size_t closure_pairs = 0;
  std::size_t branches = 0;
  std::size_t rejected_reflexive = 0;
  std::size_t rejected_negative = 0;
  std::size_t structures = 0;
};

struct SatResult {
  Verdict verdict = Verdict::unsat;
  std::optional<PreferentialStructure> model;
  Certificate certificate;
  std::vector<Likelihood> basics;
  std::string message;
};

struct ProverOptions {
  std::size_t max_props = 3;
  /// Largest populated-assignment set; its algebra has 2^max_populated members.
  std::size_t max_populated = 8;
  std::size_t max_branches = 1'000'000;
  RealizeOptions realize{8, {}};
  /// Called with every closure that passed both rejection tests.
  std::function<void(const SetRelation&)> on_accepted_closure;
};

namespace prover_detail {

constexpr std::size_t kMaxFamily = 256;
using Row = std::bitset<kMaxFamily>;

/// The vocabulary of a formula: its proposition symbols in lexicographic order.
inline Vocabulary vocabulary_of(const LFormula& f) {
  auto props = props_of(f);
  return Vocabulary(std::vector<std::string>(props.begin(), props.end()));
}

/// Set of assignments satisfying phi, as a bit mask over assignment indices.
inline std::uint64_t assignment_mask(const Vocabulary& vocab, const PropFormula& phi) {
  std::uint64_t m = 0;
  for (Assignment a = 0; a < (Assignment{1} << vocab.size()); ++a)
    if (vocab.holds(phi, a)) m |= std::uint64_t{1} << a;
  return m;
}

inline std::string assignment_name(const Vocabulary& vocab, Assignment a) {
  if (vocab.size() == 0) return "x";
  std::string out;
  for (std::size_t p = 0; p < vocab.size(); ++p) {
    if (p) out += "_";
    out += ((a >> p) & 1u) ? vocab.names()[p] : "n" + vocab.names()[p];
  }
  return out;
}

/// Bits of `m` at the positions listed in `members`, packed to the low end.
inline AtomMask compress(std::uint64_t m, const std::vector<Assignment>& members) {
  AtomMask out = 0;
  for (std::size_t i = 0; i < members.size(); ++i)
    if ((m >> members[i]) & 1u) out |= AtomMask{1} << i;
  return out;
}

/// Fixpoint of the orderly and qualitative rules over 2^k, k <= 8.
class ClosureEngine {
 public:
  explicit ClosureEngine(std::size_t atoms) : k_(atoms), f_(std::size_t{1} << atoms), rows_(f_) {
    if (f_ > kMaxFamily) throw Error(Errc::resource_limit, "closure family exceeds 256 members");
  }

  void add(AtomMask u, AtomMask v) { rows_[u].set(v); }
  bool contains(AtomMask u, AtomMask v) const { return rows_[u].test(v); }

  bool reflexive() const {
    for (std::size_t u = 0; u < f_; ++u)
      if (rows_[u].test(u)) return true;
    return false;
  }

  /// Runs to the fixpoint, or stops early once some (X, X) is derived if `stop_on_reflexive`.
  void run(bool stop_on_reflexive) {
    while (true) {
      orderly();
      if (stop_on_reflexive && reflexive()) return;
      if (!qualitative()) return;
    }
  }

  std::size_t pair_count() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.count();
    return n;
  }

  SetRelation to_relation(const FiniteAlgebra& alg) const {
    SetRelation r(alg);
    for (std::size_t u = 0; u < f_; ++u)
      for (std::size_t v = 0; v < f_; ++v)
        if (rows_[u].test(v)) r.insert(static_cast<AtomMask>(u), static_cast<AtomMask>(v));
    return r;
  }

 private:
  void orderly() {
    for (std::size_t i = 0; i < k_; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      for (std::size_t u = 0; u < f_; ++u)
        if (!(u & bit)) rows_[u | bit] |= rows_[u];
    }
    for (auto& row : rows_)
      for (std::size_t i = 0; i < k_; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t v = 0; v < f_; ++v)
          if ((v & bit) && row.test(v)) row.set(v & ~bit);
      }
  }

  /// One pass of (V1 u V2) R V3, (V1 u V3) R V2 => V1 R (V2 u V3). Returns whether anything changed.
  bool qualitative() {
    bool changed = false;
    for (std::size_t a = 0; a < f_; ++a)
      for (std::size_t b = 0; b < f_; ++b) {
        const Row& left = rows_[a | b];
        if (left.none()) continue;
        for (std::size_t c = 0; c < f_; ++c) {
          if (!left.test(c) || !rows_[a | c].test(b) || rows_[a].test(b | c)) continue;
          rows_[a].set(b | c);
          changed = true;
        }
      }
    return changed;
  }

  std::size_t k_;
  std::size_t f_;
  std::vector<Row> rows_;
};

/// Nonempty-or-empty subsets of the 2^n assignments, largest first, then ascending mask.
inline std::vector<std::uint64_t> populated_candidates(std::size_t assignments) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << assignments); ++m) out.push_back(m);
  std::stable_sort(out.begin(), out.end(),
                   [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) > std::popcount(b); });
  return out;
}

inline std::vector<Assignment> members_of(std::uint64_t m) {
  std::vector<Assignment> out;
  for (; m; m &= m - 1) out.push_back(static_cast<Assignment>(std::countr_zero(m)));
  return out;
}

struct Prepared {
  Vocabulary vocab;
  std::vector<Likelihood> basics;
  std::vector<std::uint64_t> more, less;
  /// Polarity vectors (bit j = basic j asserted) under which the formula is true, Gray-code order.
  std::vector<std::uint32_t> sigmas;
};

inline Prepared prepare(const LFormula& f, std::size_t max_props) {
  Prepared p{vocabulary_of(f), basic_subformulas(f), {}, {}, {}};
  if (p.vocab.size() > max_props)
    throw Error(Errc::resource_limit, "formula has " + std::to_string(p.vocab.size()) +
                                          " propositions, above the cap of " + std::to_string(max_props));
  if (p.basics.size() > 20) throw Error(Errc::resource_limit, "more than 20 basic subformulas");
  for (const auto& b : p.basics) {
    p.more.push_back(assignment_mask(p.vocab, b.more));
    p.less.push_back(assignment_mask(p.vocab, b.less));
  }
  const std::uint32_t count = std::uint32_t{1} << p.basics.size();
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t g = i ^ (i >> 1);
    const bool holds = f.evaluate([&](const Likelihood& a) {
      for (std::size_t j = 0; j < p.basics.size(); ++j)
        if (p.basics[j] == a) return ((g >> j) & 1u) != 0;
      return false;
    });
    if (holds) p.sigmas.push_back(g);
  }
  return p;
}

inline std::vector<bool> sigma_bits(std::uint32_t g, std::size_t m) {
  std::vector<bool> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = (g >> j) & 1u;
  return out;
}

}  // namespace prover_detail

/// The orderly/qualitative closure of `positives` together with (X, empty) for every nonempty X.
inline SetRelation closure(const FiniteAlgebra& alg, const std::vector<std::pair<AtomMask, AtomMask>>& positives) {
  prover_detail::ClosureEngine e(alg.atom_count());
  for (AtomMask x = 1; x < alg.family_size(); ++x) e.add(x, 0);
  for (auto [u, v] : positives) {
    if (u >= alg.family_size() || v >= alg.family_size())
      throw Error(Errc::invalid_relation, "positive pair outside the family");
    e.add(u, v);
  }
  e.run(false);
  return e.to_relation(alg);
}

/// Partial structures: try each sign vector making f true and each populated-assignment set,
/// close the asserted pairs, reject reflexive closures and closures containing a denied pair,
/// realize the survivor with minimal-pair trees and model-check f on the result.
inline SatResult check_satisfiable(const LFormula& f, const ProverOptions& options = {}) {
  using namespace prover_detail;
  SatResult res;
  Prepared p;
  try {
    p = prepare(f, options.max_props);
  } catch (const Error& e) {
    if (e.code() != Errc::resource_limit) throw;
    res.verdict = Verdict::resource_limit;
    res.message = e.what();
    return res;
  }
  res.basics = p.basics;
  const std::size_t m = p.basics.size();
  const std::size_t assignments = std::size_t{1} << p.vocab.size();
  bool skipped = false;
  const auto candidates = populated_candidates(assignments);
  auto& cert = res.certificate;

  for (auto g : p.sigmas) {
    for (auto pop : candidates) {
      const auto members = members_of(pop);
      if (members.size() > options.max_populated) {
        skipped = true;
        continue;
      }
      if (++cert.branches > options.max_branches) {
        res.verdict = Verdict::resource_limit;
        res.message = "branch budget of " + std::to_string(options.max_branches) + " exhausted";
        return res;
      }
      ClosureEngine engine(members.size());
      for (AtomMask x = 1; x < (AtomMask{1} << members.size()); ++x) engine.add(x, 0);
      for (std::size_t j = 0; j < m; ++j)
        if ((g >> j) & 1u) engine.add(compress(p.more[j], members), compress(p.less[j], members));
      engine.run(true);
      if (engine.reflexive()) {
        ++cert.rejected_reflexive;
        continue;
      }
      bool denied = false;
      for (std::size_t j = 0; j < m && !denied; ++j)
        if (!((g >> j) & 1u) && engine.contains(compress(p.more[j], members), compress(p.less[j], members)))
          denied = true;
      if (denied) {
        ++cert.rejected_negative;
        continue;
      }

      std::vector<std::string> ground;
      for (auto a : members) ground.push_back(assignment_name(p.vocab, a));
      auto alg = FiniteAlgebra::powerset(Carrier(ground));
      auto rel = engine.to_relation(alg);
      if (options.on_accepted_closure) options.on_accepted_closure(rel);

      Realization real;
      try {
        real = realize_partial(rel, options.realize);
      } catch (const Error& e) {
        if (e.code() == Errc::resource_limit) {
          res.verdict = Verdict::resource_limit;
          res.message = e.what();
          return res;
        }
        throw;
      }
      std::vector<Assignment> valuation;
      for (auto atom : real.atom_of_world) valuation.push_back(members[atom]);
      PreferentialStructure model(p.vocab, real.preorder, std::move(valuation));
      if (!sat(model, f)) throw Error(Errc::agreement_failure, "realized model does not satisfy the formula");
      cert.sigma = sigma_bits(g, m);
      cert.populated = members;
      cert.closure_pairs = engine.pair_count();
      res.verdict = Verdict::sat;
      res.model = std::move(model);
      return res;
    }
  }
  res.verdict = skipped ? Verdict::resource_limit : Verdict::unsat;
  if (skipped) res.message = "some populated-assignment sets exceeded the cap";
  return res;
}

namespace prover_detail {

/// Calls visit(rank) for every weak order on k elements, given as a rank per element
/// (0 = most likely) using every rank in 0..r-1 for some r.
template <class Visit>
void for_each_weak_order(std::size_t k, Visit&& visit) {
  if (k == 0) {
    visit(std::vector<std::size_t>{});
    return;
  }
  std::vector<std::size_t> block(k, 0);
  // Restricted growth strings enumerate set partitions; each block order is then permuted.
  auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
    if (i == k) {
      std::vector<std::size_t> perm(blocks);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<std::size_t> rank(k);
        for (std::size_t e = 0; e < k; ++e) rank[e] = perm[block[e]];
        visit(rank);
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      block[i] = b;
      self(self, i + 1, b == blocks ? blocks + 1 : blocks);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace prover_detail

/// Totally preordered structures with one world per populated assignment: every
/// populated-assignment set and every weak order on it.
inline SatResult check_satisfiable_total(const LFormula& f, const ProverOptions& options = {}) {
  using namespace prover_detail;
  SatResult res;
  Prepared p;
  try {
    p = prepare(f, options.max_props);
  } catch (const Error& e) {
    if (e.code() != Errc::resource_limit) throw;
    res.verdict = Verdict::resource_limit;
    res.message = e.what();
    return res;
  }
  res.basics = p.basics;
  const std::size_t m = p.basics.size();
  const std::size_t assignments = std::size_t{1} << p.vocab.size();
  auto& cert = res.certificate;
  std::vector<bool> value(m);

  for (auto pop : populated_candidates(assignments)) {
    const auto members = members_of(pop);
    if (members.size() > options.max_populated) {
      res.verdict = Verdict::resource_limit;
      res.message = "populated-assignment set exceeds the cap";
      return res;
    }
    std::optional<std::vector<std::size_t>> found;
    for_each_weak_order(members.size(), [&](const std::vector<std::size_t>& rank) {
      if (found) return;
      ++cert.structures;
      auto min_rank = [&](std::uint64_t mask) {
        std::size_t best = SIZE_MAX;
        for (std::size_t i = 0; i < members.size(); ++i)
          if ((mask >> members[i]) & 1u) best = std::min(best, rank[i]);
        return best;
      };
      for (std::size_t j = 0; j < m; ++j) {
        const auto u = min_rank(p.more[j]);
        const auto v = min_rank(p.less[j]);
        value[j] = u != SIZE_MAX && u < v;
      }
      const bool holds = f.evaluate([&](const Likelihood& a) {
        for (std::size_t j = 0; j < m; ++j)
          if (p.basics[j] == a) return static_cast<bool>(value[j]);
        return false;
      });
      if (holds) found = rank;
    });
    if (!found) continue;
    std::vector<std::string> names;
    for (auto a : members) names.push_back(assignment_name(p.vocab, a));
    Relation geq(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = 0; j < members.size(); ++j)
        if ((*found)[i] <= (*found)[j]) geq.set(i, j);
    PreferentialStructure model(p.vocab, Preorder(Carrier(names), std::move(geq)), members);
    if (!sat(model, f)) throw Error(Errc::agreement_failure, "total witness does not satisfy the formula");
    cert.populated = members;
    cert.sigma.clear();
    for (const auto& b : p.basics) cert.sigma.push_back(sat(model, b));
    res.verdict = Verdict::sat;
    res.model = std::move(model);
    return res;
  }
  res.verdict = Verdict::unsat;
  return res;
}

struct BruteForceOptions {
  std::size_t max_copies = 2;
  /// Cap on the total number of worlds, whatever max_copies allows.
  std::size_t max_worlds = 6;
  std::size_t max_props = 2;
  std::size_t max_structures = 50'000'000;
  /// Only totally preordered structures.
  bool total_only = false;
};

namespace prover_detail {

/// Enumerates strict partial orders on worlds added one at a time, grouped by colour.
class PosetSearch {
 public:
  PosetSearch(const Prepared& p, const LFormula& f, const BruteForceOptions& o, std::size_t& counter)
      : p_(p), f_(f), o_(o), counter_(counter) {}

  /// Searches all structures with the given world colours (assignments, grouped and ascending).
  bool search(const std::vector<Assignment>& colours) {
    colours_ = colours;
    n_ = colours.size();
    above_.assign(n_, 0);
    below_.assign(n_, 0);
    more_.assign(p_.basics.size(), 0);
    less_.assign(p_.basics.size(), 0);
    for (std::size_t j = 0; j < p_.basics.size(); ++j)
      for (std::size_t w = 0; w < n_; ++w) {
        if ((p_.more[j] >> colours[w]) & 1u) more_[j] |= 1u << w;
        if ((p_.less[j] >> colours[w]) & 1u) less_[j] |= 1u << w;
      }
    return add(0);
  }

  const std::vector<std::uint32_t>& above() const { return above_; }

 private:
  bool add(std::size_t x) {
    if (x == n_) return leaf();
    const std::uint32_t existing = (1u << x) - 1;
    std::size_t group_start = x;
    while (group_start > 0 && colours_[group_start - 1] == colours_[x]) --group_start;
    const std::uint32_t earlier = (1u << group_start) - 1;
    for (std::uint32_t d = 0; d <= existing; ++d) {
      if (!down_closed(d)) continue;
      for (std::uint32_t u = 0; u <= existing; ++u) {
        if (u & d) continue;
        if (!up_closed(u) || !all_below(d, u)) continue;
        if (x > group_start) {
          const auto prev = signature(x - 1, earlier);
          const auto mine = (static_cast<std::uint64_t>(d & earlier) << 32) | (u & earlier);
          if (mine < prev) continue;
        }
        below_[x] = d;
        above_[x] = u;
        for (std::uint32_t s = d; s; s &= s - 1) above_[std::countr_zero(s)] |= 1u << x;
        for (std::uint32_t s = u; s; s &= s - 1) below_[std::countr_zero(s)] |= 1u << x;
        if (add(x + 1)) return true;
        for (std::uint32_t s = d; s; s &= s - 1) above_[std::countr_zero(s)] &= ~(1u << x);
        for (std::uint32_t s = u; s; s &= s - 1) below_[std::countr_zero(s)] &= ~(1u << x);
      }
    }
    below_[x] = above_[x] = 0;
    return false;
  }

  std::uint64_t signature(std::size_t w, std::uint32_t earlier) const {
    return (static_cast<std::uint64_t>(below_[w] & earlier) << 32) | (above_[w] & earlier);
  }

  bool down_closed(std::uint32_t d) const {
    for (std::uint32_t s = d; s; s &= s - 1)
      if (below_[std::countr_zero(s)] & ~d) return false;
    return true;
  }
  bool up_closed(std::uint32_t u) const {
    for (std::uint32_t s = u; s; s &= s - 1)
      if (above_[std::countr_zero(s)] & ~u) return false;
    return true;
  }
  bool all_below(std::uint32_t d, std::uint32_t u) const {
    for (std::uint32_t s = u; s; s &= s - 1)
      if ((below_[std::countr_zero(s)] & d) != d) return false;
    return true;
  }

  /// x > y forces every z to satisfy z > y or x > z.
  bool modular() const {
    const std::uint32_t all = (1u << n_) - 1;
    for (std::size_t x = 0; x < n_; ++x)
      for (std::uint32_t s = below_[x]; s; s &= s - 1)
        if ((above_[std::countr_zero(s)] | below_[x]) != all) return false;
    return true;
  }

  /// u >s v on world masks: u nonempty and each v below some u-world dominating V.
  bool succ(std::uint32_t u, std::uint32_t v) const {
    if (!u) return false;
    std::uint32_t dominating = 0;
    for (std::uint32_t s = u; s; s &= s - 1) {
      const auto w = std::countr_zero(s);
      if (!(above_[w] & v)) dominating |= 1u << w;
    }
    for (std::uint32_t s = v; s; s &= s - 1)
      if (!(above_[std::countr_zero(s)] & dominating)) return false;
    return true;
  }

  bool leaf() {
    if (++counter_ > o_.max_structures)
      throw Error(Errc::resource_limit, "brute-force structure budget exhausted");
    if (o_.total_only && !modular()) return false;
    return f_.evaluate([&](const Likelihood& a) {
      for (std::size_t j = 0; j < p_.basics.size(); ++j)
        if (p_.basics[j] == a) return succ(more_[j], less_[j]);
      return false;
    });
  }

  const Prepared& p_;
  const LFormula& f_;
  const BruteForceOptions& o_;
  std::size_t& counter_;
  std::vector<Assignment> colours_;
  std::size_t n_ = 0;
  std::vector<std::uint32_t> above_, below_;
  std::vector<std::uint32_t> more_, less_;
};

/// Every vector of per-assignment world counts in [0, cap] with the given total, lexicographic.
inline void for_each_count(std::size_t slots, std::size_t cap, std::size_t total,
                           const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> c(slots, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> bool {
    if (i == slots) return left == 0 ? visit(c) : false;
    for (std::size_t k = 0; k <= std::min(cap, left); ++k) {
      c[i] = k;
      if (self(self, i + 1, left - k)) return true;
    }
    return false;
  };
  rec(rec, 0, total);
}

}  // namespace prover_detail

/// Independent oracle: every structure with at most `max_copies` worlds per assignment
/// (and at most `max_worlds` in total), smallest first, up to colour-preserving relabelling.
inline SatResult brute_force_sat(const LFormula& f, const BruteForceOptions& options = {}) {
  using namespace prover_detail;
  SatResult res;
  Prepared p;
  try {
    p = prepare(f, options.max_props);
  } catch (const Error& e) {
    if (e.code() != Errc::resource_limit) throw;
    res.verdict = Verdict::resource_limit;
    res.message = e.what();
    return res;
  }
  if (options.max_worlds > 31) throw Error(Errc::resource_limit, "brute force supports at most 31 worlds");
  res.basics = p.basics;
  const std::size_t slots = std::size_t{1} << p.vocab.size();
  const std::size_t limit = std::min(options.max_worlds, options.max_copies * slots);
  std::size_t counter = 0;
  try {
    for (std::size_t total = 0; total <= limit; ++total) {
      std::optional<PreferentialStructure> model;
      for_each_count(slots, options.max_copies, total, [&](const std::vector<std::size_t>& counts) {
        std::vector<Assignment> colours;
        for (std::size_t a = 0; a < slots; ++a)
          for (std::size_t i = 0; i < counts[a]; ++i) colours.push_back(a);
        PosetSearch search(p, f, options, counter);
        if (!search.search(colours)) return false;
        Relation gt(colours.size());
        for (std::size_t w = 0; w < colours.size(); ++w)
          for (std::uint32_t s = search.above()[w]; s; s &= s - 1) gt.set(std::countr_zero(s), w);
        model = PreferentialStructure(p.vocab, StrictOrder(Carrier::numbered(colours.size()), gt).reflexive_closure(),
                                      colours);
        return true;
      });
      if (model) {
        if (!sat(*model, f)) throw Error(Errc::agreement_failure, "brute-force witness fails the model check");
        res.verdict = Verdict::sat;
        res.model = std::move(model);
        res.certificate.structures = counter;
        return res;
      }
    }
  } catch (const Error& e) {
    if (e.code() != Errc::resource_limit) throw;
    res.verdict = Verdict::resource_limit;
    res.message = e.what();
    res.certificate.structures = counter;
    return res;
  }
  res.verdict = Verdict::unsat;
  res.certificate.structures = counter;
  return res;
}

}  // namespace relik
