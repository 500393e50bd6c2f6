#include <gtest/gtest.h>

#include <random>

#include "relik/conditional.hpp"
#include "relik/parser.hpp"
#include "support.hpp"

namespace relik {
namespace {

using P = PropFormula;
namespace o = testing::oracle;

const P p = P::var("p"), q = P::var("q");
constexpr GgVariant kVariants[] = {GgVariant::prime, GgVariant::dprime, GgVariant::tprime};

o::Set members_of(const WorldSet& s) {
  o::Set out;
  for (WorldId w : s) out.push_back(w.index);
  return out;
}

/// Domination reading of psi => phi straight from the definition, on plain index vectors.
bool arrow_oracle(const PreferentialStructure& m, const P& psi, const P& phi) {
  const auto gt = o::gt_of(m.strict());
  const auto good = members_of(truth_set(m, P::conj(phi, psi)));
  const auto bad = members_of(truth_set(m, P::conj(P::neg(phi), psi)));
  for (auto u : bad) {
    bool covered = false;
    for (auto v : good) {
      bool dom = true;
      for (auto x : bad) dom = dom && !gt(x, v);
      covered = covered || (gt(v, u) && dom);
    }
    if (!covered) return false;
  }
  return true;
}

TEST(Best, Examples) {
  const auto s21 = strict_of(testing::incomparable_pair());
  EXPECT_TRUE(best(s21, WorldSet(2)).empty());
  EXPECT_EQ(best(s21, WorldSet::all(2)), WorldSet::all(2));
  const auto m = testing::two_chains();
  EXPECT_EQ(best(m.strict(), WorldSet::all(4)), WorldSet(4, {0, 1}));
  EXPECT_THROW(best(m.strict(), WorldSet(5, {4})), Error);
}

TEST(Best, MatchesDefinitionAndDomination) {
  for (std::size_t n = 0; n <= 4; ++n) {
    const auto subsets = testing::all_subsets(n);
    for (const auto& s : testing::all_strict_orders(n)) {
      const auto gt = o::gt_of(s);
      for (std::size_t mask = 0; mask < subsets.size(); ++mask) {
        const auto& V = subsets[mask];
        const auto b = best(s, V);
        EXPECT_EQ(members_of(b), o::best(gt, o::members(mask)));
        EXPECT_TRUE(b.is_subset_of(V));
        for (WorldId v : V) EXPECT_EQ(b.contains(v), dominates(s, v, V));
      }
    }
  }
}

TEST(SatArrow, Examples) {
  const auto m = testing::two_chains();
  EXPECT_TRUE(sat_arrow(m, P::bottom(), p));
  EXPECT_TRUE(sat_arrow(m, q, q));
  // [[!p & q]] = {w3, w4}; w1 is the only p & q world and it is not above w4.
  EXPECT_FALSE(sat_arrow(m, q, p));
  EXPECT_FALSE(sat_arrow_best(m, q, p));
  EXPECT_TRUE(sat_arrow(m, P::top(), p));
  EXPECT_TRUE(sat_arrow_best(m, P::top(), p));
  EXPECT_TRUE(sat_arrow_best(m, P::top(), P::disj(p, P::neg(p))));
  EXPECT_THROW(sat_arrow(m, P::var("zz"), p), Error);
}

TEST(SatArrow, MatchesDefinitionOracle) {
  std::mt19937_64 rng(71);
  const std::vector<std::string> props{"p", "q"};
  for (int i = 0; i < 2000; ++i) {
    const auto m = testing::random_structure(rng, props, 1 + i % 6);
    const auto a = testing::random_prop(rng, props, 2), b = testing::random_prop(rng, props, 2);
    ASSERT_EQ(sat_arrow(m, a, b), arrow_oracle(m, a, b));
  }
}

TEST(DesugarArrowPrime, Shape) {
  EXPECT_EQ(to_string(desugar_arrow_prime(q, p)), "!(!!q >> false) | ((p & q) >> (!p & q))");
  const auto m = testing::two_chains();
  EXPECT_TRUE(sat(m, desugar_arrow_prime(P::bottom(), p)));
  EXPECT_EQ(sat(m, desugar_arrow_prime(q, p)), sat_arrow(m, q, p));
}

TEST(TranslateGg, Shapes) {
  EXPECT_EQ(to_string(translate_gg(GgVariant::prime, p, q)), "((p | q) => (p & !q)) & !((p | q) => q)");
  EXPECT_EQ(to_string(translate_gg(GgVariant::dprime, p, q)), "!(p => q) & ((p | q) => !q)");
  EXPECT_EQ(to_string(translate_gg(GgVariant::tprime, p, q)), "!(p => false) & ((p | q) => (p & !q))");
  EXPECT_EQ(parse_variant("dprime"), GgVariant::dprime);
  EXPECT_THROW(parse_variant("quad"), Error);
}

TEST(TranslateGg, Examples) {
  const auto m = testing::two_chains();
  const auto target = P::conj(P::neg(p), q);
  for (auto v : kVariants) {
    EXPECT_TRUE(sat_cond(m, translate_gg(v, p, target))) << to_string(v);
    for (const auto& f : {p, q, target, P::top(), P::bottom()}) EXPECT_FALSE(sat_cond(m, translate_gg(v, f, f)));
  }
  const PreferentialStructure incomparable(Vocabulary({"p"}), testing::incomparable_pair(), {1, 0});
  for (const auto& a : testing::all_truth_functions({"p"}))
    for (const auto& b : testing::all_truth_functions({"p"}))
      for (auto v : kVariants) EXPECT_EQ(sat_cond(incomparable, translate_gg(v, a, b)), sat(incomparable, gg(a, b)));
}

TEST(Rewriting, WholeFormulas) {
  const auto f = testing::two_chains_formula();
  const auto m = testing::two_chains();
  for (auto v : kVariants) {
    const auto c = to_conditional(f, v);
    EXPECT_TRUE(sat_cond(m, c));
    EXPECT_TRUE(sat_cond(m, c, ArrowSemantics::best));
    EXPECT_TRUE(sat(m, to_likelihood(c)));
  }
  EXPECT_EQ(to_likelihood(arrow(q, p)), desugar_arrow_prime(q, p));
}

// Arrow by domination, by best worlds and through >>, and the four-way >> equivalence, over every structure with up to three worlds and
// two symbols, and every pair of truth functions. The four-world sweep lives in the acceptance run.
TEST(Equivalences, ExhaustiveThreeWorlds) {
  const std::vector<std::string> props{"p", "q"};
  const auto fns = testing::all_truth_functions(props);
  for (std::size_t n = 0; n <= 3; ++n)
    testing::for_each_structure(props, n, testing::all_preorders(n), [&](const PreferentialStructure& m) {
      for (const auto& a : fns)
        for (const auto& b : fns) {
          const bool arrow_dom = sat_arrow(m, a, b);
          ASSERT_EQ(arrow_dom, sat_arrow_best(m, a, b));
          ASSERT_EQ(arrow_dom, sat(m, desugar_arrow_prime(a, b)));
          const bool likely = sat(m, gg(a, b));
          for (auto v : kVariants) ASSERT_EQ(sat_cond(m, translate_gg(v, a, b)), likely);
        }
    });
}

TEST(Equivalences, RandomLargerStructures) {
  std::mt19937_64 rng(73);
  const std::vector<std::string> props{"p", "q", "r"};
  for (int i = 0; i < 1000; ++i) {
    const auto m = testing::random_structure(rng, props, 5 + i % 4, i % 3 == 0);
    const auto a = testing::random_prop(rng, props, 3), b = testing::random_prop(rng, props, 3);
    const bool arrow_dom = sat_arrow(m, a, b);
    ASSERT_EQ(arrow_dom, sat_arrow_best(m, a, b));
    ASSERT_EQ(arrow_dom, sat(m, desugar_arrow_prime(a, b)));
    for (auto v : kVariants) ASSERT_EQ(sat_cond(m, translate_gg(v, a, b)), sat(m, gg(a, b)));
  }
}

}  // namespace
}  // namespace relik
