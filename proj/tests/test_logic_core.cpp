#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "relik/parser.hpp"
#include "relik/structure.hpp"
#include "support.hpp"

namespace relik {
namespace {

using P = PropFormula;

const P p = P::var("p"), q = P::var("q"), r = P::var("r");

ParseError parse_error_of(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError";
  return ParseError(0, {}, "none");
}

TEST(ParseProp, Basics) {
  EXPECT_EQ(parse_prop("p & !q"), P::conj(p, P::neg(q)));
  EXPECT_EQ(parse_prop("p | q & r"), P::disj(p, P::conj(q, r)));
  EXPECT_EQ(parse_prop("!p & q"), P::conj(P::neg(p), q));
  EXPECT_EQ(parse_prop("p -> q -> r"), P::implies(p, P::implies(q, r)));
  EXPECT_EQ(parse_prop("p & q -> r | p"), P::implies(P::conj(p, q), P::disj(r, p)));
  EXPECT_EQ(parse_prop("  true|false "), P::disj(P::top(), P::bottom()));
  EXPECT_EQ(parse_prop("x_1 & a9"), P::conj(P::var("x_1"), P::var("a9")));
  EXPECT_EQ(parse_prop("((p))"), p);
}

TEST(ParseL, TwoChainsFormula) {
  const auto f = parse_l("(p >> (!p & q)) & !((p & q) >> (!p & q)) & !((p & !q) >> (!p & q))");
  EXPECT_EQ(f, testing::two_chains_formula());
}

TEST(ParseL, LikelihoodBindsLooserThanPropositionalOperators) {
  EXPECT_EQ(parse_l("p | q >> r & p"), gg(P::disj(p, q), P::conj(r, p)));
  EXPECT_EQ(parse_l("p -> q >> r"), gg(P::implies(p, q), r));
  EXPECT_EQ(parse_l("!(p >> q) | (q >> false)"), LFormula::disj(LFormula::neg(gg(p, q)), gg(q, P::bottom())));
}

TEST(ParseErrors, NestingAndChaining) {
  auto e = parse_error_of([] { parse_l("p >> (q >> r)"); });
  EXPECT_EQ(e.code(), Errc::parse_error);
  EXPECT_EQ(e.position(), 8u);
  e = parse_error_of([] { parse_l("p >> q >> r"); });
  EXPECT_EQ(e.position(), 7u);
}

TEST(ParseErrors, PositionsAndExpectedSets) {
  auto e = parse_error_of([] { parse_prop("p & "); });
  EXPECT_EQ(e.position(), 4u);
  EXPECT_EQ(e.expected(), (std::vector<std::string>{"identifier", "'true'", "'false'", "'('", "'!'"}));
  e = parse_error_of([] { parse_prop("(p & q"); });
  EXPECT_EQ(e.position(), 6u);
  EXPECT_EQ(e.expected(), std::vector<std::string>{"')'"});
  e = parse_error_of([] { parse_prop("p $ q"); });
  EXPECT_EQ(e.position(), 2u);
  e = parse_error_of([] { parse_prop("p q"); });
  EXPECT_EQ(e.position(), 2u);
  e = parse_error_of([] { parse_prop("P"); });
  EXPECT_EQ(e.position(), 0u);
  e = parse_error_of([] { parse_prop(""); });
  EXPECT_EQ(e.position(), 0u);
}

TEST(ParseErrors, LanguageRestrictions) {
  EXPECT_THROW(parse_l("p & q"), ParseError);                 // bare propositional formula
  EXPECT_THROW(parse_l("(p >> q) & r"), ParseError);          // mixed
  EXPECT_THROW(parse_l("(p >> q) -> (q >> p)"), ParseError);  // -> is propositional only
  EXPECT_THROW(parse_l("p => q"), ParseError);                // wrong modal operator
  EXPECT_THROW(parse_prop("p >> q"), ParseError);
  EXPECT_THROW(parse_cond("p >> q"), ParseError);
  EXPECT_EQ(parse_cond("p => q & r"), arrow(p, P::conj(q, r)));
}

TEST(Printer, Canonical) {
  EXPECT_EQ(to_string(P::conj(p, P::neg(q))), "p & !q");
  EXPECT_EQ(to_string(P::conj(P::disj(p, q), r)), "(p | q) & r");
  EXPECT_EQ(to_string(P::disj(p, P::disj(q, r))), "p | (q | r)");
  EXPECT_EQ(to_string(P::neg(P::neg(p))), "!!p");
  EXPECT_EQ(to_string(testing::two_chains_formula()),
            "(p >> (!p & q)) & !((p & q) >> (!p & q)) & !((p & !q) >> (!p & q))");
  EXPECT_EQ(to_string(K(p)), "!(!p >> false)");
}

TEST(Printer, RoundTripRandomFormulas) {
  std::mt19937_64 rng(43);
  const std::vector<std::string> props{"p", "q", "r"};
  for (int i = 0; i < 2000; ++i) {
    const auto f = testing::random_prop(rng, props, 4);
    EXPECT_EQ(parse_prop(to_string(f)), f) << to_string(f);
    const auto l = testing::random_lformula(rng, props, 3, 2, 3);
    EXPECT_EQ(parse_l(to_string(l)), l) << to_string(l);
  }
}

TEST(TruthSet, Examples) {
  const auto m = testing::two_chains();
  EXPECT_EQ(truth_set(m, P::top()), WorldSet::all(4));
  EXPECT_TRUE(truth_set(m, P::bottom()).empty());
  EXPECT_EQ(truth_set(m, P::conj(P::neg(p), q)), WorldSet(4, {2, 3}));
  EXPECT_EQ(truth_set(m, P::disj(p, P::neg(p))), WorldSet::all(4));
  EXPECT_EQ(truth_set(m, p), WorldSet(4, {0, 1}));
  try {
    truth_set(m, P::var("zz"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_proposition);
  }
  // an undeclared symbol is an error even where evaluation would short-circuit
  EXPECT_THROW(truth_set(m, P::disj(P::top(), P::var("zz"))), Error);
}

TEST(Sat, Examples) {
  const auto m = testing::two_chains();
  EXPECT_TRUE(sat(m, testing::two_chains_formula()));
  EXPECT_FALSE(sat(m, gg(p, p)));
  EXPECT_TRUE(sat(m, gg(p, P::bottom())));
  EXPECT_FALSE(sat(m, gg(P::bottom(), P::bottom())));
  const PreferentialStructure flat(Vocabulary({"p"}), Preorder::discrete(Carrier::numbered(1)), {1});
  EXPECT_TRUE(sat(flat, gg(p, P::bottom())));
  EXPECT_THROW(sat(flat, gg(q, p)), Error);
}

TEST(Sat, IrreflexiveEverywhere) {
  std::mt19937_64 rng(47);
  const std::vector<std::string> props{"p", "q"};
  for (int i = 0; i < 300; ++i) {
    const auto m = testing::random_structure(rng, props, 1 + i % 5);
    const auto f = testing::random_prop(rng, props, 3);
    EXPECT_FALSE(sat(m, gg(f, f)));
  }
}

TEST(K, Semantics) {
  const auto m = testing::two_chains();
  EXPECT_TRUE(sat(m, K(P::top())));
  EXPECT_TRUE(sat(m, K(P::disj(p, q))));
  EXPECT_FALSE(sat(m, K(p)));
  std::mt19937_64 rng(53);
  const std::vector<std::string> props{"p", "q"};
  for (int i = 0; i < 300; ++i) {
    const auto s = testing::random_structure(rng, props, 1 + i % 5);
    const auto f = testing::random_prop(rng, props, 3);
    EXPECT_EQ(sat(s, K(f)), truth_set(s, f) == WorldSet::all(s.size()));
  }
}

TEST(Gen, TautologiesAreKnown) {
  std::mt19937_64 rng(59);
  const std::vector<std::string> props{"p", "q"};
  const Vocabulary v(props);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto f = testing::random_prop(rng, props, 3);
    bool taut = true;
    for (Assignment a = 0; a < 4; ++a) taut = taut && v.holds(f, a);
    if (!taut) continue;
    ++checked;
    EXPECT_TRUE(sat(testing::random_structure(rng, props, 1 + i % 4), K(f)));
  }
  EXPECT_GT(checked, 20);
}

TEST(Sat, InvariantUnderWorldRenaming) {
  std::mt19937_64 rng(61);
  const std::vector<std::string> props{"p", "q"};
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 5;
    const auto m = testing::random_structure(rng, props, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Relation geq(n);
    std::vector<Assignment> val(n);
    for (std::size_t u = 0; u < n; ++u) {
      val[perm[u]] = m.valuation()[u];
      for (std::size_t w = 0; w < n; ++w)
        if (m.order().relation()(u, w)) geq.set(perm[u], perm[w]);
    }
    const PreferentialStructure renamed(m.vocabulary(), Preorder(Carrier::numbered(n), geq), val);
    const auto f = testing::random_lformula(rng, props, 3);
    EXPECT_EQ(sat(m, f), sat(renamed, f));
  }
}

TEST(Axioms, SoundOnRandomStructures) {
  std::mt19937_64 rng(67);
  const std::vector<std::string> props{"p", "q", "r"};
  for (int i = 0; i < 1500; ++i) {
    const auto m = testing::random_structure(rng, props, 1 + i % 5);
    ASSERT_TRUE(sat(m, testing::axioms::l1(rng, props)));
    ASSERT_TRUE(sat(m, testing::axioms::l2(rng, props)));
    ASSERT_TRUE(sat(m, testing::axioms::l3(rng, props)));
    ASSERT_TRUE(sat(m, testing::axioms::l4(rng, props)));
    ASSERT_TRUE(sat(m, testing::axioms::l6(rng, props)));
    ASSERT_TRUE(sat(m, testing::axioms::l7(rng, props)));
    const auto t = testing::random_structure(rng, props, 1 + i % 5, true);
    ASSERT_TRUE(sat(t, testing::axioms::l5(rng, props)));
  }
}

TEST(Axioms, L5FailsOnTwoChains) {
  // {w1,w2} beats {w3,w4}, but {w1} is neither beaten by {w1,w2} nor above {w3,w4}.
  const auto m = testing::two_chains();
  const auto target = P::conj(P::neg(p), q);
  const auto l5 = LFormula::implies(gg(p, target), LFormula::disj(gg(p, P::conj(p, q)), gg(P::conj(p, q), target)));
  EXPECT_FALSE(sat(m, l5));
}

TEST(Axioms, UnionWithDisjunctivePremiseIsNotValid) {
  const auto chain = PreferentialStructure(
      Vocabulary({"p", "q"}), Preorder::from_generators(Carrier::numbered(3), {{WorldId{0}, WorldId{1}}, {WorldId{2}, WorldId{0}}}),
      {0b01, 0b10, 0b11});
  const auto p_only = P::conj(p, P::neg(q)), q_only = P::conj(P::neg(p), q), both = P::conj(p, q);
  ASSERT_TRUE(sat(chain, gg(p_only, q_only)));
  EXPECT_FALSE(sat(chain, gg(p_only, P::disj(q_only, both))));
}

TEST(Vocabulary, Validation) {
  EXPECT_THROW(Vocabulary({"p", "p"}), Error);
  EXPECT_THROW(PreferentialStructure(Vocabulary({"p"}), Preorder::discrete(Carrier::numbered(2)), {0}), Error);
  EXPECT_THROW(PreferentialStructure(Vocabulary({"p"}), Preorder::discrete(Carrier::numbered(1)), {2}), Error);
}

}  // namespace
}  // namespace relik
