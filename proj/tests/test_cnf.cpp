#include <gtest/gtest.h>

#include "naeenum/cnf.hpp"
#include "naeenum/errors.hpp"

using namespace naeenum;

TEST(Dimacs, ParsesHeaderAndClauses) {
  const Formula f = parse_dimacs("c hello\np cnf 4 2\n1 -2 3 0\n2 4\n0\n");
  EXPECT_EQ(f.num_vars(), 4);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_TRUE(f.contains(Clause::from_dimacs({1, -2, 3})));
  EXPECT_TRUE(f.contains(Clause::from_dimacs({2, 4})));
}

TEST(Dimacs, RoundTripsCanonically) {
  const Formula f = parse_dimacs("p cnf 3 2\n3 1 0\n-2 1 0\n");
  const Formula g = parse_dimacs(write_dimacs(f));
  EXPECT_EQ(f, g);
}

TEST(Dimacs, RejectsMalformedInput) {
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n3 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("1 2 0\n"), ParseError);
}

TEST(Dimacs, ErrorCarriesLineNumber) {
  try {
    parse_dimacs("p cnf 2 1\nc ok\n1 q 0\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Clause, CollapsesRepeatsAndRejectsTautologies) {
  EXPECT_EQ(Clause::from_dimacs({2, 1, 2}).width(), 2u);
  EXPECT_THROW(Clause::from_dimacs({1, -1}), Error);
}

TEST(Closure, AddsNegations) {
  const Formula f(3, {Clause::from_dimacs({1, 2, 3})});
  const Formula c = negation_closure(f);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_TRUE(c.contains(Clause::from_dimacs({-1, -2, -3})));
  EXPECT_TRUE(is_negation_closed(c));
  EXPECT_FALSE(is_negation_closed(f));
  EXPECT_EQ(negation_closure(c), c);
}

TEST(Closure, NaeSolutionsAreSatSolutionsOfClosure) {
  const Formula f(4, {Clause::from_dimacs({1, 2, 3}), Clause::from_dimacs({-2, 3, 4})});
  const Formula c = negation_closure(f);
  for (VarMask m = 0; m < 16; ++m) {
    const Assignment a = Assignment::from_mask(m);
    EXPECT_EQ(nae_check(f, a), satisfies(c, a)) << m;
  }
}

TEST(Simplify, DropsSatisfiedAndStripsNegatives) {
  const Formula f(4, {Clause::from_dimacs({1, 2}), Clause::from_dimacs({-1, 3, 4}), Clause::from_dimacs({-1, -2})});
  const std::vector<int> ones{1};
  const Formula r = simplify(f, ones);
  EXPECT_FALSE(r.contains(Clause::from_dimacs({1, 2})));
  EXPECT_TRUE(r.contains(Clause::from_dimacs({3, 4})));
  EXPECT_TRUE(r.contains(Clause::from_dimacs({-2})));
  EXPECT_FALSE(is_falsified(r));
  const std::vector<int> both{1, 2};
  EXPECT_TRUE(is_falsified(simplify(f, both)));
}

TEST(Live, KeepsClausesWithoutPositiveOverQ) {
  const Formula f(3, {Clause::from_dimacs({1, 2}), Clause::from_dimacs({-1, 3}), Clause::from_dimacs({2, 3})});
  const std::vector<int> q{1};
  const auto live = live_clauses(f, q);
  EXPECT_EQ(live.size(), 2u);
}

TEST(EngineInput, RejectsWideClauses) {
  const Formula f(4, {Clause::from_dimacs({1, 2, 3, 4})});
  EXPECT_THROW(require_engine_input(f), WidthError);
  EXPECT_NO_THROW(require_engine_input(Formula(3, {Clause::from_dimacs({1, 2, 3})})));
}
