#include <gtest/gtest.h>

#include "naeenum/errors.hpp"
#include "naeenum/generators.hpp"
#include "naeenum/oracle.hpp"

using namespace naeenum;

TEST(Maj, FourVariables) {
  const Formula f = maj(4, 3);
  ASSERT_EQ(f.size(), 4u);
  for (auto c : {Clause::from_dimacs({1, 2, 3}), Clause::from_dimacs({1, 2, 4}), Clause::from_dimacs({1, 3, 4}),
                 Clause::from_dimacs({2, 3, 4})})
    EXPECT_TRUE(f.contains(c));
}

TEST(Maj, BlocksAndDivisibility) {
  const Formula f = maj(8, 3);
  EXPECT_EQ(f.size(), 8u);
  for (const Clause& c : f.clauses()) {
    const auto vs = c.vars();
    EXPECT_EQ((vs.front() - 1) / 4, (vs.back() - 1) / 4);
    EXPECT_TRUE(c.monotone());
  }
  EXPECT_THROW(maj(6, 3), RefusedParameters);
  EXPECT_EQ(maj(6, 4).size(), 15u);  // one block of 6, C(6,4)
}

TEST(Maj, EverySolutionSetsTwoPerBlock) {
  for (const Assignment& a : brute_force(negation_closure(maj(8, 3))).gamma) {
    int lo = 0, hi = 0;
    for (int v : a.ones) (v <= 4 ? lo : hi)++;
    EXPECT_EQ(lo, 2);
    EXPECT_EQ(hi, 2);
  }
}

TEST(RandomClosed, DeterministicAndClosed) {
  const Formula a = random_negation_closed(10, 12, 99, 0.25);
  EXPECT_EQ(a, random_negation_closed(10, 12, 99, 0.25));
  EXPECT_NE(a, random_negation_closed(10, 12, 100, 0.25));
  EXPECT_EQ(negation_closure(a), a);
  EXPECT_EQ(random_negation_closed(6, 4, 1).size(), 8u);
}

TEST(Reduction, AddsFreshVariable) {
  const Formula f(2, {Clause::from_dimacs({1, 2})});
  const Formula g = ksat_to_naesat(f);
  EXPECT_EQ(g.num_vars(), 3);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.contains(Clause::from_dimacs({1, 2, 3})));
  EXPECT_TRUE(ksat_to_naesat(Formula()).empty());
}

// F satisfiable iff F' has an NAE solution; NAE solutions with z = 0 are
// exactly the models of F, and they come in complement pairs.
TEST(Reduction, PreservesSatisfiabilityAndCounts) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 5 + static_cast<int>(seed % 7);
    const Formula closed = random_negation_closed(n, n + static_cast<int>(seed % 9), seed, 0.5);
    // take one clause of each complementary pair so F is not closed
    std::vector<Clause> half;
    for (const Clause& c : closed.clauses())
      if (c < c.negation()) half.push_back(c);
    const Formula f(n, half);
    const Formula g = ksat_to_naesat(f);
    std::size_t sat = 0, nae = 0, nae_z0 = 0;
    for (VarMask m = 0; m < (VarMask{1} << n); ++m) sat += satisfies(f, Assignment::from_mask(m));
    for (VarMask m = 0; m < (VarMask{1} << (n + 1)); ++m) {
      if (!nae_check(g, Assignment::from_mask(m))) continue;
      ++nae;
      if (!contains(m, n + 1)) ++nae_z0;
    }
    EXPECT_EQ(sat > 0, nae > 0) << seed;
    EXPECT_EQ(nae, 2 * sat) << seed;
    EXPECT_EQ(nae_z0, sat) << seed;
  }
}
