#include <gtest/gtest.h>

#include "naeenum/errors.hpp"
#include "naeenum/generators.hpp"
#include "naeenum/oracle.hpp"

using namespace naeenum;

// tau and #Gamma of closure(MAJ(n,3)) from the independent script
TEST(Oracle, MajFrozenValues) {
  const std::tuple<int, int, std::size_t> cases[] = {{4, 2, 6}, {8, 4, 36}, {12, 6, 216}};
  for (auto [n, tau, count] : cases) {
    const OracleReport r = brute_force(negation_closure(maj(n, 3)));
    ASSERT_TRUE(r.tau.has_value());
    EXPECT_EQ(*r.tau, tau);
    EXPECT_EQ(r.gamma_count, count);
    EXPECT_EQ(r.gamma.size(), count);
  }
}

TEST(Oracle, UnsatisfiableHasNoTau) {
  const Formula f = negation_closure(Formula(1, {Clause::from_dimacs({1})}));
  const OracleReport r = brute_force(f);
  EXPECT_FALSE(r.tau.has_value());
  EXPECT_EQ(r.gamma_count, 0u);
}

TEST(Oracle, RefusesLargeN) {
  EXPECT_THROW(brute_force(Formula(25, {Clause::from_dimacs({25})})), RefusedParameters);
}

TEST(Oracle, WeightTSet) {
  const OracleReport r = brute_force(negation_closure(maj(4, 3)), 3);
  EXPECT_TRUE(r.weight_t_solutions.empty());  // three ones make some triple all-true
}

TEST(Oracle, NaeDirectMatchesClosure) {
  const Formula f = random_negation_closed(9, 10, 4, 0.3);
  for (int t = 0; t <= 9; ++t) {
    const auto direct = nae_solutions_direct(f, t);
    EXPECT_EQ(direct.size(), brute_force(f, t).weight_t_solutions.size()) << t;
  }
}

TEST(Verify, DetectsDuplicatesMissingAndUnexpected) {
  const Formula f = negation_closure(maj(4, 3));
  std::vector<Assignment> sols = brute_force(f, 2).weight_t_solutions;
  EXPECT_TRUE(verify_enumeration(f, 2, sols).pass);

  auto dup = sols;
  dup.push_back(sols.front());
  const VerifyReport d = verify_enumeration(f, 2, dup);
  EXPECT_FALSE(d.pass);
  EXPECT_EQ(d.mismatch, "duplicate");

  auto missing = sols;
  missing.pop_back();
  EXPECT_EQ(verify_enumeration(f, 2, missing).mismatch, "missing");

  auto extra = sols;
  extra.back() = Assignment{{1}};
  EXPECT_FALSE(verify_enumeration(f, 2, extra).pass);
}
