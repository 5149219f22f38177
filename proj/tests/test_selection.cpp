#include <gtest/gtest.h>

#include <algorithm>
#include <memory>

#include "naeenum/errors.hpp"
#include "naeenum/generators.hpp"
#include "naeenum/selection.hpp"
#include "naeenum/treesearch.hpp"
#include "support/corpus.hpp"

using namespace naeenum;

namespace {
Clause C(std::initializer_list<int> l) { return Clause::from_dimacs(l); }
}  // namespace

TEST(Index, RejectsOpenOrWideInput) {
  EXPECT_THROW(ClauseIndex(Formula(3, {C({1, 2, 3})})), InputNotClosed);
  EXPECT_THROW(ClauseIndex(negation_closure(Formula(4, {C({1, 2, 3, 4})}))), WidthError);
}

TEST(Index, PickOrderIsPositiveWidthThenLex) {
  const ClauseIndex idx(negation_closure(Formula(4, {C({1, 2, 3}), C({-1, 2, 4}), C({-2, -3, 4})})));
  ASSERT_FALSE(idx.pick_clauses.empty());
  for (std::size_t i = 1; i < idx.pick_clauses.size(); ++i) {
    const VarMask a = idx.pick_clauses[i - 1].positive_mask(), b = idx.pick_clauses[i].positive_mask();
    EXPECT_LE(mask_size(a), mask_size(b));
  }
  EXPECT_EQ(mask_size(idx.pick_clauses.front().positive_mask()), 1);
  EXPECT_EQ(idx.monotone3.size(), 1u);
}

TEST(DisjointStage, MajBlocks) {
  for (int n : {4, 8, 12}) {
    const ClauseIndex idx(negation_closure(maj(n, 3)));
    EXPECT_EQ(static_cast<int>(disjoint_stage(idx).size()), n / 4) << n;
  }
}

TEST(Route, EqualityTakesArbitraryRoute) {
  EXPECT_EQ(branch_on_t0(2, 8), Route::arbitrary);
  EXPECT_EQ(branch_on_t0(1, 8), Route::controlled);
  EXPECT_EQ(branch_on_t0(3, 8), Route::arbitrary);
  const Selector s(std::make_shared<const ClauseIndex>(negation_closure(maj(8, 3))), 4);
  EXPECT_EQ(s.t0(), 2);
  EXPECT_EQ(s.route(), Route::arbitrary);
}

// Profiles taken at every depth-t0 node of stabilized controlled trees.
TEST(Profile, BookkeepingInvariants) {
  std::size_t profiles = 0;
  for (const auto& e : naeenum::testing::dense_corpus(60, 8, 12, 3)) {
    Engine eng(e.closed, e.tau);
    if (eng.selector().route() != Route::controlled) continue;
    const TransversalTree tree = materialize(eng);
    const Selector& sel = eng.selector();
    for (const TreeNode& v : tree.nodes()) {
      if (v.depth != sel.t0() || v.falsifying) continue;
      const StageProfile p = sel.build_profile(tree.path_labels(v.id));
      ++profiles;
      ASSERT_EQ(static_cast<int>(p.c0.size()), p.t0);
      for (int i = 0; i < p.t0; ++i) {
        EXPECT_TRUE(contains(p.c0[static_cast<std::size_t>(i)], p.p[static_cast<std::size_t>(i)]));
        EXPECT_EQ(mask_size(p.x[static_cast<std::size_t>(i)]), 2);
      }
      EXPECT_EQ(p.t1, static_cast<int>(p.c1.size()));
      EXPECT_LE(p.m_b + p.t1, p.t0);
      EXPECT_LE(p.m_r_prime, p.t1);
      EXPECT_EQ(p.m_i, p.t1 - p.m_r);
      for (VarMask c : p.c1) EXPECT_EQ(mask_size(c & p.x_all), 1);
      for (std::size_t i = 0; i < p.c1.size(); ++i)
        for (std::size_t j = i + 1; j < p.c1.size(); ++j) EXPECT_EQ(p.c1[i] & p.c1[j], 0u);
      for (std::size_t i = 0; i < p.cr.size(); ++i)
        for (std::size_t j = i + 1; j < p.cr.size(); ++j) EXPECT_EQ(p.cr[i] & p.cr[j], 0u);
      EXPECT_EQ(p.I(), 3 * p.t0 + 2 * p.t1 + p.m_r_prime + p.m_b);
    }
  }
  EXPECT_GT(profiles, 0u);
}

TEST(ArbitraryPick, NposWhenNothingPositiveRemains) {
  const auto idx = std::make_shared<const ClauseIndex>(negation_closure(maj(4, 3)));
  const Selector s(idx, 3);
  // {1,2} already hits every positive clause
  EXPECT_EQ(s.arbitrary_pick(var_bit(1) | var_bit(2)), kernels::npos);
  const std::size_t i = s.arbitrary_pick(0);
  EXPECT_EQ(idx->pick_clauses[i], C({1, 2, 3}));
}
