#include <gtest/gtest.h>

#include "naeenum/errors.hpp"
#include "naeenum/matching.hpp"

using namespace naeenum;

namespace {
Clause C(std::initializer_list<int> l) { return Clause::from_dimacs(l); }
}  // namespace

TEST(Greedy, TakesCanonicalOrder) {
  std::vector<Clause> maj4{C({2, 3, 4}), C({1, 2, 3}), C({1, 3, 4}), C({1, 2, 4})};
  const DisjointCollection c = greedy_maximal(maj4);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.members()[0], C({1, 2, 3}));
}

TEST(Greedy, MaximalNotMaximum) {
  // 123 comes first canonically and blocks both 145 and 236
  std::vector<Clause> cs{C({2, 3, 6}), C({1, 4, 5}), C({1, 2, 3})};
  EXPECT_EQ(greedy_maximal(cs).size(), 1u);
  std::vector<Clause> two{C({1, 4, 5}), C({2, 3, 6})};
  EXPECT_TRUE(pairwise_disjoint(two));
  EXPECT_FALSE(pairwise_disjoint(cs));
}

TEST(Reset, GrowsCollectionAndCounts) {
  DisjointCollection c(StageTag::C0, 3);
  c.add(C({2, 3, 4}));
  const std::vector<Clause> removed{C({2, 3, 4})};
  const std::vector<Clause> added{C({1, 2, 5}), C({3, 4, 6})};
  const auto ev = c.attempt_reset(removed, added);
  ASSERT_TRUE(ev.has_value());
  EXPECT_EQ(ev->old_size, 1u);
  EXPECT_EQ(ev->new_size, 2u);
  EXPECT_EQ(c.reset_count(), 1u);
  EXPECT_TRUE(c.contains(C({1, 2, 5})));
  EXPECT_FALSE(c.contains(C({2, 3, 4})));
}

TEST(Reset, RejectsOverlapAndExhaustedBudget) {
  DisjointCollection c(StageTag::C1, 0);
  c.add(C({1, 2, 3}));
  const std::vector<Clause> none;
  const std::vector<Clause> one{C({4, 5, 6})};
  EXPECT_THROW(c.attempt_reset(none, one), InternalError);  // budget 0
  DisjointCollection d(StageTag::C1, 5);
  d.add(C({1, 2, 3}));
  const std::vector<Clause> overlapping{C({3, 4, 5})};
  EXPECT_THROW(d.attempt_reset(none, overlapping), InternalError);
}

TEST(Reset, NoGrowthIsNoReset) {
  DisjointCollection c(StageTag::CR, 5);
  c.add(C({1, 2, 3}));
  const std::vector<Clause> removed{C({1, 2, 3})};
  const std::vector<Clause> added{C({4, 5, 6})};
  EXPECT_FALSE(c.attempt_reset(removed, added).has_value());
  EXPECT_EQ(c.reset_count(), 0u);
}

TEST(Extend, AddsDisjointCandidates) {
  DisjointCollection c;
  c.add(C({1, 2, 3}));
  std::vector<Clause> cs{C({3, 4, 5}), C({4, 5, 6}), C({6, 7, 8})};
  extend_greedily(c, cs);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_TRUE(c.contains(C({4, 5, 6})));
}
