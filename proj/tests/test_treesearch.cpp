#include <gtest/gtest.h>

#include <set>

#include "naeenum/errors.hpp"
#include "naeenum/generators.hpp"
#include "naeenum/oracle.hpp"
#include "naeenum/stats_json.hpp"
#include "naeenum/treesearch.hpp"
#include "support/corpus.hpp"

using namespace naeenum;

namespace {

std::vector<Assignment> collect(const Formula& f, int t, const OrderingSource& ord, SearchStats* st = nullptr) {
  std::vector<Assignment> out;
  SearchStats s = enumerate(f, t, ord, [&](const Assignment& a) { out.push_back(a); });
  if (st) *st = s;
  return out;
}

}  // namespace

TEST(Search, MajCountsMatchSixToTheQuarter) {
  const std::pair<int, std::uint64_t> cases[] = {{4, 6}, {8, 36}, {12, 216}};
  for (auto [n, want] : cases) {
    const Formula f = negation_closure(maj(n, 3));
    SearchStats st;
    const auto sols = collect(f, n / 2, OrderingSource(), &st);
    EXPECT_EQ(sols.size(), want);
    EXPECT_EQ(st.solutions_emitted, want);
    EXPECT_TRUE(verify_enumeration(f, n / 2, sols).pass);
    EXPECT_EQ(count(f, n / 2, OrderingSource::seeded(3)).first, want);
  }
}

TEST(Search, SeededRunsAreReproducible) {
  const auto corpus = naeenum::testing::random_corpus(10, 8, 12, 55);
  for (const auto& e : corpus) {
    SearchStats a, b;
    const auto x = collect(e.closed, e.tau, OrderingSource::seeded(7), &a);
    const auto y = collect(e.closed, e.tau, OrderingSource::seeded(7), &b);
    EXPECT_EQ(x, y);
    EXPECT_EQ(stats_to_json(a).dump(), stats_to_json(b).dump());
  }
}

TEST(Search, OrderingsChangeTheWalkNotTheSet) {
  const Formula f = negation_closure(maj(8, 3));
  std::set<std::vector<Assignment>> orders;
  std::set<Assignment> reference;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto sols = collect(f, 4, OrderingSource::seeded(seed));
    orders.insert(sols);
    std::set<Assignment> s(sols.begin(), sols.end());
    if (seed == 0) reference = s;
    EXPECT_EQ(s, reference);
  }
  EXPECT_GT(orders.size(), 1u);
}

TEST(Search, LighterSolutionViolatesPrecondition) {
  const Formula f = negation_closure(maj(8, 3));
  EXPECT_THROW(collect(f, 5, OrderingSource()), PreconditionViolated);
  EXPECT_TRUE(collect(f, 3, OrderingSource()).empty());
  EXPECT_THROW(Engine(f, 9), RefusedParameters);
}

TEST(Search, NodeBudget) {
  SearchOptions opt;
  opt.node_budget = 3;
  const Formula f = negation_closure(maj(8, 3));
  EXPECT_THROW(enumerate(f, 4, OrderingSource(), [](const Assignment&) {}, opt), BudgetExceeded);
}

TEST(Search, SuperfluousPredicate) {
  EXPECT_TRUE(superfluous(3, var_bit(3) | var_bit(5)));
  EXPECT_FALSE(superfluous(4, var_bit(3) | var_bit(5)));
}

namespace {
struct EdgeCounter : SearchObserver {
  std::uint64_t superfluous = 0, traversed = 0, leaves = 0;
  void on_edge(std::uint64_t, int, EdgeFate f) override {
    if (f == EdgeFate::superfluous) ++superfluous;
    if (f == EdgeFate::traversed) ++traversed;
  }
  void on_leaf(std::uint64_t, int, bool transversal) override { leaves += transversal; }
};
}  // namespace

TEST(Search, ObserverSeesTheSameWalkAsTheStats) {
  const Formula f = negation_closure(maj(8, 3));
  Engine eng(f, 4);
  EdgeCounter obs;
  const SearchStats s = eng.run(OrderingSource::seeded(11), [](const Assignment&) {}, &obs);
  EXPECT_EQ(obs.superfluous, s.superfluous_skips);
  EXPECT_EQ(obs.leaves, s.leaves_visited);
}

TEST(Exhaustive, MajFourOrderings) {
  const Formula f = negation_closure(maj(4, 3));
  const TransversalTree full = materialize(f, 2);
  EXPECT_EQ(ordering_count(full), 1296u);  // 3!^4
  const ExhaustiveReport r = enumerate_all_orderings(f, 2);
  EXPECT_EQ(r.orderings, 1296u);
  EXPECT_EQ(r.mean_leaves, mpq_class(6));
  EXPECT_EQ(r.psi_markings, mpq_class(6));
  EXPECT_EQ(r.min_leaves, 6u);
  EXPECT_EQ(r.max_leaves, 6u);
  EXPECT_TRUE(r.solutions_consistent);
  for (const EdgeSurvival& e : r.edges) EXPECT_EQ(e.traversed << e.marks, e.parent_reached);
}

TEST(Exhaustive, BudgetIsEnforced) {
  EXPECT_THROW(enumerate_all_orderings(negation_closure(maj(8, 3)), 4, 10), BudgetExceeded);
}

// Property: exactly-once against the oracle, several orderings per instance.
TEST(Property, ExactlyOnceOnRandomClosedFormulas) {
  for (const auto& e : naeenum::testing::random_corpus(80, 5, 12, 2024)) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto sols = collect(e.closed, e.tau, OrderingSource::seeded(seed));
      const VerifyReport v = verify_enumeration(e.closed, e.tau, sols);
      ASSERT_TRUE(v.pass) << e.name << " seed " << seed << ": " << v.mismatch;
    }
  }
}

TEST(Property, ScalarAndAvx2SearchesAgree) {
  if (!kernels::isa_available(kernels::Isa::avx2)) GTEST_SKIP();
  for (const auto& e : naeenum::testing::dense_corpus(20, 8, 12, 8)) {
    kernels::force_isa(kernels::Isa::scalar);
    SearchStats a, b;
    const auto x = collect(e.closed, e.tau, OrderingSource::seeded(1), &a);
    kernels::force_isa(kernels::Isa::avx2);
    const auto y = collect(e.closed, e.tau, OrderingSource::seeded(1), &b);
    EXPECT_EQ(x, y);
    EXPECT_EQ(stats_to_json(a).dump(), stats_to_json(b).dump());
  }
}
