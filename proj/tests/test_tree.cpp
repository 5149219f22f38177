#include <gtest/gtest.h>

#include <sstream>

#include "naeenum/errors.hpp"
#include "naeenum/generators.hpp"
#include "naeenum/tree.hpp"
#include "naeenum/treesearch.hpp"

using namespace naeenum;

namespace {

Clause C(std::initializer_list<int> l) { return Clause::from_dimacs(l); }

TransversalTree two_level() {
  TransversalTree tree(negation_closure(Formula(5, {C({1, 2, 3}), C({2, 4, 5})})), 2);
  const int root = tree.add_root(kRootKey);
  expand(tree, root, C({1, 2, 3}));
  return tree;
}

}  // namespace

TEST(Marking, RepeatedLabelIsMarkedByAncestor) {
  TransversalTree tree = two_level();
  const int one = tree.root().children[0];
  ASSERT_EQ(tree.node(one).label, 1);
  const auto kids = expand(tree, one, C({2, 4, 5}));
  ASSERT_EQ(kids.size(), 3u);
  EXPECT_EQ(kids[0], (ChildInfo{2, 1, false}));
  EXPECT_EQ(kids[1], (ChildInfo{4, 0, false}));
  EXPECT_EQ(kids[2], (ChildInfo{5, 0, false}));
  EXPECT_EQ(mass_rational(kids), mpq_class(5, 2));
  EXPECT_TRUE(is_light_one_marked(kids));
  EXPECT_FALSE(is_heavy(kids));
  EXPECT_EQ(effective_width(tree, one), 3);
  EXPECT_EQ(mass(tree, one), mpq_class(5, 2));
}

TEST(Marking, ExpansionPreconditions) {
  TransversalTree tree = two_level();
  const int one = tree.root().children[0];
  EXPECT_THROW(expand(tree, one, C({1, 4, 5})), InternalError);  // not live
}

TEST(Mass, ExactDyadicArithmetic) {
  const std::vector<ChildInfo> heavy{{1, 1, false}, {2, 1, false}, {3, 0, false}};
  EXPECT_TRUE(is_heavy(heavy));
  EXPECT_EQ(mass_rational(heavy), mpq_class(2));
  EXPECT_TRUE(mass_at_most(heavy, 2, 1));
  EXPECT_FALSE(mass_at_most(heavy, 3, 2));
  const std::vector<ChildInfo> with_false{{1, 0, true}, {2, 2, false}, {3, 0, false}};
  EXPECT_EQ(falsifying_count(with_false), 1);
  EXPECT_EQ(effective_width(with_false), 2);
  EXPECT_EQ(mass_rational(with_false), mpq_class(5, 4));
  EXPECT_EQ(marked_count(with_false), 1);
}

TEST(Keys, PathHashDistinguishesOrder) {
  EXPECT_NE(child_key(child_key(kRootKey, 1), 2), child_key(child_key(kRootKey, 2), 1));
  EXPECT_EQ(child_key(kRootKey, 7), child_key(kRootKey, 7));
}

TEST(Materialized, MajFourPsiAndExport) {
  const TransversalTree tree = materialize(negation_closure(maj(4, 3)), 2);
  EXPECT_EQ(psi_by_markings(tree, 0), mpq_class(6));
  const std::string dump = export_tree(tree);
  std::istringstream in(dump);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    std::istringstream fields(line);
    int depth, label, marks;
    std::string stage, kind;
    ASSERT_TRUE(static_cast<bool>(fields >> depth >> label >> marks >> stage >> kind)) << line;
  }
  EXPECT_EQ(lines, tree.size());
  const InvariantReport inv = check_invariants(tree, false);
  EXPECT_EQ(inv.total(), 0u);
  EXPECT_EQ(inv.nodes_checked, tree.size());
}

TEST(Materialized, ShootWeightAtLeastThreeTMinusN) {
  const TransversalTree tree = materialize(negation_closure(maj(8, 3)), 4);
  for (const TreeNode& v : tree.nodes()) {
    if (v.depth != 4) continue;
    EXPECT_GE(shoot_stats(tree, 0, v.id).weight(), 3 * 4 - 8);
  }
}
