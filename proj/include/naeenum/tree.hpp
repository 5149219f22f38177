#pragma once

// Transversal-tree vocabulary shared by the search engine and the debug
// materializer: per-edge child records, node-level predicates (marking, mass,
// effective width) and a fully materialized tree for small instances.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "naeenum/cnf.hpp"
#include "naeenum/varmask.hpp"

namespace naeenum {

enum class Stage : std::uint8_t { disjoint, kappa1, kappa2, arbitrary };
enum class LeafKind : std::uint8_t { none, falsified, viable };

std::string_view stage_name(Stage s);
std::string_view leaf_kind_name(LeafKind k);

/// Node identity used for ordering streams: a hash of the root-to-node labels.
inline constexpr std::uint64_t kRootKey = 0x6a09e667f3bcc908ULL;
std::uint64_t child_key(std::uint64_t parent, int label);

/// One child edge as seen from its parent: label Q(e), |M(e)| and whether
/// the edge leads straight to a falsified leaf.
struct ChildInfo {
  int label = 0;
  int marks = 0;
  bool falsifying = false;
  bool operator==(const ChildInfo&) const = default;
};

/// Exact dyadic mass in units of 2^-64; |M(e)| never exceeds the depth (<= 64).
using MassUnits = unsigned __int128;
inline constexpr int kMassShift = 64;

MassUnits mass_units(std::span<const ChildInfo> children);
/// mass <= num/den, exactly.
bool mass_at_most(std::span<const ChildInfo> children, std::uint64_t num, std::uint64_t den);
mpq_class mass_rational(std::span<const ChildInfo> children);
int marked_count(std::span<const ChildInfo> children);
int falsifying_count(std::span<const ChildInfo> children);
int effective_width(std::span<const ChildInfo> children);
/// 3 children, none falsifying, exactly two marked and each of those by a
/// single ancestor: the mass-2 nodes the heavy-clause budget counts.
bool is_heavy(std::span<const ChildInfo> children);
/// 3 children, none falsifying, one marked edge with |M| = 1: mass 5/2.
bool is_light_one_marked(std::span<const ChildInfo> children);

struct TreeNode {
  int id = 0;
  int depth = 0;
  int parent = -1;
  std::uint64_t key = 0;          // path hash shared with the search engine
  // Parent edge; unset at the root.
  int label = 0;
  std::vector<int> markers;       // ancestor ids marking the parent edge
  bool falsifying = false;
  // Expansion; empty for leaves.
  std::optional<Clause> clause;   // the positive simplification C/v
  std::vector<int> children;
  Stage stage = Stage::arbitrary;
  LeafKind leaf_kind = LeafKind::none;
  int heavy_bound = -1;           // m'_R + m_B - l(u) below a controlled stage, else -1

  bool is_leaf() const { return children.empty(); }
};

struct ShootStats {
  int marked_edge_count = 0;
  int defect = 0;
  int weight() const { return marked_edge_count + defect; }
};

class TransversalTree {
 public:
  TransversalTree(Formula formula, int t);

  const Formula& formula() const { return formula_; }
  int target() const { return t_; }
  std::size_t size() const { return nodes_.size(); }
  const TreeNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  TreeNode& node(int id) { return nodes_.at(static_cast<std::size_t>(id)); }
  std::span<const TreeNode> nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }

  /// Root-to-node labels, i.e. Q(v) in path order.
  std::vector<int> path_labels(int id) const;
  /// Ancestors of `id` from the root down to `id` inclusive.
  std::vector<int> path_nodes(int id) const;
  std::vector<ChildInfo> child_infos(int id) const;
  /// Residual formula F/v.
  Formula residual(int id) const;

  /// Drop every node with id >= `count` (used when a subtree is rebuilt).
  void truncate(std::size_t count);
  int add_root(std::uint64_t key);
  int add_child(int parent, int label, std::vector<int> markers, bool falsifying, std::uint64_t key);

  /// The edge labels a node currently has, in creation order.
  std::vector<int> child_labels(int id) const;

  int t0 = 0;  // annotation: length of the disjoint stage

 private:
  Formula formula_;
  int t_;
  std::vector<TreeNode> nodes_;
};

/// Expand `node` with `clause`. The clause must be live at the node and
/// simplify to a positive clause; one child is created per variable of C/v with
/// its marking set, and edges whose label appears as a unit (not x) in F/v are
/// flagged as falsifying (their children become falsified leaves).
/// Throws InternalError on a non-live clause and PreconditionViolated when C/v
/// is not positive.
std::vector<ChildInfo> expand(TransversalTree& tree, int node, const Clause& clause);

int effective_width(const TransversalTree& tree, int node);
/// Counts over the shoot S(from, to); `to` must be a descendant of `from`.
ShootStats shoot_stats(const TransversalTree& tree, int from, int to);
mpq_class mass(const TransversalTree& tree, int node);
/// psi(u) as the sum over surviving leaves below u of prod 2^-|M(e)|.
mpq_class psi_by_markings(const TransversalTree& tree, int node);

/// Line-oriented dump, one node per line:
/// `<depth> <parent label> <|M(e)|> <stage> <leaf kind>`.
std::string export_tree(const TransversalTree& tree);

struct InvariantReport {
  std::size_t nodes_checked = 0;
  std::size_t not_disjointly_marked = 0;   // non-falsifying edge sharing a marker with a path edge
  std::size_t unmarked_after_t0 = 0;       // width-3 node at level >= t0 with no marked edge
  std::size_t shoot_weight_low = 0;        // depth-t leaf with shoot weight < 3t - n
  std::size_t kappa2_shape = 0;            // kappa2 node with effective width > 2 or mass > 3/2
  std::size_t kappa2_width_below_two = 0;  // extra falsifying edges (allowed; reported)
  std::size_t one_marked_heavy_mass = 0;   // 1-marked arbitrary node with mass > 9/4
  std::size_t heavy_over_budget = 0;       // shoot with more heavy nodes than m'_R + m_B - l(u)
  std::size_t mass_over_marking_bound = 0; // j-marked mass above 5/2, 2, 3/2
  std::size_t psi_not_additive = 0;
  std::size_t total() const {
    return not_disjointly_marked + unmarked_after_t0 + shoot_weight_low +
           kappa2_shape + one_marked_heavy_mass + heavy_over_budget + mass_over_marking_bound + psi_not_additive;
  }
};

/// Recompute markings from the tree itself and check the structural facts the
/// analysis relies on. `controlled` enables the controlled-route checks.
InvariantReport check_invariants(const TransversalTree& tree, bool controlled);

}  // namespace naeenum
