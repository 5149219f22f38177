#pragma once

// Pruned depth-first enumeration over the staged transversal tree.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "naeenum/cnf.hpp"
#include "naeenum/matching.hpp"
#include "naeenum/rng.hpp"
#include "naeenum/selection.hpp"
#include "naeenum/tree.hpp"

namespace naeenum {

/// Child orderings. Seeded-random orderings draw each node's permutation from
/// a stream seeded by (seed, node key), so they do not depend on visit order.
class OrderingSource {
 public:
  enum class Kind { seeded_random, exhaustive, fixed };
  using Table = std::unordered_map<std::uint64_t, std::array<std::uint8_t, 3>>;

  /// Canonical order (increasing labels) everywhere.
  OrderingSource() = default;
  static OrderingSource seeded(std::uint64_t seed);
  /// Per-node permutations of child positions; nodes not in the table keep
  /// canonical order. The table is read at every call, so callers may mutate
  /// it between runs.
  static OrderingSource table(std::shared_ptr<const Table> perms, Kind kind = Kind::fixed);

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  /// Permute `positions` (a permutation of 0..k-1) for the node `key`.
  void order(std::uint64_t key, std::span<int> positions) const;

 private:
  Kind kind_ = Kind::fixed;
  std::uint64_t seed_ = 0;
  std::shared_ptr<const Table> table_;
};

enum class EdgeFate { traversed, superfluous, falsifying };

struct NodeView {
  std::uint64_t key = 0;
  int depth = 0;
  VarMask ones = 0;
  Stage stage = Stage::arbitrary;
  int heavy_bound = -1;
};

class SearchObserver {
 public:
  virtual ~SearchObserver() = default;
  virtual void on_enter(std::uint64_t /*key*/, int /*depth*/, int /*label*/) {}
  virtual void on_expand(const NodeView&, VarMask /*clause*/, std::span<const ChildInfo> /*kids*/) {}
  virtual void on_edge(std::uint64_t /*parent*/, int /*label*/, EdgeFate) {}
  virtual void on_leaf(std::uint64_t /*key*/, int /*depth*/, bool /*transversal*/) {}
  /// The subtree rooted at the node `key` (depth 0: the whole tree) is being
  /// rebuilt after a reset; anything recorded below it is void.
  virtual void on_restart(std::uint64_t /*key*/, int /*depth*/) {}
};

struct SearchOptions {
  bool prune = true;         // skip superfluous edges; off only for materialization
  bool debug_checks = false; // F2(u) inside F2(u*) at every end-of-kappa1 node
  std::uint64_t node_budget = 0;  // 0 = unlimited
};

struct ProfileKey {
  int t1 = 0, m_b = 0, m_r = 0, m_i = 0, m_r_prime = 0;
  auto operator<=>(const ProfileKey&) const = default;
};

struct SearchStats {
  int n = 0;
  int t = 0;
  int t0 = 0;
  Route route = Route::arbitrary;

  std::uint64_t nodes_visited = 0;
  std::uint64_t leaves_visited = 0;      // surviving depth-t leaves, L(r)
  std::uint64_t falsified_leaves = 0;
  std::uint64_t superfluous_skips = 0;
  std::uint64_t solutions_emitted = 0;
  std::uint64_t aborted_nodes = 0;       // work discarded by resets
  std::uint64_t suppressed_duplicates = 0;
  std::array<std::uint64_t, 3> resets{}; // C0, C1, CR
  std::vector<ResetEvent> reset_events;

  std::array<std::uint64_t, static_cast<std::size_t>(Violation::count_)> violations{};
  std::uint64_t heavy_nodes = 0;
  std::uint64_t heavy_outside_f2 = 0;
  std::uint64_t kappa2_nodes = 0;
  std::uint64_t kappa2_extra_falsifying = 0;
  std::map<ProfileKey, std::uint64_t> profiles;  // per u0
  std::map<int, std::uint64_t> ell_histogram;    // per end-of-kappa1 node

  std::uint64_t total_violations() const;
};

using SolutionSink = std::function<void(const Assignment&)>;

/// A search instance. The selector (and with it every reset) persists across
/// runs, so repeated runs on one engine see a stabilized tree.
class Engine {
 public:
  /// `closed` must be negation-closed with width <= 3 and n <= 64.
  Engine(const Formula& closed, int t);

  SearchStats run(const OrderingSource& ord, const SolutionSink& sink, SearchObserver* obs = nullptr,
                  const SearchOptions& opt = {});
  const Selector& selector() const { return selector_; }
  const ClauseIndex& index() const { return *idx_; }
  int target() const { return t_; }

 private:
  std::shared_ptr<const ClauseIndex> idx_;
  Selector selector_;
  int t_;
};

SearchStats enumerate(const Formula& closed, int t, const OrderingSource& ord, const SolutionSink& sink,
                      const SearchOptions& opt = {});
std::pair<std::uint64_t, SearchStats> count(const Formula& closed, int t, const OrderingSource& ord,
                                            const SearchOptions& opt = {});

/// An edge labeled `label` is superfluous when the label sits on a child edge
/// left of the current path at some ancestor; `left_labels` holds those labels.
inline bool superfluous(int label, VarMask left_labels) { return contains(left_labels, label); }

/// The full (unpruned) tree, built through the engine's own selection and
/// cross-checked against the tree module's marking computation.
TransversalTree materialize(Engine& engine, std::size_t max_nodes = 2'000'000);
TransversalTree materialize(const Formula& closed, int t, std::size_t max_nodes = 2'000'000);

struct EdgeSurvival {
  std::uint64_t parent_key = 0;
  int label = 0;
  int marks = 0;
  std::uint64_t parent_reached = 0;  // orderings in which the parent survives
  std::uint64_t traversed = 0;       // ... and this edge survives as well
};

struct ExhaustiveReport {
  std::uint64_t orderings = 0;
  mpq_class mean_leaves;             // exact average of L(r)
  std::uint64_t min_leaves = 0, max_leaves = 0;
  mpq_class psi_markings;            // sum over surviving leaves of prod 2^-|M(e)|
  std::vector<EdgeSurvival> edges;   // every non-falsifying edge of the full tree
  std::uint64_t solutions = 0;
  bool solutions_consistent = true;  // every ordering emitted the same set
};

/// Number of joint orderings of the full tree (product of k! over internal
/// nodes), saturating at UINT64_MAX.
std::uint64_t ordering_count(const TransversalTree& tree);

/// Run the pruned search under every joint ordering. Throws BudgetExceeded
/// when the count exceeds `budget`.
ExhaustiveReport enumerate_all_orderings(const Formula& closed, int t, std::uint64_t budget = 1'000'000);

}  // namespace naeenum
