#pragma once

// Staged clause selection: disjoint stage, controlled stages kappa1/kappa2,
// arbitrary stage, with the bookkeeping and the reset witnesses that keep the
// disjoint collections pseudomaximum.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "naeenum/cnf.hpp"
#include "naeenum/kernels.hpp"
#include "naeenum/matching.hpp"
#include "naeenum/tree.hpp"
#include "naeenum/varmask.hpp"

namespace naeenum {

/// Negation-closed engine input split into the mask arrays the search scans.
struct ClauseIndex {
  explicit ClauseIndex(Formula closed);

  Formula formula;
  int n = 0;
  kernels::ClauseMasks all;                 // every clause, for the transversal test
  std::vector<VarMask> negative_only;       // clauses without positive literals
  // Clauses with a positive literal, in arbitrary-stage preference order:
  // positive width, then positive variables lexicographically.
  std::vector<Clause> pick_clauses;
  kernels::ClauseMasks pick;
  std::vector<VarMask> monotone3;           // monotone width-3 clauses, canonical order

  std::vector<Clause> monotone3_clauses() const;
};

Clause monotone_clause(VarMask m);

enum class Route { arbitrary, controlled };
std::string_view route_name(Route r);

/// t0 >= n/4 takes the arbitrary route (equality included).
Route branch_on_t0(int t0, int n);

/// Greedy maximal disjoint family of the monotone width-3 clauses.
DisjointCollection disjoint_stage(const ClauseIndex& idx);

/// Bookkeeping for one node u0 at the end of the disjoint stage.
struct StageProfile {
  VarMask u0 = 0;                // Q(u0)
  int n = 0;
  int t0 = 0;
  std::vector<VarMask> c0;       // C0_i in level order
  std::vector<int> p;            // label of the path edge at level i
  std::vector<VarMask> x;        // X_i = C0_i minus p_i
  VarMask x_all = 0;
  VarMask c0_vars = 0;

  std::vector<VarMask> f1;       // live monotone width-3 clauses with one marked variable
  std::vector<VarMask> c1;       // kappa1 clauses in level order
  std::vector<int> c1_owner;     // index i in V0 each kappa1 clause meets
  std::vector<int> v1, vb;
  std::vector<int> a, b;         // per i in V1: shared variable of X_i with C1, and the other one
  std::vector<VarMask> y;        // per i in V1: C1 clause minus a_i
  VarMask u_star = 0;            // Q(u*)

  std::vector<VarMask> f2r, f2b; // sorted
  std::vector<int> vr, vr_prime;
  std::vector<VarMask> cr;       // C'_R, canonical order
  int t1 = 0, m_b = 0, m_r = 0, m_i = 0, m_r_prime = 0;

  /// Delta = n/4 - t0, scaled by 4.
  int four_delta() const { return n - 4 * t0; }
  int I() const { return 3 * t0 + 2 * t1 + m_r_prime + m_b; }
  int index_of_var(int var) const;  // i with var in C0_i, or -1
};

struct Kappa2Context {
  VarMask u = 0;
  std::vector<int> v_marked;
  std::vector<VarMask> cr_u;     // expansion order
  int ell = 0;
};

/// A failed pseudomaximality check, carrying the larger disjoint family.
struct ResetSignal {
  StageTag stage = StageTag::C0;
  VarMask u0 = 0;                // scope for C1 / CR resets
  std::vector<Clause> removed;
  std::vector<Clause> added;
  // C1 / CR only: the collection in force and the family it is drawn from,
  // so the override for u0 can be rebuilt and re-maximalized.
  std::vector<Clause> current;
  std::vector<Clause> candidates;
  std::string reason;
};

enum class Violation { heavy_budget, one_marked_mass, kappa2_shape, f2_subset, count_ };
std::string_view violation_name(Violation v);

enum class HeavyClass { none, f2r, f2b, other };

class Selector {
 public:
  Selector(std::shared_ptr<const ClauseIndex> idx, int t);

  const ClauseIndex& index() const { return *idx_; }
  int n() const { return idx_->n; }
  int t() const { return t_; }
  int t0() const { return static_cast<int>(c0_levels_.size()); }
  Route route() const { return route_; }
  const DisjointCollection& c0() const { return c0_; }
  std::span<const VarMask> c0_levels() const { return c0_levels_; }

  /// Kappa1 set-up and F2 classification at u0. Throws ResetSignal (C0).
  StageProfile build_profile(std::span<const int> path_labels) const;
  Kappa2Context plan_kappa2(const StageProfile& prof, VarMask ones) const;
  /// Index into idx.pick of the preferred clause with positive simplification.
  std::size_t arbitrary_pick(VarMask ones) const;

  /// Any width-3 expansion at level >= t0 must meet X (or C0 for the
  /// arbitrary route). Throws ResetSignal (C0) with the clause as witness.
  void check_meets_disjoint_stage(const StageProfile* prof, VarMask clause, int depth) const;
  /// Mass-5/2 node in the arbitrary stage below a controlled stage. Throws a
  /// C1 (or C0) reset when a witness exists; otherwise returns false.
  bool check_one_marked(const StageProfile& prof, VarMask clause, std::span<const ChildInfo> kids) const;
  HeavyClass classify_heavy(const StageProfile& prof, VarMask clause) const;
  /// Heavy nodes on the current path exceed m'_R + m_B - l(u). Throws the
  /// matching reset if one exists; returns false when none can be built.
  bool resolve_heavy_overflow(const StageProfile& prof, const Kappa2Context& k2,
                              std::span<const VarMask> heavy_path) const;
  /// F2(u) at a node at the end of kappa1 must lie inside F2(u*).
  bool f2_subset_holds(const StageProfile& prof, VarMask ones, std::span<const std::uint8_t> mark_count) const;

  /// Apply a reset. C0 resets clear every u0-scoped override.
  ResetEvent apply(const ResetSignal& sig);
  std::size_t reset_count(StageTag tag) const;

 private:
  std::shared_ptr<const ClauseIndex> idx_;
  int t_;
  DisjointCollection c0_;
  std::vector<VarMask> c0_levels_;
  Route route_ = Route::arbitrary;
  std::map<VarMask, DisjointCollection> c1_override_, cr_override_;
  std::size_t c1_resets_ = 0, cr_resets_ = 0;

  void refresh_levels();
};

}  // namespace naeenum
