#include "naeenum/treesearch.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "naeenum/errors.hpp"

namespace naeenum {

OrderingSource OrderingSource::seeded(std::uint64_t seed) {
  OrderingSource o;
  o.kind_ = Kind::seeded_random;
  o.seed_ = seed;
  return o;
}

OrderingSource OrderingSource::table(std::shared_ptr<const Table> perms, Kind kind) {
  OrderingSource o;
  o.kind_ = kind;
  o.table_ = std::move(perms);
  return o;
}

void OrderingSource::order(std::uint64_t key, std::span<int> pos) const {
  if (kind_ == Kind::seeded_random) {
    SplitMix64 rng(seed_ ^ child_key(key, 0x5eed));
    for (std::size_t i = pos.size(); i > 1; --i) std::swap(pos[i - 1], pos[rng.below(i)]);
    return;
  }
  if (!table_) return;
  auto it = table_->find(key);
  if (it == table_->end()) return;
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = it->second[i];
}

std::uint64_t SearchStats::total_violations() const {
  return std::accumulate(violations.begin(), violations.end(), std::uint64_t{0});
}

namespace {

// Counters that a reset rolls back to the state at the restart point.
struct Tally {
  std::uint64_t nodes = 0, leaves = 0, falsified = 0, superfluous = 0;
  std::array<std::uint64_t, static_cast<std::size_t>(Violation::count_)> violations{};
  std::uint64_t heavy = 0, heavy_other = 0, kappa2 = 0, kappa2_extra = 0;
  std::map<int, std::uint64_t> ell;
  std::map<ProfileKey, std::uint64_t> profiles;
};

class Run {
 public:
  Run(const ClauseIndex& idx, Selector& sel, int t, const OrderingSource& ord, const SolutionSink& sink,
      SearchObserver* obs, const SearchOptions& opt)
      : idx_(idx), sel_(sel), t_(t), ord_(ord), sink_(sink), obs_(obs), opt_(opt) {}

  SearchStats go() {
    for (;;) {
      reset_path();
      tally_ = {};
      try {
        visit(0, 0);
        break;
      } catch (ResetSignal& sig) {
        if (sig.stage != StageTag::C0) throw InternalError("reset escaped its u0 scope");
        record_reset(sel_.apply(sig));
        if (obs_) obs_->on_restart(kRootKey, 0);
      }
    }
    SearchStats s;
    s.n = idx_.n;
    s.t = t_;
    s.t0 = sel_.t0();
    s.route = sel_.route();
    s.nodes_visited = tally_.nodes;
    s.leaves_visited = tally_.leaves;
    s.falsified_leaves = tally_.falsified;
    s.superfluous_skips = tally_.superfluous;
    s.solutions_emitted = emitted_count_;
    s.aborted_nodes = aborted_;
    s.suppressed_duplicates = suppressed_;
    s.resets = resets_;
    s.reset_events = std::move(events_);
    s.violations = tally_.violations;
    s.heavy_nodes = tally_.heavy;
    s.heavy_outside_f2 = tally_.heavy_other;
    s.kappa2_nodes = tally_.kappa2;
    s.kappa2_extra_falsifying = tally_.kappa2_extra;
    s.profiles = std::move(tally_.profiles);
    s.ell_histogram = std::move(tally_.ell);
    return s;
  }

 private:
  const ClauseIndex& idx_;
  Selector& sel_;
  const int t_;
  const OrderingSource& ord_;
  const SolutionSink& sink_;
  SearchObserver* obs_;
  const SearchOptions& opt_;

  // Path state.
  VarMask ones_ = 0;
  std::vector<int> labels_;
  std::array<std::uint8_t, kMaxEngineVars + 1> marks_{};
  VarMask left_ = 0;
  std::uint64_t key_ = kRootKey;
  std::optional<StageProfile> profile_;
  Kappa2Context k2_;
  std::vector<VarMask> heavy_path_;

  Tally tally_;
  std::unordered_set<VarMask> emitted_;
  std::uint64_t emitted_count_ = 0, aborted_ = 0, suppressed_ = 0;
  std::array<std::uint64_t, 3> resets_{};
  std::vector<ResetEvent> events_;

  void reset_path() {
    ones_ = 0;
    labels_.clear();
    marks_.fill(0);
    left_ = 0;
    key_ = kRootKey;
    profile_.reset();
    heavy_path_.clear();
  }

  void record_reset(const ResetEvent& ev) {
    ++resets_[static_cast<std::size_t>(ev.stage)];
    events_.push_back(ev);
    aborted_ += tally_.nodes;
  }

  void visit(int depth, int label) {
    if (opt_.node_budget && tally_.nodes >= opt_.node_budget) throw BudgetExceeded("node budget exhausted");
    ++tally_.nodes;
    if (obs_) obs_->on_enter(key_, depth, label);
    if (depth == t_) {
      leaf(depth);
      return;
    }
    if (sel_.route() == Route::controlled && depth == sel_.t0()) {
      visit_u0(depth);
      return;
    }
    expand(depth);
  }

  void leaf(int depth) {
    ++tally_.leaves;
    const bool transversal = kernels::all_satisfied(idx_.all.pos, idx_.all.neg, ones_);
    if (obs_) obs_->on_leaf(key_, depth, transversal);
    if (!transversal) return;
    if (emitted_.insert(ones_).second) {
      ++emitted_count_;
      if (sink_) sink_(Assignment::from_mask(ones_));
    } else if (opt_.prune && resets_[0] + resets_[1] + resets_[2] == 0) {
      throw InternalError("solution emitted twice without an intervening reset");
    } else {
      ++suppressed_;
    }
  }

  void visit_u0(int depth) {
    const Tally snapshot = tally_;
    for (;;) {
      try {
        profile_ = sel_.build_profile(labels_);
        expand(depth);
        ProfileKey k{profile_->t1, profile_->m_b, profile_->m_r, profile_->m_i, profile_->m_r_prime};
        ++tally_.profiles[k];
        profile_.reset();
        return;
      } catch (ResetSignal& sig) {
        profile_.reset();
        if (sig.stage == StageTag::C0) throw;
        if (sig.u0 != ones_) throw InternalError("reset raised for a different u0");
        aborted_ += tally_.nodes - snapshot.nodes;
        tally_ = snapshot;
        const ResetEvent ev = sel_.apply(sig);
        ++resets_[static_cast<std::size_t>(ev.stage)];
        events_.push_back(ev);
        if (obs_) obs_->on_restart(key_, depth);
      }
    }
  }

  struct Descend {
    Run& r;
    VarMask old_ones, old_left;
    std::uint64_t old_key;
    Descend(Run& run, int label, VarMask left) : r(run), old_ones(run.ones_), old_left(run.left_), old_key(run.key_) {
      r.ones_ |= var_bit(label);
      r.labels_.push_back(label);
      r.left_ = left;
      r.key_ = child_key(old_key, label);
    }
    ~Descend() {
      r.ones_ = old_ones;
      r.left_ = old_left;
      r.key_ = old_key;
      r.labels_.pop_back();
    }
  };

  struct MarkGuard {
    Run& r;
    VarMask m;
    MarkGuard(Run& run, VarMask mask) : r(run), m(mask) {
      for (VarMask x = m; x; x &= x - 1) ++r.marks_[static_cast<std::size_t>(lowest_var(x))];
    }
    ~MarkGuard() {
      for (VarMask x = m; x; x &= x - 1) --r.marks_[static_cast<std::size_t>(lowest_var(x))];
    }
  };

  struct HeavyGuard {
    std::vector<VarMask>& v;
    bool pushed;
    HeavyGuard(std::vector<VarMask>& vec, bool push, VarMask c) : v(vec), pushed(push) {
      if (pushed) v.push_back(c);
    }
    ~HeavyGuard() {
      if (pushed) v.pop_back();
    }
  };

  VarMask pick(int depth) {
    std::size_t i = sel_.arbitrary_pick(ones_);
    if (i == kernels::npos)
      throw PreconditionViolated("a weight-" + std::to_string(depth) + " transversal exists below the target " +
                                 std::to_string(t_));
    return idx_.pick.pos[i];
  }

  void expand(int depth) {
    Stage stage = Stage::arbitrary;
    VarMask clause = 0;
    int heavy_bound = -1;
    const int t0 = sel_.t0();
    if (depth < t0) {
      stage = Stage::disjoint;
      clause = sel_.c0_levels()[static_cast<std::size_t>(depth)];
    } else if (sel_.route() == Route::arbitrary) {
      clause = pick(depth);
    } else {
      const StageProfile& pr = *profile_;
      const int k = depth - t0;
      if (k < pr.t1) {
        stage = Stage::kappa1;
        clause = pr.c1[static_cast<std::size_t>(k)];
      } else {
        if (k == pr.t1) {
          k2_ = sel_.plan_kappa2(pr, ones_);
          ++tally_.ell[k2_.ell];
          if (opt_.debug_checks && !sel_.f2_subset_holds(pr, ones_, marks_))
            ++tally_.violations[static_cast<std::size_t>(Violation::f2_subset)];
        }
        const int j = k - pr.t1;
        if (j < k2_.ell) {
          stage = Stage::kappa2;
          clause = k2_.cr_u[static_cast<std::size_t>(j)];
        } else {
          clause = pick(depth);
          heavy_bound = pr.m_r_prime + pr.m_b - k2_.ell;
        }
      }
    }
    if (clause & ones_) throw InternalError("selected clause is not live");

    const kernels::NegativeScan ns = kernels::scan_negative(idx_.negative_only, ones_);
    if (ns.falsified) throw InternalError("expanding a falsified node");

    std::array<ChildInfo, 3> buf{};
    std::size_t k = 0;
    for (VarMask x = clause; x; x &= x - 1) {
      if (k == 3) throw InternalError("clause wider than 3");
      const int v = lowest_var(x);
      buf[k++] = {v, marks_[static_cast<std::size_t>(v)], contains(ns.negative_units, v)};
    }
    std::span<const ChildInfo> kids(buf.data(), k);

    bool heavy = false;
    if (depth >= t0 && k == 3) sel_.check_meets_disjoint_stage(profile_ ? &*profile_ : nullptr, clause, depth);
    if (stage == Stage::kappa2) {
      ++tally_.kappa2;
      if (effective_width(kids) > 2 || !mass_at_most(kids, 3, 2))
        ++tally_.violations[static_cast<std::size_t>(Violation::kappa2_shape)];
      if (effective_width(kids) < 2) ++tally_.kappa2_extra;
    }
    if (heavy_bound >= 0) {
      if (marked_count(kids) == 1 && !mass_at_most(kids, 9, 4) && !sel_.check_one_marked(*profile_, clause, kids))
        ++tally_.violations[static_cast<std::size_t>(Violation::one_marked_mass)];
      heavy = is_heavy(kids);
    }
    HeavyGuard hg(heavy_path_, heavy, clause);
    if (heavy) {
      ++tally_.heavy;
      if (sel_.classify_heavy(*profile_, clause) == HeavyClass::other) ++tally_.heavy_other;
      if (static_cast<int>(heavy_path_.size()) > heavy_bound &&
          !sel_.resolve_heavy_overflow(*profile_, k2_, heavy_path_))
        ++tally_.violations[static_cast<std::size_t>(Violation::heavy_budget)];
    }

    if (obs_) obs_->on_expand({key_, depth, ones_, stage, heavy_bound}, clause, kids);

    std::array<int, 3> order{0, 1, 2};
    std::span<int> ord(order.data(), k);
    if (opt_.prune) ord_.order(key_, ord);

    MarkGuard mg(*this, clause);
    const std::uint64_t parent = key_;
    VarMask left_here = 0;
    for (int p : ord) {
      const ChildInfo& c = kids[static_cast<std::size_t>(p)];
      EdgeFate fate = EdgeFate::traversed;
      if (opt_.prune && superfluous(c.label, left_)) {
        fate = EdgeFate::superfluous;
        ++tally_.superfluous;
      } else if (c.falsifying) {
        fate = EdgeFate::falsifying;
        ++tally_.falsified;
      }
      if (obs_) obs_->on_edge(parent, c.label, fate);
      if (fate == EdgeFate::traversed) {
        Descend d(*this, c.label, left_ | left_here);
        visit(depth + 1, c.label);
      }
      left_here |= var_bit(c.label);
    }
  }
};

}  // namespace

Engine::Engine(const Formula& closed, int t)
    : idx_(std::make_shared<const ClauseIndex>(closed)), selector_(idx_, t), t_(t) {
  if (t < 0 || t > idx_->n) throw RefusedParameters("target weight outside 0..n");
}

SearchStats Engine::run(const OrderingSource& ord, const SolutionSink& sink, SearchObserver* obs,
                        const SearchOptions& opt) {
  Run r(*idx_, selector_, t_, ord, sink, obs, opt);
  return r.go();
}

SearchStats enumerate(const Formula& closed, int t, const OrderingSource& ord, const SolutionSink& sink,
                      const SearchOptions& opt) {
  Engine e(closed, t);
  return e.run(ord, sink, nullptr, opt);
}

std::pair<std::uint64_t, SearchStats> count(const Formula& closed, int t, const OrderingSource& ord,
                                            const SearchOptions& opt) {
  Engine e(closed, t);
  SearchStats s = e.run(ord, nullptr, nullptr, opt);
  return {s.solutions_emitted, s};
}

namespace {

class Materializer : public SearchObserver {
 public:
  Materializer(const Formula& f, int t, std::size_t max_nodes) : tree(f, t), max_nodes_(max_nodes) {}

  void on_enter(std::uint64_t key, int depth, int label) override {
    if (depth == 0) {
      tree.add_root(key);
      stack_.assign(1, 0);
      return;
    }
    const int parent = stack_.at(static_cast<std::size_t>(depth - 1));
    int id = -1;
    for (int c : tree.node(parent).children)
      if (tree.node(c).label == label) id = c;
    if (id < 0 || tree.node(id).key != key) throw InternalError("materializer lost track of the search path");
    stack_.resize(static_cast<std::size_t>(depth));
    stack_.push_back(id);
  }

  void on_expand(const NodeView& v, VarMask clause, std::span<const ChildInfo> kids) override {
    const int id = stack_.at(static_cast<std::size_t>(v.depth));
    std::vector<ChildInfo> got = expand(tree, id, monotone_clause(clause));
    if (!std::equal(got.begin(), got.end(), kids.begin(), kids.end()))
      throw InternalError("engine and tree disagree on markings or falsifying edges");
    tree.node(id).stage = v.stage;
    tree.node(id).heavy_bound = v.heavy_bound;
    if (tree.size() > max_nodes_) throw BudgetExceeded("materialized tree exceeds the node budget");
  }

  void on_leaf(std::uint64_t, int depth, bool) override {
    tree.node(stack_.at(static_cast<std::size_t>(depth))).leaf_kind = LeafKind::viable;
  }

  void on_restart(std::uint64_t, int depth) override {
    if (depth == 0) {
      tree.truncate(0);
      return;
    }
    TreeNode& u = tree.node(stack_.at(static_cast<std::size_t>(depth)));
    if (!u.children.empty()) tree.truncate(static_cast<std::size_t>(u.children.front()));
    u.clause.reset();
  }

  TransversalTree tree;

 private:
  std::size_t max_nodes_;
  std::vector<int> stack_;
};

}  // namespace

TransversalTree materialize(Engine& engine, std::size_t max_nodes) {
  Materializer m(engine.index().formula, engine.target(), max_nodes);
  SearchOptions opt;
  opt.prune = false;
  opt.debug_checks = true;
  engine.run(OrderingSource{}, nullptr, &m, opt);
  m.tree.t0 = engine.selector().t0();
  return std::move(m.tree);
}

TransversalTree materialize(const Formula& closed, int t, std::size_t max_nodes) {
  Engine e(closed, t);
  return materialize(e, max_nodes);
}

namespace {

std::uint64_t factorial(std::size_t k) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

// The j-th permutation of 0..k-1 in lexicographic order.
std::array<std::uint8_t, 3> nth_permutation(std::size_t k, std::uint64_t j) {
  std::vector<std::uint8_t> pool;
  for (std::size_t i = 0; i < k; ++i) pool.push_back(static_cast<std::uint8_t>(i));
  std::array<std::uint8_t, 3> out{0, 1, 2};
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t f = factorial(k - 1 - i);
    const std::size_t q = static_cast<std::size_t>(j / f);
    j %= f;
    out[i] = pool[q];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
  }
  return out;
}

class SurvivalCounter : public SearchObserver {
 public:
  void on_enter(std::uint64_t key, int, int) override { ++reached[key]; }
  void on_edge(std::uint64_t parent, int label, EdgeFate fate) override {
    if (fate == EdgeFate::traversed) ++traversed[{parent, label}];
  }
  void on_restart(std::uint64_t, int) override { throw InternalError("reset during exhaustive orderings"); }

  std::unordered_map<std::uint64_t, std::uint64_t> reached;
  std::map<std::pair<std::uint64_t, int>, std::uint64_t> traversed;
};

}  // namespace

std::uint64_t ordering_count(const TransversalTree& tree) {
  std::uint64_t total = 1;
  for (const TreeNode& u : tree.nodes()) {
    if (u.is_leaf()) continue;
    const std::uint64_t f = factorial(u.children.size());
    if (total > std::numeric_limits<std::uint64_t>::max() / f) return std::numeric_limits<std::uint64_t>::max();
    total *= f;
  }
  return total;
}

ExhaustiveReport enumerate_all_orderings(const Formula& closed, int t, std::uint64_t budget) {
  Engine engine(closed, t);
  TransversalTree full = materialize(engine);
  const std::uint64_t total = ordering_count(full);
  if (total > budget)
    throw BudgetExceeded("joint orderings (" +
                         (total == std::numeric_limits<std::uint64_t>::max() ? std::string("overflow")
                                                                             : std::to_string(total)) +
                         ") exceed the budget of " + std::to_string(budget));

  struct Slot {
    std::uint64_t key;
    std::size_t k;
    std::uint64_t radix;
  };
  std::vector<Slot> slots;
  for (const TreeNode& u : full.nodes())
    if (u.children.size() > 1) slots.push_back({u.key, u.children.size(), factorial(u.children.size())});

  auto table = std::make_shared<OrderingSource::Table>();
  for (const Slot& s : slots) (*table)[s.key] = nth_permutation(s.k, 0);
  const OrderingSource ord = OrderingSource::table(table, OrderingSource::Kind::exhaustive);

  ExhaustiveReport rep;
  rep.psi_markings = psi_by_markings(full, 0);
  SurvivalCounter counter;
  std::vector<std::uint64_t> digit(slots.size(), 0);
  mpz_class leaf_sum = 0;
  std::unordered_set<VarMask> first_set;
  bool first = true;
  for (std::uint64_t run = 0; run < total; ++run) {
    std::unordered_set<VarMask> sols;
    SearchStats s = engine.run(ord, [&](const Assignment& a) { sols.insert(a.mask()); }, &counter);
    if (first) {
      first_set = sols;
      rep.solutions = sols.size();
      rep.min_leaves = rep.max_leaves = s.leaves_visited;
      first = false;
    } else if (sols != first_set) {
      rep.solutions_consistent = false;
    }
    rep.min_leaves = std::min(rep.min_leaves, s.leaves_visited);
    rep.max_leaves = std::max(rep.max_leaves, s.leaves_visited);
    leaf_sum += mpz_class(std::to_string(s.leaves_visited));
    ++rep.orderings;

    for (std::size_t i = 0; i < slots.size(); ++i) {  // odometer step
      if (++digit[i] < slots[i].radix) {
        (*table)[slots[i].key] = nth_permutation(slots[i].k, digit[i]);
        break;
      }
      digit[i] = 0;
      (*table)[slots[i].key] = nth_permutation(slots[i].k, 0);
    }
  }
  rep.mean_leaves = mpq_class(leaf_sum, mpz_class(std::to_string(rep.orderings)));
  rep.mean_leaves.canonicalize();

  for (const TreeNode& v : full.nodes()) {
    if (v.parent < 0 || v.falsifying) continue;
    const TreeNode& u = full.node(v.parent);
    EdgeSurvival e;
    e.parent_key = u.key;
    e.label = v.label;
    e.marks = static_cast<int>(v.markers.size());
    if (auto it = counter.reached.find(u.key); it != counter.reached.end()) e.parent_reached = it->second;
    if (auto it = counter.traversed.find({u.key, v.label}); it != counter.traversed.end()) e.traversed = it->second;
    rep.edges.push_back(e);
  }
  return rep;
}

}  // namespace naeenum
