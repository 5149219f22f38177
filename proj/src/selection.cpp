#include "naeenum/selection.hpp"

#include <algorithm>

#include "naeenum/errors.hpp"

namespace naeenum {

namespace {

bool var_lex_less(VarMask a, VarMask b) {
  if (a == b) return false;
  return mask_vars(a) < mask_vars(b);
}

std::vector<Clause> to_clauses(std::span<const VarMask> masks) {
  std::vector<Clause> out;
  out.reserve(masks.size());
  for (VarMask m : masks) out.push_back(monotone_clause(m));
  return out;
}

std::vector<VarMask> to_masks(std::span<const Clause> clauses) {
  std::vector<VarMask> out;
  out.reserve(clauses.size());
  for (const Clause& c : clauses) out.push_back(c.positive_mask());
  std::sort(out.begin(), out.end(), var_lex_less);
  return out;
}

// Greedy disjoint pick over masks in the given order.
std::vector<VarMask> greedy_masks(std::span<const VarMask> order) {
  std::vector<VarMask> out;
  VarMask used = 0;
  for (VarMask m : order)
    if ((m & used) == 0) {
      out.push_back(m);
      used |= m;
    }
  return out;
}

bool masks_disjoint(std::span<const VarMask> ms) {
  VarMask used = 0;
  for (VarMask m : ms) {
    if (m & used) return false;
    used |= m;
  }
  return true;
}

}  // namespace

Clause monotone_clause(VarMask m) {
  std::vector<Literal> lits;
  for (int v : mask_vars(m)) lits.push_back(Literal::positive(v));
  return Clause(std::move(lits));
}

std::string_view route_name(Route r) { return r == Route::arbitrary ? "arbitrary" : "controlled"; }

std::string_view violation_name(Violation v) {
  switch (v) {
    case Violation::heavy_budget: return "heavy_budget";
    case Violation::one_marked_mass: return "one_marked_mass";
    case Violation::kappa2_shape: return "kappa2_shape";
    case Violation::f2_subset: return "f2_subset";
    case Violation::count_: break;
  }
  return "?";
}

ClauseIndex::ClauseIndex(Formula closed) : formula(std::move(closed)) {
  require_engine_input(formula);
  if (!is_negation_closed(formula)) throw InputNotClosed("input formula is not closed under clause negation");
  n = formula.num_vars();
  all = kernels::ClauseMasks::from_formula(formula);
  for (const Clause& c : formula.clauses()) {
    if (c.empty()) continue;
    if (c.positive_mask() == 0) negative_only.push_back(c.negative_mask());
    else pick_clauses.push_back(c);
    if (c.monotone() && c.width() == 3) monotone3.push_back(c.positive_mask());
  }
  std::stable_sort(pick_clauses.begin(), pick_clauses.end(), [](const Clause& a, const Clause& b) {
    VarMask pa = a.positive_mask(), pb = b.positive_mask();
    if (mask_size(pa) != mask_size(pb)) return mask_size(pa) < mask_size(pb);
    if (pa != pb) return var_lex_less(pa, pb);
    return a < b;
  });
  for (const Clause& c : pick_clauses) {
    pick.pos.push_back(c.positive_mask());
    pick.neg.push_back(c.negative_mask());
  }
  std::sort(monotone3.begin(), monotone3.end(), var_lex_less);
}

std::vector<Clause> ClauseIndex::monotone3_clauses() const { return to_clauses(monotone3); }

Route branch_on_t0(int t0, int n) { return 4 * t0 >= n ? Route::arbitrary : Route::controlled; }

DisjointCollection disjoint_stage(const ClauseIndex& idx) {
  return greedy_maximal(idx.monotone3_clauses(), StageTag::C0, static_cast<std::size_t>(idx.n));
}

int StageProfile::index_of_var(int var) const {
  for (std::size_t i = 0; i < c0.size(); ++i)
    if (contains(c0[i], var)) return static_cast<int>(i);
  return -1;
}

Selector::Selector(std::shared_ptr<const ClauseIndex> idx, int t)
    : idx_(std::move(idx)), t_(t), c0_(disjoint_stage(*idx_)) {
  refresh_levels();
}

void Selector::refresh_levels() {
  c0_levels_ = to_masks(c0_.members());
  route_ = branch_on_t0(t0(), n());
}

StageProfile Selector::build_profile(std::span<const int> labels) const {
  StageProfile pr;
  pr.n = n();
  pr.t0 = t0();
  pr.c0.assign(c0_levels_.begin(), c0_levels_.end());
  if (labels.size() != pr.c0.size()) throw InternalError("profile requested away from the end of the disjoint stage");
  pr.p.assign(labels.begin(), labels.end());
  pr.u0 = mask_of(labels);
  for (std::size_t i = 0; i < pr.c0.size(); ++i) {
    if (!contains(pr.c0[i], pr.p[i])) throw InternalError("path label outside its disjoint-stage clause");
    pr.x.push_back(pr.c0[i] & ~var_bit(pr.p[i]));
    pr.x_all |= pr.x.back();
    pr.c0_vars |= pr.c0[i];
  }

  for (VarMask m : idx_->monotone3)
    if ((m & pr.u0) == 0 && mask_size(m & pr.x_all) == 1) pr.f1.push_back(m);

  // Two F1 clauses through both variables of one X_i with disjoint remainders
  // would let C0_i be traded for two clauses.
  for (std::size_t i = 0; i < pr.x.size(); ++i) {
    const int xv = lowest_var(pr.x[i]);
    const VarMask xb = var_bit(xv), xpb = pr.x[i] & ~xb;
    for (VarMask c : pr.f1) {
      if (!(c & xb)) continue;
      for (VarMask d : pr.f1) {
        if (!(d & xpb)) continue;
        if (((c & ~xb) & (d & ~xpb)) == 0) {
          ResetSignal sig;
          sig.stage = StageTag::C0;
          sig.removed = {monotone_clause(pr.c0[i])};
          sig.added = {monotone_clause(c), monotone_clause(d)};
          sig.reason = "two disjoint single-marked clauses through one disjoint-stage clause";
          throw sig;
        }
      }
    }
  }

  if (auto it = c1_override_.find(pr.u0); it != c1_override_.end()) {
    pr.c1 = to_masks(it->second.members());
    for (VarMask m : pr.c1)
      if (!std::binary_search(pr.f1.begin(), pr.f1.end(), m, var_lex_less))
        throw InternalError("kappa1 override holds a clause outside F1");
  } else {
    pr.c1 = greedy_masks(pr.f1);
  }

  pr.a.assign(pr.c0.size(), 0);
  pr.b.assign(pr.c0.size(), 0);
  pr.y.assign(pr.c0.size(), 0);
  std::vector<bool> in_v1(pr.c0.size(), false);
  VarMask c1_vars = 0;
  pr.u_star = pr.u0;
  for (VarMask c : pr.c1) {
    const VarMask xm = c & pr.x_all;
    const int xv = lowest_var(xm);
    const int i = pr.index_of_var(xv);
    if (i < 0 || in_v1[static_cast<std::size_t>(i)]) throw InternalError("kappa1 clauses meet one X_i twice");
    in_v1[static_cast<std::size_t>(i)] = true;
    pr.c1_owner.push_back(i);
    pr.a[static_cast<std::size_t>(i)] = xv;
    pr.b[static_cast<std::size_t>(i)] = lowest_var(pr.x[static_cast<std::size_t>(i)] & ~xm);
    pr.y[static_cast<std::size_t>(i)] = c & ~xm;
    pr.u_star |= xm;
    c1_vars |= c;
  }
  for (std::size_t i = 0; i < pr.c0.size(); ++i) (in_v1[i] ? pr.v1 : pr.vb).push_back(static_cast<int>(i));
  pr.t1 = static_cast<int>(pr.c1.size());
  pr.m_b = pr.t0 - pr.t1;

  // F2(u*) and its classification.
  const VarMask shoot = pr.c0_vars | c1_vars;
  enum Kind { kB, kXB, kY };
  auto kind_of = [&](int v, int& owner) -> Kind {
    owner = pr.index_of_var(v);
    if (owner >= 0) {
      const auto o = static_cast<std::size_t>(owner);
      if (in_v1[o]) {
        if (pr.b[o] == v) return kB;
        throw InternalError("kappa1 path variable in a live clause");
      }
      return kXB;
    }
    for (std::size_t i = 0; i < pr.y.size(); ++i)
      if (contains(pr.y[i], v)) {
        owner = static_cast<int>(i);
        return kY;
      }
    throw InternalError("marked variable outside the disjoint and kappa1 stages");
  };
  auto c1_clause_of = [&](int i) {
    const auto o = static_cast<std::size_t>(i);
    return monotone_clause(pr.y[o] | var_bit(pr.a[o]));
  };

  for (VarMask m : idx_->monotone3) {
    if ((m & pr.u_star) != 0 || mask_size(m & shoot) != 2) continue;
    const VarMask s = m & shoot;
    int o1 = -1, o2 = -1;
    Kind k1 = kind_of(lowest_var(s), o1);
    Kind k2 = kind_of(lowest_var(s & (s - 1)), o2);
    if (k1 > k2) {
      std::swap(k1, k2);
      std::swap(o1, o2);
    }
    ResetSignal sig;
    sig.stage = StageTag::C0;
    if (k1 == kB && k2 == kB) {
      sig.removed = {monotone_clause(pr.c0[static_cast<std::size_t>(o1)]),
                     monotone_clause(pr.c0[static_cast<std::size_t>(o2)])};
      sig.added = {c1_clause_of(o1), c1_clause_of(o2), monotone_clause(m)};
      sig.reason = "live clause through two unused disjoint-stage variables of kappa1 indices";
      throw sig;
    }
    if (k1 == kB && k2 == kY) {
      if (o1 == o2) {
        pr.f2r.push_back(m);
        continue;
      }
      sig.removed = {monotone_clause(pr.c0[static_cast<std::size_t>(o1)])};
      sig.added = {c1_clause_of(o1), monotone_clause(m)};
      sig.reason = "live clause through b_i and a kappa1 variable of another index";
      throw sig;
    }
    if (k1 == kB && k2 == kXB) {
      pr.f2r.push_back(m);
      continue;
    }
    if (k1 == kY && k2 == kY) {
      sig.added = {monotone_clause(m)};
      sig.reason = "monotone clause disjoint from the disjoint stage";
      throw sig;
    }
    pr.f2b.push_back(m);  // X_B-X_B or X_B-Y
  }

  {
    std::vector<VarMask> s = greedy_masks(pr.f2b);
    if (static_cast<int>(s.size()) > pr.m_b) {
      ResetSignal sig;
      sig.stage = StageTag::C0;
      for (int j : pr.vb) sig.removed.push_back(monotone_clause(pr.c0[static_cast<std::size_t>(j)]));
      sig.added = to_clauses(s);
      sig.reason = "more than m_B disjoint clauses in F2B";
      throw sig;
    }
  }

  std::sort(pr.f2r.begin(), pr.f2r.end());
  std::sort(pr.f2b.begin(), pr.f2b.end());
  std::vector<VarMask> f2r_canon = pr.f2r;
  std::sort(f2r_canon.begin(), f2r_canon.end(), var_lex_less);

  for (int i : pr.v1) {
    const VarMask bb = var_bit(pr.b[static_cast<std::size_t>(i)]);
    if (std::any_of(pr.f2r.begin(), pr.f2r.end(), [bb](VarMask m) { return (m & bb) != 0; })) pr.vr.push_back(i);
  }
  pr.m_r = static_cast<int>(pr.vr.size());
  pr.m_i = pr.t1 - pr.m_r;

  if (auto it = cr_override_.find(pr.u0); it != cr_override_.end()) {
    pr.cr = to_masks(it->second.members());
    for (VarMask m : pr.cr)
      if (!std::binary_search(pr.f2r.begin(), pr.f2r.end(), m)) throw InternalError("C'_R override outside F2R");
  } else {
    pr.cr = greedy_masks(f2r_canon);
  }
  for (int i : pr.v1) {
    const VarMask bb = var_bit(pr.b[static_cast<std::size_t>(i)]);
    if (std::any_of(pr.cr.begin(), pr.cr.end(), [bb](VarMask m) { return (m & bb) != 0; }))
      pr.vr_prime.push_back(i);
  }
  pr.m_r_prime = static_cast<int>(pr.cr.size());
  if (static_cast<int>(pr.vr_prime.size()) != pr.m_r_prime || pr.m_r_prime > pr.m_r)
    throw InternalError("C'_R clauses do not map one-to-one onto V'_R");
  return pr;
}

Kappa2Context Selector::plan_kappa2(const StageProfile& pr, VarMask ones) const {
  Kappa2Context k;
  k.u = ones;
  for (int i : pr.v1)
    if (contains(ones, pr.a[static_cast<std::size_t>(i)])) k.v_marked.push_back(i);
  for (VarMask c : pr.cr) {
    for (int i : k.v_marked)
      if (contains(c, pr.b[static_cast<std::size_t>(i)])) {
        if (c & ones) throw InternalError("C'_R(u) clause not live at the end of kappa1");
        k.cr_u.push_back(c);
        break;
      }
  }
  k.ell = static_cast<int>(k.cr_u.size());
  return k;
}

std::size_t Selector::arbitrary_pick(VarMask ones) const {
  return kernels::first_positive(idx_->pick.pos, idx_->pick.neg, ones);
}

void Selector::check_meets_disjoint_stage(const StageProfile* pr, VarMask clause, int depth) const {
  if (depth < t0()) return;
  VarMask target = pr ? pr->x_all : 0;
  if (!pr)
    for (VarMask c : c0_levels_) target |= c;
  if (clause & target) return;
  ResetSignal sig;
  sig.stage = StageTag::C0;
  sig.added = {monotone_clause(clause)};
  sig.reason = "unmarked width-3 clause past the disjoint stage";
  throw sig;
}

bool Selector::check_one_marked(const StageProfile& pr, VarMask clause, std::span<const ChildInfo> kids) const {
  if (!is_light_one_marked(kids)) return true;
  const bool in_f1 = (clause & pr.u0) == 0 && mask_size(clause & pr.x_all) == 1;
  const bool free_of_c1 = std::all_of(pr.c1.begin(), pr.c1.end(), [clause](VarMask c) { return (c & clause) == 0; });
  if (!in_f1 || !free_of_c1) return false;
  ResetSignal sig;
  sig.stage = StageTag::C1;
  sig.u0 = pr.u0;
  sig.added = {monotone_clause(clause)};
  sig.current = to_clauses(pr.c1);
  sig.candidates = to_clauses(pr.f1);
  sig.reason = "single-marked clause of mass 5/2 disjoint from kappa1";
  throw sig;
}

HeavyClass Selector::classify_heavy(const StageProfile& pr, VarMask clause) const {
  if (std::binary_search(pr.f2r.begin(), pr.f2r.end(), clause)) return HeavyClass::f2r;
  if (std::binary_search(pr.f2b.begin(), pr.f2b.end(), clause)) return HeavyClass::f2b;
  return HeavyClass::other;
}

bool Selector::resolve_heavy_overflow(const StageProfile& pr, const Kappa2Context& k2,
                                      std::span<const VarMask> heavy_path) const {
  std::vector<VarMask> r, bset;
  for (VarMask h : heavy_path) {
    HeavyClass c = classify_heavy(pr, h);
    if (c == HeavyClass::f2r) r.push_back(h);
    if (c == HeavyClass::f2b) bset.push_back(h);
  }
  if (static_cast<int>(r.size()) + k2.ell > pr.m_r_prime) {
    std::vector<VarMask> cand = r;
    cand.insert(cand.end(), k2.cr_u.begin(), k2.cr_u.end());
    if (masks_disjoint(cand)) {
      ResetSignal sig;
      sig.stage = StageTag::CR;
      sig.u0 = pr.u0;
      sig.removed = to_clauses(pr.cr);
      sig.added = to_clauses(cand);
      sig.current = to_clauses(pr.cr);
      sig.candidates = to_clauses(pr.f2r);
      sig.reason = "heavy F2R clauses with C'_R(u) exceed C'_R";
      throw sig;
    }
  }
  std::sort(bset.begin(), bset.end(), var_lex_less);
  std::vector<VarMask> s = greedy_masks(bset);
  if (static_cast<int>(s.size()) > pr.m_b) {
    ResetSignal sig;
    sig.stage = StageTag::C0;
    for (int j : pr.vb) sig.removed.push_back(monotone_clause(pr.c0[static_cast<std::size_t>(j)]));
    sig.added = to_clauses(s);
    sig.reason = "heavy F2B clauses exceed m_B";
    throw sig;
  }
  return false;
}

bool Selector::f2_subset_holds(const StageProfile& pr, VarMask ones, std::span<const std::uint8_t> mark_count) const {
  for (VarMask m : idx_->monotone3) {
    if (m & ones) continue;
    int singly = 0, marked = 0;
    for (int v : mask_vars(m)) {
      const auto c = mark_count[static_cast<std::size_t>(v)];
      if (c > 0) ++marked;
      if (c == 1) ++singly;
    }
    if (marked != 2 || singly != 2) continue;
    if (classify_heavy(pr, m) == HeavyClass::other) return false;
  }
  return true;
}

ResetEvent Selector::apply(const ResetSignal& sig) {
  auto grow = [&](DisjointCollection& coll, std::span<const Clause> candidates) {
    auto ev = coll.attempt_reset(sig.removed, sig.added);
    if (!ev) throw InternalError("reset witness does not enlarge " + std::string(stage_name(sig.stage)));
    extend_greedily(coll, candidates);
    ev->new_size = coll.size();
    return *ev;
  };
  switch (sig.stage) {
    case StageTag::C0: {
      ResetEvent ev = grow(c0_, idx_->monotone3_clauses());
      refresh_levels();
      c1_override_.clear();
      cr_override_.clear();
      return ev;
    }
    case StageTag::C1:
    case StageTag::CR: {
      auto& table = sig.stage == StageTag::C1 ? c1_override_ : cr_override_;
      auto it = table.find(sig.u0);
      if (it == table.end()) {
        DisjointCollection coll(sig.stage, static_cast<std::size_t>(n()));
        for (const Clause& c : sig.current) coll.add(c);
        it = table.emplace(sig.u0, std::move(coll)).first;
      }
      ResetEvent ev = grow(it->second, sig.candidates);
      ++(sig.stage == StageTag::C1 ? c1_resets_ : cr_resets_);
      return ev;
    }
  }
  throw InternalError("unknown reset stage");
}

std::size_t Selector::reset_count(StageTag tag) const {
  switch (tag) {
    case StageTag::C0: return c0_.reset_count();
    case StageTag::C1: return c1_resets_;
    case StageTag::CR: return cr_resets_;
  }
  return 0;
}

}  // namespace naeenum
