#include "naeenum/matching.hpp"

#include <algorithm>

#include "naeenum/errors.hpp"

namespace naeenum {

std::string_view stage_name(StageTag tag) {
  switch (tag) {
    case StageTag::C0: return "C0";
    case StageTag::C1: return "C1";
    case StageTag::CR: return "CR";
  }
  return "?";
}

namespace {

bool shares_var(const Clause& a, const Clause& b) {
  for (Literal x : a.literals())
    for (Literal y : b.literals())
      if (x.var == y.var) return true;
  return false;
}

bool canonical_less(const Clause& a, const Clause& b) {
  auto av = a.vars(), bv = b.vars();
  if (av != bv) return av < bv;
  return a < b;
}

}  // namespace

void canonical_sort(std::vector<Clause>& clauses) {
  std::sort(clauses.begin(), clauses.end(), canonical_less);
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
}

bool pairwise_disjoint(std::span<const Clause> clauses) {
  for (std::size_t i = 0; i < clauses.size(); ++i)
    for (std::size_t j = i + 1; j < clauses.size(); ++j)
      if (shares_var(clauses[i], clauses[j])) return false;
  return true;
}

bool DisjointCollection::disjoint_from(const Clause& c) const {
  for (Literal l : c.literals())
    if (std::binary_search(used_vars_.begin(), used_vars_.end(), l.var)) return false;
  return true;
}

bool DisjointCollection::contains(const Clause& c) const {
  return std::find(members_.begin(), members_.end(), c) != members_.end();
}

void DisjointCollection::add(const Clause& c) {
  if (!disjoint_from(c)) throw InternalError("clause " + c.to_string() + " overlaps the collection");
  members_.push_back(c);
  for (Literal l : c.literals()) used_vars_.insert(std::lower_bound(used_vars_.begin(), used_vars_.end(), l.var), l.var);
}

void DisjointCollection::rebuild_used() {
  used_vars_.clear();
  for (const Clause& c : members_)
    for (Literal l : c.literals()) used_vars_.push_back(l.var);
  std::sort(used_vars_.begin(), used_vars_.end());
}

std::optional<ResetEvent> DisjointCollection::attempt_reset(std::span<const Clause> removed,
                                                            std::span<const Clause> added) {
  if (added.size() <= removed.size()) return std::nullopt;
  std::vector<Clause> kept;
  for (const Clause& m : members_)
    if (std::find(removed.begin(), removed.end(), m) == removed.end()) kept.push_back(m);
  if (kept.size() + removed.size() != members_.size())
    throw InternalError("reset removes clauses that are not members of " + std::string(stage_name(tag_)));
  std::vector<Clause> next = kept;
  next.insert(next.end(), added.begin(), added.end());
  if (!pairwise_disjoint(next))
    throw InternalError("reset witness for " + std::string(stage_name(tag_)) + " is not disjoint");
  if (reset_count_ >= reset_limit_)
    throw InternalError("reset limit exceeded for " + std::string(stage_name(tag_)));

  ResetEvent ev{tag_, members_.size(), next.size(), std::vector<Clause>(added.begin(), added.end())};
  canonical_sort(next);
  members_ = std::move(next);
  rebuild_used();
  ++reset_count_;
  return ev;
}

DisjointCollection greedy_maximal(std::span<const Clause> candidates, StageTag tag, std::size_t reset_limit) {
  DisjointCollection coll(tag, reset_limit);
  extend_greedily(coll, candidates);
  return coll;
}

void extend_greedily(DisjointCollection& coll, std::span<const Clause> candidates) {
  std::vector<Clause> order(candidates.begin(), candidates.end());
  canonical_sort(order);
  for (const Clause& c : order)
    if (coll.disjoint_from(c)) coll.add(c);
}

}  // namespace naeenum
