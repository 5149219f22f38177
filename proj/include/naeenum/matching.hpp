#pragma once

// Pseudomaximum collections of pairwise variable-disjoint clauses.
//
// A collection starts as a greedy maximal pick in canonical order. Whenever a
// proof obligation that assumes maximum size fails, the failing check hands
// over a strictly larger disjoint family and the collection is reset to it.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "naeenum/cnf.hpp"

namespace naeenum {

enum class StageTag { C0, C1, CR };

std::string_view stage_name(StageTag tag);

struct ResetEvent {
  StageTag stage = StageTag::C0;
  std::size_t old_size = 0;
  std::size_t new_size = 0;
  std::vector<Clause> witness;  // the clauses that were added
};

class DisjointCollection {
 public:
  explicit DisjointCollection(StageTag tag = StageTag::C0, std::size_t reset_limit = static_cast<std::size_t>(-1))
      : tag_(tag), reset_limit_(reset_limit) {}

  std::span<const Clause> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  StageTag tag() const { return tag_; }
  std::size_t reset_count() const { return reset_count_; }

  /// True if `c` shares no variable with any member.
  bool disjoint_from(const Clause& c) const;
  bool contains(const Clause& c) const;
  /// Appends without a reset; `c` must be disjoint from all members.
  void add(const Clause& c);

  /// Replace `removed` (a subset of the members) by `added` if that grows the
  /// collection. Throws InternalError when the replacement would not be
  /// disjoint or when the reset budget is exhausted.
  std::optional<ResetEvent> attempt_reset(std::span<const Clause> removed, std::span<const Clause> added);

 private:
  StageTag tag_;
  std::size_t reset_limit_;
  std::size_t reset_count_ = 0;
  std::vector<Clause> members_;
  std::vector<int> used_vars_;  // sorted

  void rebuild_used();
};

/// Sort clauses by their sorted variable lists (then literals), deduplicated.
void canonical_sort(std::vector<Clause>& clauses);

/// Greedy maximal disjoint family, scanning `candidates` in canonical order.
DisjointCollection greedy_maximal(std::span<const Clause> candidates, StageTag tag = StageTag::C0,
                                  std::size_t reset_limit = static_cast<std::size_t>(-1));

/// Add every candidate (canonical order) still disjoint from the collection.
void extend_greedily(DisjointCollection& coll, std::span<const Clause> candidates);

/// Pairwise variable-disjointness of a family.
bool pairwise_disjoint(std::span<const Clause> clauses);

}  // namespace naeenum
