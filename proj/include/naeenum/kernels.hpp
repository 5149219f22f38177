#pragma once

// Clause-scan kernels over structure-of-arrays clause masks.
//
// Every kernel has a scalar reference in `kernels::scalar` and, on x86-64, an
// AVX2 variant in `kernels::avx2`. The unqualified entry points dispatch
// through a table picked once at startup from CPUID; NAEENUM_ISA=scalar in the
// environment (or force_isa) pins the scalar path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "naeenum/varmask.hpp"

namespace naeenum {
class Formula;
}

namespace naeenum::kernels {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Status of the all-negative clauses under a partial assignment of ones.
struct NegativeScan {
  bool falsified = false;     // some clause has every literal over `ones`
  VarMask negative_units = 0; // x such that the clause simplifies to (not x)
  bool operator==(const NegativeScan&) const = default;
};

/// Clause masks split by sign, one entry per clause.
struct ClauseMasks {
  std::vector<VarMask> pos;
  std::vector<VarMask> neg;

  std::size_t size() const { return pos.size(); }
  static ClauseMasks from_formula(const Formula& f);
};

enum class Isa { scalar, avx2 };

struct Table {
  NegativeScan (*scan_negative)(std::span<const VarMask> neg, VarMask ones);
  std::size_t (*first_positive)(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask ones);
  bool (*all_satisfied)(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask assignment);
  void (*eval_batch)(std::span<const VarMask> pos, std::span<const VarMask> neg,
                     std::span<const VarMask> assignments, std::span<std::uint8_t> out);
};

namespace scalar {
NegativeScan scan_negative(std::span<const VarMask> neg, VarMask ones);
/// First i with pos[i] disjoint from `ones` and neg[i] inside `ones`.
std::size_t first_positive(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask ones);
bool all_satisfied(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask assignment);
void eval_batch(std::span<const VarMask> pos, std::span<const VarMask> neg, std::span<const VarMask> assignments,
                std::span<std::uint8_t> out);
}  // namespace scalar

namespace avx2 {
bool compiled();
NegativeScan scan_negative(std::span<const VarMask> neg, VarMask ones);
std::size_t first_positive(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask ones);
bool all_satisfied(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask assignment);
void eval_batch(std::span<const VarMask> pos, std::span<const VarMask> neg, std::span<const VarMask> assignments,
                std::span<std::uint8_t> out);
}  // namespace avx2

bool isa_available(Isa isa);
Isa active_isa();
/// Pin the dispatch table; throws if `isa` is unavailable on this machine.
void force_isa(Isa isa);
std::string_view isa_name(Isa isa);
const Table& table();

inline NegativeScan scan_negative(std::span<const VarMask> neg, VarMask ones) {
  return table().scan_negative(neg, ones);
}
inline std::size_t first_positive(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask ones) {
  return table().first_positive(pos, neg, ones);
}
inline bool all_satisfied(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask assignment) {
  return table().all_satisfied(pos, neg, assignment);
}
inline void eval_batch(std::span<const VarMask> pos, std::span<const VarMask> neg,
                       std::span<const VarMask> assignments, std::span<std::uint8_t> out) {
  table().eval_batch(pos, neg, assignments, out);
}

}  // namespace naeenum::kernels
