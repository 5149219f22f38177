#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace naeenum {

/// Set of variables 1..64 packed into a word; variable v lives at bit v-1.
using VarMask = std::uint64_t;

inline constexpr int kMaxEngineVars = 64;

constexpr VarMask var_bit(int var) { return VarMask{1} << (var - 1); }
constexpr int mask_size(VarMask m) { return std::popcount(m); }
constexpr bool contains(VarMask m, int var) { return (m & var_bit(var)) != 0; }
constexpr int lowest_var(VarMask m) { return std::countr_zero(m) + 1; }

/// Variables of `m` in increasing order.
inline std::vector<int> mask_vars(VarMask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(mask_size(m)));
  while (m) {
    out.push_back(lowest_var(m));
    m &= m - 1;
  }
  return out;
}

template <typename Range>
VarMask mask_of(const Range& vars) {
  VarMask m = 0;
  for (int v : vars) m |= var_bit(v);
  return m;
}

}  // namespace naeenum
