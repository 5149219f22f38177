// AVX2 variants of the clause-scan kernels. Each function carries its own
// target attribute so shared inline code in headers stays baseline x86-64;
// they are only reached through the dispatch table after a CPUID check.

#include <immintrin.h>

#include <bit>

#define NAEENUM_AVX2 __attribute__((target("avx2")))

#include "naeenum/kernels.hpp"

namespace naeenum::kernels::avx2 {

namespace {

NAEENUM_AVX2 inline __m256i load4(const VarMask* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }

NAEENUM_AVX2 inline int zero_lanes(__m256i v) {
  return _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(v, _mm256_setzero_si256())));
}

}  // namespace

bool compiled() { return true; }

NAEENUM_AVX2 NegativeScan scan_negative(std::span<const VarMask> neg, VarMask ones) {
  const __m256i vones = _mm256_set1_epi64x(static_cast<long long>(ones));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i zero = _mm256_setzero_si256();
  __m256i units = zero;
  int falsified = 0;
  std::size_t i = 0;
  for (; i + 4 <= neg.size(); i += 4) {
    __m256i rest = _mm256_andnot_si256(vones, load4(neg.data() + i));
    __m256i rest_zero = _mm256_cmpeq_epi64(rest, zero);
    __m256i single = _mm256_cmpeq_epi64(_mm256_and_si256(rest, _mm256_sub_epi64(rest, one)), zero);
    units = _mm256_or_si256(units, _mm256_and_si256(_mm256_andnot_si256(rest_zero, single), rest));
    falsified |= _mm256_movemask_pd(_mm256_castsi256_pd(rest_zero));
  }
  alignas(32) VarMask lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), units);
  NegativeScan out;
  out.falsified = falsified != 0;
  out.negative_units = lanes[0] | lanes[1] | lanes[2] | lanes[3];
  NegativeScan tail = scalar::scan_negative(neg.subspan(i), ones);
  out.falsified = out.falsified || tail.falsified;
  out.negative_units |= tail.negative_units;
  return out;
}

NAEENUM_AVX2 std::size_t first_positive(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask ones) {
  const __m256i vones = _mm256_set1_epi64x(static_cast<long long>(ones));
  std::size_t i = 0;
  for (; i + 4 <= pos.size(); i += 4) {
    __m256i hit = _mm256_and_si256(load4(pos.data() + i), vones);
    __m256i miss = _mm256_andnot_si256(vones, load4(neg.data() + i));
    int z = zero_lanes(_mm256_or_si256(hit, miss));
    if (z) return i + static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(z)));
  }
  std::size_t rest = scalar::first_positive(pos.subspan(i), neg.subspan(i), ones);
  return rest == npos ? npos : i + rest;
}

NAEENUM_AVX2 bool all_satisfied(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask assignment) {
  const __m256i va = _mm256_set1_epi64x(static_cast<long long>(assignment));
  std::size_t i = 0;
  for (; i + 4 <= pos.size(); i += 4) {
    __m256i sat = _mm256_or_si256(_mm256_and_si256(load4(pos.data() + i), va),
                                  _mm256_andnot_si256(va, load4(neg.data() + i)));
    if (zero_lanes(sat)) return false;
  }
  return scalar::all_satisfied(pos.subspan(i), neg.subspan(i), assignment);
}

NAEENUM_AVX2 void eval_batch(std::span<const VarMask> pos, std::span<const VarMask> neg, std::span<const VarMask> assignments,
                std::span<std::uint8_t> out) {
  const __m256i zero = _mm256_setzero_si256();
  std::size_t j = 0;
  for (; j + 4 <= assignments.size(); j += 4) {
    const __m256i va = load4(assignments.data() + j);
    __m256i alive = _mm256_set1_epi64x(-1);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const __m256i p = _mm256_set1_epi64x(static_cast<long long>(pos[i]));
      const __m256i n = _mm256_set1_epi64x(static_cast<long long>(neg[i]));
      __m256i sat = _mm256_or_si256(_mm256_and_si256(p, va), _mm256_andnot_si256(va, n));
      alive = _mm256_andnot_si256(_mm256_cmpeq_epi64(sat, zero), alive);
      if (_mm256_testz_si256(alive, alive)) break;
    }
    int m = _mm256_movemask_pd(_mm256_castsi256_pd(alive));
    for (int k = 0; k < 4; ++k) out[j + static_cast<std::size_t>(k)] = (m >> k) & 1;
  }
  scalar::eval_batch(pos, neg, assignments.subspan(j), out.subspan(j));
}

}  // namespace naeenum::kernels::avx2
