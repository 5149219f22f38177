#include <gtest/gtest.h>

#include <vector>

#include "naeenum/kernels.hpp"
#include "naeenum/rng.hpp"

using namespace naeenum;

namespace {

struct Masks {
  std::vector<VarMask> pos, neg;
};

// Width-<=3 clauses over n variables with disjoint sign masks.
Masks random_masks(SplitMix64& rng, std::size_t count, int n) {
  Masks m;
  for (std::size_t i = 0; i < count; ++i) {
    VarMask p = 0, q = 0;
    const int w = 1 + static_cast<int>(rng.below(3));
    for (int k = 0; k < w; ++k) {
      const VarMask b = var_bit(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
      if (rng.below(2)) p |= b; else q |= b;
    }
    q &= ~p;
    m.pos.push_back(p);
    m.neg.push_back(q);
  }
  return m;
}

VarMask random_ones(SplitMix64& rng, int n) {
  VarMask o = 0;
  for (int v = 1; v <= n; ++v)
    if (rng.below(4) == 0) o |= var_bit(v);
  return o;
}

}  // namespace

class KernelEquivalence : public ::testing::TestWithParam<int> {};

TEST_P(KernelEquivalence, Avx2MatchesScalar) {
  if (!kernels::isa_available(kernels::Isa::avx2)) GTEST_SKIP() << "AVX2 unavailable";
  const int n = GetParam();
  SplitMix64 rng(0xc0ffee + static_cast<std::uint64_t>(n));
  for (int round = 0; round < 200; ++round) {
    const std::size_t count = rng.below(70);  // covers tails shorter than a vector
    const Masks m = random_masks(rng, count, n);
    const VarMask ones = random_ones(rng, n);
    EXPECT_EQ(kernels::scalar::scan_negative(m.neg, ones), kernels::avx2::scan_negative(m.neg, ones));
    EXPECT_EQ(kernels::scalar::first_positive(m.pos, m.neg, ones), kernels::avx2::first_positive(m.pos, m.neg, ones));
    EXPECT_EQ(kernels::scalar::all_satisfied(m.pos, m.neg, ones), kernels::avx2::all_satisfied(m.pos, m.neg, ones));
    std::vector<VarMask> batch(rng.below(40));
    for (auto& a : batch) a = random_ones(rng, n);
    std::vector<std::uint8_t> s(batch.size()), v(batch.size());
    kernels::scalar::eval_batch(m.pos, m.neg, batch, s);
    kernels::avx2::eval_batch(m.pos, m.neg, batch, v);
    EXPECT_EQ(s, v);
  }
}

INSTANTIATE_TEST_SUITE_P(Widths, KernelEquivalence, ::testing::Values(3, 8, 20, 63, 64));

TEST(Kernels, ScalarReferenceSemantics) {
  // (not 1 or not 2), (not 3), (1 or not 2)
  const std::vector<VarMask> pos{0, 0, var_bit(1)};
  const std::vector<VarMask> neg{var_bit(1) | var_bit(2), var_bit(3), var_bit(2)};
  const auto scan = kernels::scalar::scan_negative(std::span(neg).first(2), var_bit(1));
  EXPECT_FALSE(scan.falsified);
  EXPECT_EQ(scan.negative_units, var_bit(2) | var_bit(3));
  EXPECT_TRUE(kernels::scalar::scan_negative(std::span(neg).first(2), var_bit(3)).falsified);
  EXPECT_EQ(kernels::scalar::first_positive(pos, neg, var_bit(2)), 2u);
  EXPECT_EQ(kernels::scalar::first_positive(pos, neg, 0), kernels::npos);
  EXPECT_TRUE(kernels::scalar::all_satisfied(pos, neg, var_bit(1)));
  EXPECT_FALSE(kernels::scalar::all_satisfied(pos, neg, var_bit(3)));
}

TEST(Kernels, ForcedScalarDispatch) {
  kernels::force_isa(kernels::Isa::scalar);
  EXPECT_EQ(kernels::active_isa(), kernels::Isa::scalar);
  if (kernels::isa_available(kernels::Isa::avx2)) {
    kernels::force_isa(kernels::Isa::avx2);
    EXPECT_EQ(kernels::active_isa(), kernels::Isa::avx2);
  }
}
