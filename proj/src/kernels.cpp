#include "naeenum/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "naeenum/cnf.hpp"
#include "naeenum/errors.hpp"

namespace naeenum::kernels {

ClauseMasks ClauseMasks::from_formula(const Formula& f) {
  require_engine_input(f);
  ClauseMasks m;
  m.pos.reserve(f.size());
  m.neg.reserve(f.size());
  for (const Clause& c : f.clauses()) {
    m.pos.push_back(c.positive_mask());
    m.neg.push_back(c.negative_mask());
  }
  return m;
}

namespace scalar {

NegativeScan scan_negative(std::span<const VarMask> neg, VarMask ones) {
  NegativeScan out;
  for (VarMask n : neg) {
    VarMask rest = n & ~ones;
    if (rest == 0) {
      out.falsified = true;
    } else if ((rest & (rest - 1)) == 0) {
      out.negative_units |= rest;
    }
  }
  return out;
}

std::size_t first_positive(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask ones) {
  for (std::size_t i = 0; i < pos.size(); ++i)
    if (((pos[i] & ones) | (neg[i] & ~ones)) == 0) return i;
  return npos;
}

bool all_satisfied(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask assignment) {
  for (std::size_t i = 0; i < pos.size(); ++i)
    if (((pos[i] & assignment) | (neg[i] & ~assignment)) == 0) return false;
  return true;
}

void eval_batch(std::span<const VarMask> pos, std::span<const VarMask> neg, std::span<const VarMask> assignments,
                std::span<std::uint8_t> out) {
  for (std::size_t j = 0; j < assignments.size(); ++j) out[j] = all_satisfied(pos, neg, assignments[j]) ? 1 : 0;
}

}  // namespace scalar

#ifndef NAEENUM_HAVE_AVX2
namespace avx2 {
bool compiled() { return false; }
NegativeScan scan_negative(std::span<const VarMask> neg, VarMask ones) { return scalar::scan_negative(neg, ones); }
std::size_t first_positive(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask ones) {
  return scalar::first_positive(pos, neg, ones);
}
bool all_satisfied(std::span<const VarMask> pos, std::span<const VarMask> neg, VarMask a) {
  return scalar::all_satisfied(pos, neg, a);
}
void eval_batch(std::span<const VarMask> pos, std::span<const VarMask> neg, std::span<const VarMask> a,
                std::span<std::uint8_t> out) {
  scalar::eval_batch(pos, neg, a, out);
}
}  // namespace avx2
#endif

namespace {

constexpr Table kScalarTable{scalar::scan_negative, scalar::first_positive, scalar::all_satisfied,
                             scalar::eval_batch};
constexpr Table kAvx2Table{avx2::scan_negative, avx2::first_positive, avx2::all_satisfied, avx2::eval_batch};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("NAEENUM_ISA")) {
    if (std::string(env) == "scalar") return Isa::scalar;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
  return avx2::compiled() && cpu_has_avx2();
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) throw Error(std::string("instruction set unavailable: ") + std::string(isa_name(isa)));
  current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const Table& table() { return active_isa() == Isa::avx2 ? kAvx2Table : kScalarTable; }

}  // namespace naeenum::kernels
