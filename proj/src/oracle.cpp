#include "naeenum/oracle.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "naeenum/errors.hpp"
#include "naeenum/kernels.hpp"

namespace naeenum {

namespace {

void require_oracle_size(const Formula& f) {
  if (f.num_vars() > kMaxOracleVars)
    throw RefusedParameters("oracle refuses n = " + std::to_string(f.num_vars()) + " (limit 24)");
}

struct Masks {
  std::vector<VarMask> pos, neg;
  explicit Masks(const Formula& f) {
    for (const Clause& c : f.clauses()) {
      pos.push_back(c.positive_mask());
      neg.push_back(c.negative_mask());
    }
  }
};

// Calls visit(mask, satisfied) for every assignment, in batches through the
// evaluation kernel.
template <typename Visit>
void scan_all(const Formula& f, Visit&& visit) {
  const Masks m(f);
  const std::uint64_t total = std::uint64_t{1} << f.num_vars();
  constexpr std::size_t kBatch = 1024;
  std::vector<VarMask> batch(kBatch);
  std::vector<std::uint8_t> out(kBatch);
  for (std::uint64_t base = 0; base < total; base += kBatch) {
    const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, total - base));
    for (std::size_t i = 0; i < len; ++i) batch[i] = base + i;
    kernels::eval_batch(m.pos, m.neg, std::span(batch.data(), len), std::span(out.data(), len));
    for (std::size_t i = 0; i < len; ++i) visit(batch[i], out[i] != 0);
  }
}

}  // namespace

OracleReport brute_force(const Formula& f, std::optional<int> t) {
  require_oracle_size(f);
  OracleReport r;
  r.n = f.num_vars();
  r.t = t;
  int best = 65;
  std::vector<VarMask> best_set;
  std::vector<VarMask> at_t;
  scan_all(f, [&](VarMask a, bool sat) {
    if (!sat) return;
    const int w = std::popcount(a);
    if (w < best) {
      best = w;
      best_set.clear();
    }
    if (w == best) best_set.push_back(a);
    if (t && w == *t) at_t.push_back(a);
  });
  if (best <= r.n) {
    r.tau = best;
    r.min_sat_weight = best;
  }
  for (VarMask a : best_set) r.gamma.push_back(Assignment::from_mask(a));
  for (VarMask a : at_t) r.weight_t_solutions.push_back(Assignment::from_mask(a));
  std::sort(r.gamma.begin(), r.gamma.end());
  std::sort(r.weight_t_solutions.begin(), r.weight_t_solutions.end());
  r.gamma_count = r.gamma.size();
  return r;
}

std::vector<Assignment> nae_solutions_direct(const Formula& f, int t) {
  require_oracle_size(f);
  std::vector<Assignment> out;
  const std::uint64_t total = std::uint64_t{1} << f.num_vars();
  for (std::uint64_t a = 0; a < total; ++a) {
    if (std::popcount(a) != t) continue;
    Assignment as = Assignment::from_mask(a);
    if (nae_check(f, as)) out.push_back(std::move(as));
  }
  std::sort(out.begin(), out.end());
  return out;
}

VerifyReport verify_enumeration(const Formula& f, int t, std::span<const Assignment> output) {
  OracleReport o = brute_force(f, t);
  VerifyReport r;
  r.expected = o.weight_t_solutions.size();
  r.received = output.size();
  std::set<Assignment> seen;
  for (const Assignment& a : output) {
    if (!seen.insert(a).second) {
      r.pass = false;
      r.mismatch = "duplicate";
      r.witness = a;
      return r;
    }
    if (!std::binary_search(o.weight_t_solutions.begin(), o.weight_t_solutions.end(), a)) {
      r.pass = false;
      r.mismatch = "unexpected";
      r.witness = a;
      return r;
    }
  }
  for (const Assignment& a : o.weight_t_solutions)
    if (!seen.count(a)) {
      r.pass = false;
      r.mismatch = "missing";
      r.witness = a;
      return r;
    }
  return r;
}

}  // namespace naeenum
