#include "naeenum/generators.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "naeenum/errors.hpp"
#include "naeenum/rng.hpp"

namespace naeenum {

std::string GenSpec::describe() const {
  std::ostringstream out;
  out << "gen family=" << family << " n=" << n << " k=" << k;
  if (family == "random_closed") out << " m=" << m << " seed=" << seed << " negate=" << negate_probability;
  return out.str();
}

Formula maj(int n, int k) {
  if (k < 2 || n <= 0 || n % (2 * k - 2) != 0)
    throw RefusedParameters("maj needs 2k-2 to divide n (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  const int block = 2 * k - 2;
  std::vector<Clause> clauses;
  for (int base = 0; base < n; base += block) {
    std::vector<bool> pick(static_cast<std::size_t>(block), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
      std::vector<Literal> lits;
      for (int i = 0; i < block; ++i)
        if (pick[static_cast<std::size_t>(i)]) lits.push_back(Literal::positive(base + i + 1));
      clauses.emplace_back(std::move(lits));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return Formula(n, std::move(clauses));
}

Formula random_negation_closed(int n, int m, std::uint64_t seed, double negate_probability) {
  if (n < 3 || m < 0) throw RefusedParameters("random_closed needs n >= 3 and m >= 0");
  std::vector<std::array<int, 3>> triples;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c) triples.push_back({a, b, c});
  SplitMix64 rng(seed);
  const std::size_t keep = std::min(triples.size(), static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < keep; ++i)  // partial Fisher-Yates
    std::swap(triples[i], triples[i + rng.below(triples.size() - i)]);
  triples.resize(keep);
  std::vector<Clause> clauses;
  for (const auto& tr : triples) {
    std::vector<Literal> lits;
    for (int v : tr) lits.push_back({v, negate_probability > 0.0 && rng.unit() < negate_probability});
    clauses.emplace_back(std::move(lits));
  }
  return negation_closure(Formula(n, std::move(clauses)));
}

Formula ksat_to_naesat(const Formula& f) {
  const int z = f.num_vars() + 1;
  std::vector<Clause> out;
  for (const Clause& c : f.clauses()) {
    std::vector<Literal> lits(c.literals().begin(), c.literals().end());
    lits.push_back(Literal::positive(z));
    out.emplace_back(std::move(lits));
  }
  return Formula(z, std::move(out));
}

}  // namespace naeenum
