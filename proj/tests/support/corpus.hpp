#pragma once

// Shared instance corpus for the acceptance suite and the unit tests.

#include <cstdint>
#include <string>
#include <vector>

#include "naeenum/cnf.hpp"
#include "naeenum/generators.hpp"
#include "naeenum/oracle.hpp"

namespace naeenum::testing {

struct CorpusEntry {
  std::string name;
  Formula closed;
  int tau = 0;
  std::size_t solutions = 0;
};

/// Satisfiable random negation-closed instances with n in [nmin, nmax],
/// cycling through clause densities and literal-flip probabilities.
inline std::vector<CorpusEntry> random_corpus(std::size_t count, int nmin, int nmax, std::uint64_t seed) {
  static constexpr double kFlip[] = {0.0, 0.25, 0.5};
  std::vector<CorpusEntry> out;
  std::uint64_t s = seed;
  for (std::size_t attempt = 0; out.size() < count && attempt < count * 20; ++attempt, ++s) {
    const int n = nmin + static_cast<int>(attempt % static_cast<std::size_t>(nmax - nmin + 1));
    const int m = n / 2 + static_cast<int>((attempt / 3) % static_cast<std::size_t>(2 * n));
    const double p = kFlip[attempt % 3];
    Formula f = random_negation_closed(n, m, s, p);
    const OracleReport rep = brute_force(f);
    if (!rep.tau) continue;
    GenSpec g{"random_closed", n, 3, m, s, p};
    out.push_back({g.describe(), std::move(f), *rep.tau, rep.gamma_count});
  }
  return out;
}

/// Dense monotone draws (m in [2n, 4n)), which push tau toward n/2.
inline std::vector<CorpusEntry> dense_corpus(std::size_t count, int nmin, int nmax, std::uint64_t seed) {
  std::vector<CorpusEntry> out;
  std::uint64_t s = seed;
  for (std::size_t attempt = 0; out.size() < count && attempt < count * 20; ++attempt, ++s) {
    const int n = nmin + static_cast<int>(attempt % static_cast<std::size_t>(nmax - nmin + 1));
    const int m = 2 * n + static_cast<int>((attempt / 5) % static_cast<std::size_t>(2 * n));
    Formula f = random_negation_closed(n, m, s, 0.0);
    const OracleReport rep = brute_force(f);
    if (!rep.tau) continue;
    GenSpec g{"random_closed", n, 3, m, s, 0.0};
    out.push_back({g.describe(), std::move(f), *rep.tau, rep.gamma_count});
  }
  return out;
}

inline std::vector<CorpusEntry> maj_corpus(int nmax) {
  std::vector<CorpusEntry> out;
  for (int n = 4; n <= nmax; n += 4) {
    Formula f = negation_closure(maj(n, 3));
    const OracleReport rep = brute_force(f);
    out.push_back({"maj n=" + std::to_string(n), std::move(f), *rep.tau, rep.gamma_count});
  }
  return out;
}

}  // namespace naeenum::testing
