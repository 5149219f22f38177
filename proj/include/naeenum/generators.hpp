#pragma once

// Instance factories.

#include <cstdint>
#include <string>

#include "naeenum/cnf.hpp"

namespace naeenum {

struct GenSpec {
  std::string family;  // maj | random_closed | reduction
  int n = 0;
  int k = 3;
  int m = 0;
  std::uint64_t seed = 0;
  double negate_probability = 0.0;

  std::string describe() const;
};

/// Blocks of 2k-2 variables, every positive k-clause inside each block.
/// Throws RefusedParameters unless (2k-2) divides n.
Formula maj(int n, int k);

/// m distinct width-3 clauses over n variables, closed under negation. Each
/// clause is a monotone triple drawn without replacement; with
/// `negate_probability` > 0 each literal is independently flipped, which gives
/// mixed-sign clauses while keeping the draw reproducible.
Formula random_negation_closed(int n, int m, std::uint64_t seed, double negate_probability = 0.0);

/// Clause C becomes C or z with z = x_{n+1}.
Formula ksat_to_naesat(const Formula& f);

}  // namespace naeenum
