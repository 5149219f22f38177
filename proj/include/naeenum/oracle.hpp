#pragma once

// Brute-force ground truth by scanning all 2^n assignments. Shares no code
// with clause selection or the search.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "naeenum/cnf.hpp"

namespace naeenum {

inline constexpr int kMaxOracleVars = 24;

struct OracleReport {
  int n = 0;
  std::optional<int> tau;                    // unset when unsatisfiable
  std::vector<Assignment> gamma;             // minimum-weight satisfying assignments
  std::size_t gamma_count = 0;
  std::optional<int> t;
  std::vector<Assignment> weight_t_solutions;
  std::optional<int> min_sat_weight;
};

/// Throws RefusedParameters when n > 24 and WidthError on n > 64 masks.
OracleReport brute_force(const Formula& f, std::optional<int> t = std::nullopt);

/// Weight-t assignments with a true and a false literal in every clause.
std::vector<Assignment> nae_solutions_direct(const Formula& f, int t);

struct VerifyReport {
  bool pass = true;
  std::size_t expected = 0;
  std::size_t received = 0;
  std::string mismatch;  // "duplicate", "missing", "unexpected" or empty
  std::optional<Assignment> witness;
};

/// Compare an engine's output against the oracle's weight-t set.
VerifyReport verify_enumeration(const Formula& f, int t, std::span<const Assignment> output);

}  // namespace naeenum
