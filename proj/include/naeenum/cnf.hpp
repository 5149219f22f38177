#pragma once

// Formula substrate: literals, canonical clauses, deduplicated formulas,
// DIMACS I/O and the clause-level operations the search is defined in terms of.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "naeenum/varmask.hpp"

namespace naeenum {

struct Literal {
  int var = 0;
  bool negated = false;

  static constexpr Literal positive(int v) { return {v, false}; }
  static constexpr Literal negative(int v) { return {v, true}; }
  static constexpr Literal from_dimacs(int lit) { return {lit < 0 ? -lit : lit, lit < 0}; }

  constexpr int dimacs() const { return negated ? -var : var; }
  constexpr Literal operator~() const { return {var, !negated}; }
  constexpr auto operator<=>(const Literal&) const = default;
};

/// A clause stored as its literals sorted by variable. Repeated literals
/// collapse; a variable occurring with both signs is rejected.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);
  static Clause from_dimacs(std::initializer_list<int> lits);

  std::span<const Literal> literals() const { return lits_; }
  std::size_t width() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  /// Nonempty and every literal positive.
  bool monotone() const;
  /// Literal-wise negation.
  Clause negation() const;
  std::vector<int> vars() const;

  // Mask views; only valid when every variable is <= 64.
  VarMask positive_mask() const;
  VarMask negative_mask() const;
  VarMask var_mask() const { return positive_mask() | negative_mask(); }

  bool operator==(const Clause&) const = default;
  auto operator<=>(const Clause& o) const { return lits_ <=> o.lits_; }

  std::string to_string() const;

 private:
  std::vector<Literal> lits_;
};

/// Clause set over variables 1..n. Clauses are kept sorted and unique, so two
/// formulas with the same clause set compare (and serialize) identically.
class Formula {
 public:
  Formula() = default;
  Formula(int num_vars, std::vector<Clause> clauses);

  int num_vars() const { return n_; }
  std::span<const Clause> clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  std::size_t max_width() const;
  bool contains(const Clause& c) const;

  bool operator==(const Formula&) const = default;

 private:
  int n_ = 0;
  std::vector<Clause> clauses_;
};

/// The set of variables assigned 1; everything else is 0.
struct Assignment {
  std::vector<int> ones;  // sorted, unique

  static Assignment from_mask(VarMask m) { return {mask_vars(m)}; }
  VarMask mask() const { return mask_of(ones); }
  std::size_t weight() const { return ones.size(); }
  bool operator==(const Assignment&) const = default;
  auto operator<=>(const Assignment&) const = default;
};

Formula parse_dimacs(std::string_view text);
Formula read_dimacs_file(const std::string& path);
/// Canonical DIMACS text; each comment becomes a "c " line before the header.
std::string write_dimacs(const Formula& f, std::span<const std::string> comments = {});

Formula negation_closure(const Formula& f);
bool is_negation_closed(const Formula& f);

/// F/Y: drop clauses satisfied by `ones`, strip negative literals over `ones`.
Formula simplify(const Formula& f, std::span<const int> ones);
bool is_falsified(const Formula& f);
/// Clauses containing no positive literal over `q` (negations of q allowed).
std::vector<Clause> live_clauses(const Formula& f, std::span<const int> q);

bool satisfies(const Clause& c, const Assignment& a);
bool satisfies(const Formula& f, const Assignment& a);
/// Every clause has at least one true and one false literal under `a`.
bool nae_check(const Formula& f, const Assignment& a);

/// Throws WidthError unless every clause has width <= 3 and n <= 64.
void require_engine_input(const Formula& f);

}  // namespace naeenum
