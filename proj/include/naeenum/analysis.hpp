#pragma once

// Closed-form bounds, their DP recurrences and grid checks, plus Monte Carlo
// estimation of the expected surviving-leaf count.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "naeenum/cnf.hpp"

namespace naeenum {

using Rational = mpq_class;

/// a + b*sqrt(6) with rational a, b. Half-integer powers of 27/8 and 8/27
/// land here exactly; comparisons square both sides.
class Surd6 {
 public:
  Surd6() = default;
  Surd6(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Surd6(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  bool is_rational() const { return b_ == 0; }
  int sign() const;
  double to_double() const;
  std::string str() const;

  friend Surd6 operator+(const Surd6& x, const Surd6& y);
  friend Surd6 operator-(const Surd6& x, const Surd6& y);
  friend Surd6 operator*(const Surd6& x, const Surd6& y);
  friend int compare(const Surd6& x, const Surd6& y) { return (x - y).sign(); }
  friend bool operator==(const Surd6& x, const Surd6& y) { return compare(x, y) == 0; }
  friend bool operator<(const Surd6& x, const Surd6& y) { return compare(x, y) < 0; }
  friend bool operator<=(const Surd6& x, const Surd6& y) { return compare(x, y) <= 0; }

 private:
  Rational a_ = 0;
  Rational b_ = 0;
};

Rational rpow(const Rational& base, long e);  // any integer exponent, base != 0 when e < 0
/// (27/8)^(k/2) for any integer k.
Surd6 pow_27_8_half(long k);

Rational f_large(int w, int d);
/// Where two pieces' ranges overlap (h > d) the smaller applicable piece is
/// taken; this makes f_small equal to min(G1..G4) everywhere.
Surd6 f_small(int w, int d, int h);
/// The piece of f_small in use (1..4); lowest index on ties.
int f_small_case(int w, int d, int h);

Rational g_large(int i, int w, int d);        // i in {1, 2}
Surd6 g_small(int i, int w, int d, int h);    // i in {1..4}

/// Exact DP tables. Lookups outside the stored range are answered from the
/// recurrence's closed behaviour: w below the range is clamped (the value no
/// longer depends on w there) and h < 0 gives 0.
class BoundTable {
 public:
  static BoundTable large(int wmin, int wmax, int dmax);
  static BoundTable small(int wmin, int wmax, int dmax, int hmax);

  bool has_h() const { return hmax_ >= 0; }
  int wmin() const { return wmin_; }
  int wmax() const { return wmax_; }
  int dmax() const { return dmax_; }
  int hmax() const { return hmax_; }
  const Rational& m(int w, int d) const;
  const Rational& m(int w, int d, int h) const;

 private:
  int wmin_ = 0, wmax_ = 0, dmax_ = 0, hmax_ = -1;
  int wlo_ = 0;  // lowest stored w
  std::vector<Rational> vals_;
  static const Rational kZero;
  std::size_t at(int w, int d, int h) const;
};

BoundTable dp_m_large(int wmax, int dmax, int wmin = -3);
BoundTable dp_m_small(int wmax, int dmax, int hmax, int wmin = -3);

struct ClaimResult {
  std::string name;
  std::uint64_t points = 0;
  std::uint64_t failures = 0;
  std::string witness;  // first failing point
  bool pass() const { return failures == 0; }
};

struct ClaimGrid {
  int large_wmin = -3, large_wmax = 60, large_dmax = 30;
  int small_wmin = -3, small_wmax = 40, small_dmax = 20, small_hmax = 20;
};

struct ClaimReport {
  std::vector<ClaimResult> claims;
  bool pass() const;
};

ClaimReport verify_bound_claims(const ClaimGrid& grid = {});

enum class Regime { first = 1, second = 2, third = 3, fourth = 4 };

struct NodeCertificate {
  int n = 0, t0 = 0, t1 = 0, m_r_prime = 0, m_b = 0;
  std::vector<int> w, d, h;   // per i in 0..m_r_prime
  std::vector<int> regime;    // f_small case per i
  Surd6 N;
  int I = 0;
  bool i_at_most_n = false;
  bool width_covers_depth = true;  // d + h <= w at every i
};

/// Throws RefusedParameters unless n is even, 4*t0 <= n, m_b + t1 <= t0 and
/// 0 <= m_r_prime <= t1, and the deepest controlled stage (t0 + t1 + m_r_prime)
/// fits in n/2 levels.
NodeCertificate n_of_u0(int n, int t0, int t1, int m_r_prime, int m_b);

struct GlobalCheck {
  int n = 0;
  Rational target;                 // 6^(n/4) squared when n/4 is not an integer
  bool large_pass = true;
  bool large_ratio_exact = true;   // 3^(n/4+D) F(n/2, n/4-D) == 6^(n/4) (27/32)^D
  int large_points = 0;
  bool controlled_pass = true;
  bool width_claim_pass = true;
  int controlled_points = 0;
  Surd6 controlled_max;            // max of 3^t0 N(u0)
  std::string controlled_argmax;
  std::string witness;
  bool pass() const { return large_pass && large_ratio_exact && controlled_pass && width_claim_pass; }
};

/// Exact sweep at one n (multiple of 4).
GlobalCheck global_bound_check(int n);

struct PsiEstimate {
  std::uint64_t samples = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double min = 0.0, max = 0.0;
};

/// Mean surviving-leaf count of the pruned search over independently seeded
/// child orderings. Each worker owns an engine warmed by a canonical run.
PsiEstimate estimate_psi(const Formula& closed, int t, std::uint64_t samples, std::uint64_t seed,
                         int workers = 1);

}  // namespace naeenum
