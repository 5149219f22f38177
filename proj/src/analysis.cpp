#include "naeenum/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "naeenum/errors.hpp"
#include "naeenum/rng.hpp"
#include "naeenum/treesearch.hpp"

namespace naeenum {

namespace {

long floor_div2(long k) { return k >= 0 ? k / 2 : -((-k + 1) / 2); }

std::string point(int w, int d) {
  std::ostringstream os;
  os << "w=" << w << " d=" << d;
  return os.str();
}

std::string point(int w, int d, int h) {
  std::ostringstream os;
  os << "w=" << w << " d=" << d << " h=" << h;
  return os.str();
}

}  // namespace

int Surd6::sign() const {
  const int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 against 6 b^2
  const Rational lhs = a_ * a_, rhs = 6 * b_ * b_;
  const int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return (c > 0) ? sa : sb;
}

double Surd6::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(6.0); }

std::string Surd6::str() const {
  if (b_ == 0) return a_.get_str();
  if (a_ == 0) return b_.get_str() + "*sqrt(6)";
  return a_.get_str() + (sgn(b_) > 0 ? "+" : "") + b_.get_str() + "*sqrt(6)";
}

Surd6 operator+(const Surd6& x, const Surd6& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
Surd6 operator-(const Surd6& x, const Surd6& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
Surd6 operator*(const Surd6& x, const Surd6& y) {
  return {x.a_ * y.a_ + 6 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
}

Rational rpow(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw RefusedParameters("zero to a negative power");
    return rpow(Rational(base.get_den(), base.get_num()), -e);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Surd6 pow_27_8_half(long k) {
  const Rational q(27, 8);
  if (k % 2 == 0) return Surd6(rpow(q, k / 2));
  // sqrt(27/8) = (3/4) sqrt(6)
  return Surd6(0, rpow(q, floor_div2(k)) * Rational(3, 4));
}

Rational f_large(int w, int d) {
  if (d < 0) throw RefusedParameters("d must be non-negative");
  if (w <= 2 * d) return rpow(Rational(5, 2), 2L * d - w) * rpow(2, w - d);
  return rpow(2, 3L * d - w) * rpow(Rational(3, 2), w - 2L * d);
}

namespace {

// Pieces whose range condition holds at (w, d, h). For h > d the ranges of the
// second and fourth pieces overlap.
std::vector<int> applicable_pieces(int w, int d, int h) {
  std::vector<int> p;
  if (w <= d) p.push_back(1);
  if (d <= w && w <= d + h) p.push_back(2);
  if (d + h <= w && w <= 3 * d - h) p.push_back(3);
  if (3 * d - h <= w) p.push_back(4);
  return p;
}

}  // namespace

Rational g_large(int i, int w, int d) {
  if (i == 1) return rpow(Rational(5, 2), 2L * d - w) * rpow(2, w - d);
  if (i == 2) return rpow(2, 3L * d - w) * rpow(Rational(3, 2), w - 2L * d);
  throw RefusedParameters("g_large index must be 1 or 2");
}

Surd6 g_small(int i, int w, int d, int h) {
  const Rational nine4(9, 4);
  switch (i) {
    case 1: return Surd6(rpow(nine4, d));
    case 2: return Surd6(rpow(nine4, 2L * d - w) * rpow(2, w - d));
    case 3: return Surd6(rpow(nine4, 2L * d - w) * rpow(2, h)) * pow_27_8_half(static_cast<long>(w) - d - h);
    case 4: return Surd6(rpow(2, 3L * d - w) * rpow(Rational(3, 2), w - 2L * d));
    default: throw RefusedParameters("g_small index must be in 1..4");
  }
}

Surd6 f_small(int w, int d, int h) { return g_small(f_small_case(w, d, h), w, d, h); }

int f_small_case(int w, int d, int h) {
  if (d < 0 || h < 0) throw RefusedParameters("d and h must be non-negative");
  int best = 0;
  Surd6 best_v;
  for (int piece : applicable_pieces(w, d, h)) {
    Surd6 v = g_small(piece, w, d, h);
    if (piece == 3) {
      const Surd6 alt = Surd6(rpow(2, h) * rpow(Rational(3, 2), static_cast<long>(w) - 2L * d)) *
                        pow_27_8_half(3L * d - w - h);
      if (!(v == alt)) throw InternalError("third-piece forms disagree at " + point(w, d, h));
    }
    if (best == 0 || v < best_v) {
      best = piece;
      best_v = v;
    }
  }
  if (best == 0) throw InternalError("no piece covers " + point(w, d, h));
  return best;
}

// ---- DP tables ----

const Rational BoundTable::kZero = 0;

std::size_t BoundTable::at(int w, int d, int h) const {
  const std::size_t wn = static_cast<std::size_t>(wmax_ - wlo_ + 1);
  const std::size_t hn = static_cast<std::size_t>(std::max(hmax_, 0) + 1);
  return (static_cast<std::size_t>(d) * hn + static_cast<std::size_t>(std::max(h, 0))) * wn +
         static_cast<std::size_t>(w - wlo_);
}

const Rational& BoundTable::m(int w, int d) const {
  if (has_h()) throw RefusedParameters("three-parameter table");
  if (d < 0 || d > dmax_ || w > wmax_) throw RefusedParameters("outside table: " + point(w, d));
  return vals_[at(std::max(w, wlo_), d, 0)];
}

const Rational& BoundTable::m(int w, int d, int h) const {
  if (!has_h()) throw RefusedParameters("two-parameter table");
  if (h < 0) return kZero;
  if (d < 0 || d > dmax_ || w > wmax_ || h > hmax_) throw RefusedParameters("outside table: " + point(w, d, h));
  return vals_[at(std::max(w, wlo_), d, h)];
}

// For w <= 0 every reference stays at w <= 0, so M no longer depends on w
// there; storing from min(wmin, 0) and clamping below is exact.
BoundTable BoundTable::large(int wmin, int wmax, int dmax) {
  if (dmax < 0 || wmax < wmin) throw RefusedParameters("empty grid");
  BoundTable t;
  t.wmin_ = wmin;
  t.wmax_ = wmax;
  t.dmax_ = dmax;
  t.wlo_ = std::min(wmin, 0);
  t.vals_.resize(static_cast<std::size_t>(dmax + 1) * static_cast<std::size_t>(wmax - t.wlo_ + 1));
  const Rational c1(5, 2), c2(2), c3(3, 2);
  for (int d = 0; d <= dmax; ++d) {
    for (int w = t.wlo_; w <= wmax; ++w) {
      Rational& v = t.vals_[t.at(w, d, 0)];
      if (d == 0) {
        v = (w <= 0) ? 1 : 0;
        continue;
      }
      auto prev = [&](int dw) -> const Rational& { return t.vals_[t.at(std::max(w - dw, t.wlo_), d - 1, 0)]; };
      v = std::max({Rational(c1 * prev(1)), Rational(c2 * prev(2)), Rational(c3 * prev(3))});
    }
  }
  return t;
}

BoundTable BoundTable::small(int wmin, int wmax, int dmax, int hmax) {
  if (dmax < 0 || hmax < 0 || wmax < wmin) throw RefusedParameters("empty grid");
  BoundTable t;
  t.wmin_ = wmin;
  t.wmax_ = wmax;
  t.dmax_ = dmax;
  t.hmax_ = hmax;
  t.wlo_ = std::min(wmin, 0);
  t.vals_.resize(static_cast<std::size_t>(dmax + 1) * static_cast<std::size_t>(hmax + 1) *
                 static_cast<std::size_t>(wmax - t.wlo_ + 1));
  const Rational c1(9, 4), c2(2), c3(7, 4), c4(3, 2);
  for (int d = 0; d <= dmax; ++d) {
    for (int h = 0; h <= hmax; ++h) {
      for (int w = t.wlo_; w <= wmax; ++w) {
        Rational& v = t.vals_[t.at(w, d, h)];
        if (d == 0) {
          v = (w <= 0) ? 1 : 0;
          continue;
        }
        auto prev = [&](int dw, int hh) -> Rational {
          if (hh < 0) return 0;
          return t.vals_[t.at(std::max(w - dw, t.wlo_), d - 1, hh)];
        };
        v = std::max({Rational(c1 * prev(1, h)), Rational(c2 * prev(2, h - 1)), Rational(c3 * prev(2, h)),
                      Rational(c4 * prev(3, h))});
      }
    }
  }
  return t;
}

BoundTable dp_m_large(int wmax, int dmax, int wmin) { return BoundTable::large(wmin, wmax, dmax); }
BoundTable dp_m_small(int wmax, int dmax, int hmax, int wmin) { return BoundTable::small(wmin, wmax, dmax, hmax); }

// ---- claim grids ----

bool ClaimReport::pass() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.pass(); });
}

namespace {

struct Tally {
  ClaimResult r;
  explicit Tally(std::string name) { r.name = std::move(name); }
  void check(bool ok, const std::string& where) {
    ++r.points;
    if (!ok && r.failures++ == 0) r.witness = where;
  }
};

int compare(const Rational& x, const Rational& y) { return cmp(x, y); }

// "lhs <= rhs iff cond", equality exactly when `boundary`.
template <class T>
void crossover(Tally& t, const T& lhs, const T& rhs, bool cond, bool boundary, const std::string& where) {
  const int c = compare(lhs, rhs);
  t.check(((c <= 0) == cond) && ((c == 0) == boundary), where);
}

}  // namespace

ClaimReport verify_bound_claims(const ClaimGrid& g) {
  ClaimReport rep;
  {
    const BoundTable m = dp_m_large(g.large_wmax, g.large_dmax, g.large_wmin);
    Tally le_g1("M(w,d) <= G1(w,d)"), le_g2("M(w,d) <= G2(w,d)"), g_eq_f("min(G1,G2) = F(w,d)"),
        cross("G1 <= G2 iff w <= 2d"), cont("F branches agree at w = 2d"), le_f("M(w,d) <= F(w,d)");
    for (int d = 0; d <= g.large_dmax; ++d) {
      for (int w = g.large_wmin; w <= g.large_wmax; ++w) {
        const std::string at = point(w, d);
        const Rational& mv = m.m(w, d);
        const Rational g1 = g_large(1, w, d), g2 = g_large(2, w, d), f = f_large(w, d);
        le_g1.check(mv <= g1, at);
        le_g2.check(mv <= g2, at);
        g_eq_f.check(std::min(g1, g2) == f, at);
        crossover(cross, g1, g2, w <= 2 * d, w == 2 * d, at);
        if (w == 2 * d) cont.check(g1 == g2, at);
        le_f.check(mv <= f, at);
      }
    }
    for (Tally* t : {&le_g1, &le_g2, &g_eq_f, &cross, &cont, &le_f}) rep.claims.push_back(t->r);
  }
  {
    const BoundTable m = dp_m_small(g.small_wmax, g.small_dmax, g.small_hmax, g.small_wmin);
    Tally le_g[4] = {Tally("M(w,d,h) <= G1(w,d,h)"), Tally("M(w,d,h) <= G2(w,d,h)"),
                     Tally("M(w,d,h) <= G3(w,d,h)"), Tally("M(w,d,h) <= G4(w,d,h)")};
    Tally c12("G1 <= G2 iff w <= d"), c23("G2 <= G3 iff w <= d+h"), c34("G3 <= G4 iff w <= 3d-h"),
        g_eq_f("min(G1..G4) = F(w,d,h)"),
        le_f("M(w,d,h) <= F(w,d,h)");
    for (int d = 0; d <= g.small_dmax; ++d) {
      for (int h = 0; h <= g.small_hmax; ++h) {
        for (int w = g.small_wmin; w <= g.small_wmax; ++w) {
          const std::string at = point(w, d, h);
          const Surd6 mv(m.m(w, d, h));
          Surd6 gi[4];
          for (int i = 0; i < 4; ++i) {
            gi[i] = g_small(i + 1, w, d, h);
            le_g[i].check(mv <= gi[i], at);
          }
          crossover(c12, gi[0], gi[1], w <= d, w == d, at);
          crossover(c23, gi[1], gi[2], w <= d + h, w == d + h, at);
          crossover(c34, gi[2], gi[3], w <= 3 * d - h, w == 3 * d - h, at);
          Surd6 gmin = gi[0];
          for (int i = 1; i < 4; ++i)
            if (gi[i] < gmin) gmin = gi[i];
          const Surd6 f = f_small(w, d, h);
          g_eq_f.check(gmin == f, at);
          le_f.check(mv <= f, at);
        }
      }
    }
    for (auto& t : le_g) rep.claims.push_back(t.r);
    for (Tally* t : {&c12, &c23, &c34, &g_eq_f, &le_f}) rep.claims.push_back(t->r);
  }
  return rep;
}

// ---- per-node certificates and global sweeps ----

NodeCertificate n_of_u0(int n, int t0, int t1, int m_r_prime, int m_b) {
  if (n <= 0 || n % 2 != 0) throw RefusedParameters("n must be positive and even");
  if (t0 < 0 || t1 < 0 || m_b < 0 || m_r_prime < 0) throw RefusedParameters("negative profile entry");
  if (4 * t0 > n) throw RefusedParameters("4*t0 exceeds n");
  if (m_b + t1 > t0) throw RefusedParameters("m_B + t1 exceeds t0");
  if (m_r_prime > t1) throw RefusedParameters("m'_R exceeds t1");
  if (2 * (t0 + t1 + m_r_prime) > n) throw RefusedParameters("controlled stage deeper than n/2");

  NodeCertificate c;
  c.n = n;
  c.t0 = t0;
  c.t1 = t1;
  c.m_r_prime = m_r_prime;
  c.m_b = m_b;
  c.I = 3 * t0 + 2 * t1 + m_r_prime + m_b;
  c.i_at_most_n = c.I <= n;
  Surd6 sum;
  mpz_class binom;
  for (int i = 0; i <= m_r_prime; ++i) {
    const int w = n / 2 - 2 * i - t1, d = n / 2 - t0 - t1 - i, h = m_r_prime + m_b - i;
    c.w.push_back(w);
    c.d.push_back(d);
    c.h.push_back(h);
    c.regime.push_back(f_small_case(w, d, h));
    if (d + h > w) c.width_covers_depth = false;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m_r_prime), static_cast<unsigned long>(i));
    sum = sum + Surd6(Rational(binom) * rpow(Rational(3, 8), i)) * f_small(w, d, h);
  }
  c.N = Surd6(rpow(Rational(5, 2), t1) * rpow(Rational(4, 5), m_r_prime)) * sum;
  return c;
}

GlobalCheck global_bound_check(int n) {
  if (n <= 0 || n % 4 != 0) throw RefusedParameters("n must be a positive multiple of 4");
  GlobalCheck g;
  g.n = n;
  const int q = n / 4;
  g.target = rpow(6, q);

  for (int delta = 0; delta <= q; ++delta) {
    const Rational v = rpow(3, q + delta) * f_large(n / 2, q - delta);
    ++g.large_points;
    if (v > g.target) {
      g.large_pass = false;
      if (g.witness.empty()) g.witness = "large route delta=" + std::to_string(delta);
    }
    if (v != g.target * rpow(Rational(27, 32), delta)) g.large_ratio_exact = false;
  }

  bool first = true;
  const Surd6 target(g.target);
  for (int t0 = 0; 4 * t0 <= n; ++t0) {
    for (int t1 = 0; t1 <= t0; ++t1) {
      for (int mb = 0; mb + t1 <= t0; ++mb) {
        for (int mr = 0; mr <= t1 && 2 * (t0 + t1 + mr) <= n; ++mr) {
          const NodeCertificate c = n_of_u0(n, t0, t1, mr, mb);
          const Surd6 v = Surd6(rpow(3, t0)) * c.N;
          ++g.controlled_points;
          std::ostringstream where;
          where << "t0=" << t0 << " t1=" << t1 << " mR'=" << mr << " mB=" << mb;
          if (!c.width_covers_depth) {
            g.width_claim_pass = false;
            if (g.witness.empty()) g.witness = "d+h>w at " + where.str();
          }
          if (target < v) {
            g.controlled_pass = false;
            if (g.witness.empty()) g.witness = "controlled " + where.str();
          }
          if (first || g.controlled_max < v) {
            g.controlled_max = v;
            g.controlled_argmax = where.str();
            first = false;
          }
        }
      }
    }
  }
  return g;
}

// ---- Monte Carlo ----

PsiEstimate estimate_psi(const Formula& closed, int t, std::uint64_t samples, std::uint64_t seed, int workers) {
  if (samples == 0) throw RefusedParameters("need at least one sample");
  workers = std::max(1, workers);
  std::vector<double> leaves(samples, 0.0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  const auto noop = [](const Assignment&) {};

  auto job = [&](int wid) {
    try {
      Engine engine(closed, t);
      engine.run(OrderingSource(), noop);
      for (std::uint64_t j = static_cast<std::uint64_t>(wid); j < samples; j += static_cast<std::uint64_t>(workers)) {
        SplitMix64 mix(seed ^ (j * 0x9e3779b97f4a7c15ULL));
        const SearchStats s = engine.run(OrderingSource::seeded(mix.next()), noop);
        leaves[j] = static_cast<double>(s.leaves_visited);
      }
    } catch (...) {
      errors[static_cast<std::size_t>(wid)] = std::current_exception();
    }
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(job, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  PsiEstimate est;
  est.samples = samples;
  est.min = *std::min_element(leaves.begin(), leaves.end());
  est.max = *std::max_element(leaves.begin(), leaves.end());
  double mean = 0.0, m2 = 0.0;
  std::uint64_t k = 0;
  for (double x : leaves) {  // Welford
    ++k;
    const double dlt = x - mean;
    mean += dlt / static_cast<double>(k);
    m2 += dlt * (x - mean);
  }
  est.mean = mean;
  if (samples > 1) est.std_error = std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
  return est;
}

}  // namespace naeenum
