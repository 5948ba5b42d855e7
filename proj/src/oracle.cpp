#include "ffr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ffr {

namespace {

constexpr double kInfeasible = std::numeric_limits<double>::infinity();
constexpr double kRefineWidth = 1e-12;

// zeta along the constraint line; +inf where the radicand is negative.
struct LineObjective {
  double se, sen, rt_1m2n;
  double eta1, eta2, Q;
  mutable long evaluations = 0;

  double q2_of(double q1) const { return (Q - eta1 * q1) / eta2; }

  double operator()(double q1) const {
    ++evaluations;
    const double q2 = q2_of(q1);
    if (q2 < 0.0 || q2 > 1.0) return kInfeasible;
    const double u = std::sqrt(std::max(0.0, q1 * q2));
    const double rad = 1.0 - se * se + 2.0 * se * u - (q1 + q2);
    if (rad < -detail::kRadicandTolerance) return kInfeasible;
    return (se - u) * rt_1m2n - sen * std::sqrt(std::max(0.0, rad));
  }
};

// Golden-section minimization on [a, b]; f may return +inf inside the window.
double golden_section(const LineObjective& f, double a, double b, double width) {
  constexpr double inv_gr = 0.6180339887498949;  // 1/phi
  double c = b - inv_gr * (b - a);
  double d = a + inv_gr * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

OracleResult brute_force_zeta_min(const CloningProblem& problem, double Q,
                                  int coarse_points) {
  if (problem.infinite_clones())
    throw domain_error("brute_force_zeta_min: requires a finite clone count");
  if (!(Q >= 0.0) || !(Q <= 1.0))
    throw domain_error("brute_force_zeta_min: Q must lie in [0, 1]");
  if (coarse_points < 100)
    throw domain_error("brute_force_zeta_min: coarse_points must be >= 100");

  const auto pw = detail::overlap_powers(problem);
  LineObjective f;
  f.se = pw.se;
  f.sen = pw.sen;
  f.rt_1m2n = pw.rt_1m2n;
  f.eta1 = problem.eta1;
  f.eta2 = problem.eta2;
  f.Q = Q;

  const double lo = std::max(0.0, (Q - problem.eta2) / problem.eta1);
  const double hi = std::min(1.0, Q / problem.eta1);

  OracleResult best;
  best.zeta_min = kInfeasible;
  best.q1 = lo;
  best.q2 = f.q2_of(lo);
  best.resolution = 0.0;

  if (hi - lo <= 0.0) {
    // Constraint pins a single allocation (e.g. Q = 0).
    const double z = f(lo);
    if (z == kInfeasible)
      throw domain_error("brute_force_zeta_min: constraint point is infeasible");
    best.perfect_cloning = z < 0.0;
    best.zeta_min = std::max(0.0, z);
    best.evaluations = f.evaluations;
    return best;
  }

  const double step = (hi - lo) / (coarse_points - 1);
  int best_i = -1;
  double best_raw = kInfeasible;
  for (int i = 0; i < coarse_points; ++i) {
    const double q1 = lo + step * i;
    const double z = f(q1);
    if (z < best_raw) {  // ties keep the smallest q1
      best_raw = z;
      best_i = i;
    }
  }
  if (best_i < 0)
    throw domain_error("brute_force_zeta_min: no feasible point on the constraint line");

  // Refine around the best cell; the window spans one cell on each side so a
  // minimum sitting on a cell boundary is still bracketed.
  const double a = std::max(lo, lo + step * (best_i - 1));
  const double b = std::min(hi, lo + step * (best_i + 1));
  const double q1_star = golden_section(f, a, b, kRefineWidth);
  const double z_star = f(q1_star);
  const double raw = std::min(z_star, best_raw);
  const double q1_min = z_star <= best_raw ? q1_star : lo + step * best_i;

  best.perfect_cloning = raw < 0.0;
  best.zeta_min = std::max(0.0, raw);
  best.q1 = q1_min;
  best.q2 = f.q2_of(q1_min);
  best.evaluations = f.evaluations;
  best.resolution = kRefineWidth;
  return best;
}

}  // namespace ffr
