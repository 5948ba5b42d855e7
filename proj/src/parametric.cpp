#include "ffr/parametric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ffr/frio.hpp"

namespace ffr {

namespace {

constexpr double kRootTolerance = 1e-12;
constexpr int kMaxRootIterations = 200;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ParamContext {
  double s;         // effective input overlap
  double sen;       // s^n
  double rt_1m2n;   // sqrt(1 - s^{2n})
  double c;         // sqrt(1 - s^2)
  double gamma;     // s^{2n}/(1 - s^{2n})
  double delta;
  double dd;        // sqrt(1 - delta^2) = 2 sqrt(eta1 eta2)
  double four_eta;  // 1 - delta^2
};

ParamContext context(const CloningProblem& problem) {
  const auto pw = detail::overlap_powers(problem);
  ParamContext ctx;
  ctx.s = pw.se;
  ctx.sen = pw.sen;
  ctx.rt_1m2n = pw.rt_1m2n;
  ctx.c = pw.c;
  ctx.gamma = pw.se2n / (1.0 - pw.se2n);
  ctx.delta = problem.delta;
  ctx.dd = detail::root_four_eta(problem);
  ctx.four_eta = detail::four_eta_product(problem);
  return ctx;
}

void require_tangent_branch(const CloningProblem& problem, const char* where) {
  if (problem.infinite_clones())
    throw domain_error(std::string(where) + ": requires a finite clone count");
  if (!(problem.delta > 0.0))
    throw domain_error(std::string(where) + ": degenerate at delta = 0");
  if (!(detail::effective_overlap(problem) > 0.0))
    throw domain_error(std::string(where) + ": requires s > 0");
}

struct RawPoint {
  double Q;
  double zeta;
  double sin_phi;
  double cos_phi;
};

// Q and zeta_min for given (cot phi, sin phi, cos phi), no range validation.
RawPoint raw_point_parts(const ParamContext& ctx, double tau, double sin_phi,
                         double cos_phi) {
  RawPoint r;
  r.sin_phi = sin_phi;
  r.cos_phi = cos_phi;
  const double a = ctx.delta * tau + ctx.s * ctx.dd;
  const double num = ctx.four_eta * (1.0 - ctx.s * ctx.s) - ctx.gamma * a * a;
  const double den = 2.0 * (1.0 + ctx.delta * sin_phi - ctx.s * ctx.dd * cos_phi);
  r.Q = num / den;
  // sqrt(1+gamma) = 1/sqrt(1-s^{2n})
  r.zeta = ((1.0 + ctx.gamma) * ctx.dd * ctx.s + ctx.gamma * ctx.delta * tau -
            r.Q * r.cos_phi) *
           ctx.rt_1m2n / ctx.dd;
  return r;
}

// The physical tangency arc has u = Q cos(phi)/sqrt(1-delta^2) >= 0 and sits
// below the ellipse center: phi in (3pi/2, 2pi), so sin < 0 < cos and
// tau = cot(phi) < 0 throughout. The cotangent form avoids trigonometric
// roundoff when the branch crowds against phi = 2pi (small delta, large n).
RawPoint raw_point(const ParamContext& ctx, double tau) {
  const double inv = 1.0 / std::sqrt(1.0 + tau * tau);
  return raw_point_parts(ctx, tau, -inv, -tau * inv);
}

// phi = 2pi + atan(1/tau) in (3pi/2, 2pi) for tau < 0.
double phi_from_tau(double tau) {
  return 2.0 * std::numbers::pi + std::atan(1.0 / tau);
}

double clamp01(double x, const char* what) {
  if (x < -1e-9 || x > 1.0 + 1e-9)
    throw consistency_error(std::string(what) + ": probability escaped [0, 1]");
  return std::clamp(x, 0.0, 1.0);
}

SolutionPoint point_from_raw(const CloningProblem& problem, const ParamContext& ctx,
                             double tau, RawPoint r) {
  if (r.Q < 0.0) {
    if (r.Q < -detail::kRadicandTolerance)
      throw domain_error("solution_at_phi: phi above phi_max (negative failure rate)");
    r.Q = 0.0;
  }
  if (r.zeta < 0.0) {
    if (r.zeta < -detail::kRadicandTolerance)
      throw domain_error(
          "solution_at_phi: negative zeta, phi below phi_min (perfect-cloning regime)");
    r.zeta = 0.0;
  }

  SolutionPoint pt;
  pt.regime = SolutionRegime::kTangent;
  pt.phi = phi_from_tau(tau);
  pt.Q = r.Q;
  pt.zeta_min = r.zeta;
  pt.fidelity = fidelity_from_zeta(problem, r.Q, r.zeta).fidelity;
  pt.u_star =
      ctx.s - r.zeta / ctx.rt_1m2n + ctx.gamma * (ctx.s + ctx.delta * tau / ctx.dd);
  pt.v_star = r.Q * (1.0 + ctx.delta * r.sin_phi) / ctx.four_eta;
  // Signed inversion of (u, v): on the ellipse, q1 - q2 = 2 (v - Q)/delta,
  // which keeps the constraint eta1 q1 + eta2 q2 = Q exact.
  const double half_gap = (pt.v_star - r.Q) / ctx.delta;
  pt.q1_star = clamp01(pt.v_star + half_gap, "solution_at_phi");
  pt.q2_star = clamp01(pt.v_star - half_gap, "solution_at_phi");
  const double p1p2 = (1.0 - pt.q1_star) * (1.0 - pt.q2_star);
  if (!(p1p2 > 0.0))
    throw consistency_error("solution_at_phi: success probability vanished");
  pt.s_prime = (ctx.s - pt.u_star) / std::sqrt(p1p2);
  return pt;
}

// Root of f on a bracket [a, b] with f(a) > 0 > f(b) (or conversely after
// swapping): bisection with a secant polish, stopping at |f| < kRootTolerance.
template <class F>
double bisect_to_zero(F&& f, double a, double b, double fa, double fb) {
  double x = a, fx = fa;
  for (int it = 0; it < kMaxRootIterations; ++it) {
    x = 0.5 * (a + b);
    fx = f(x);
    if (std::abs(fx) < kRootTolerance) return x;
    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    if (std::abs(b - a) < 1e-16 * std::max(1.0, std::abs(a))) break;
  }
  // Secant refinement inside the final bracket.
  for (int it = 0; it < 8 && std::abs(fx) >= kRootTolerance; ++it) {
    const double denom = fb - fa;
    if (denom == 0.0) break;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double xs = std::clamp(a - fa * (b - a) / denom, lo, hi);
    const double fs = f(xs);
    x = xs;
    fx = fs;
    if ((fs > 0.0) == (fa > 0.0)) {
      a = xs;
      fa = fs;
    } else {
      b = xs;
      fb = fs;
    }
  }
  return x;
}

double segment_zeta(const CloningProblem& problem, double q) {
  return zeta_of_allocation(problem, make_allocation(problem, q, q));
}

// zeta along the constraint line at fixed Q, parameterized by q1. Returns
// +inf where infeasible (used only for root location, not minimization).
double line_zeta(const CloningProblem& problem, double Q, double q1) {
  const double q2 = (Q - problem.eta1 * q1) / problem.eta2;
  if (q2 < 0.0 || q2 > 1.0) return std::numeric_limits<double>::infinity();
  const auto pw = detail::overlap_powers(problem);
  const double u = std::sqrt(std::max(0.0, q1 * q2));
  const double rad = 1.0 - pw.se * pw.se + 2.0 * pw.se * u - (q1 + q2);
  if (rad < -detail::kRadicandTolerance)
    return std::numeric_limits<double>::infinity();
  return (pw.se - u) * pw.rt_1m2n - pw.sen * std::sqrt(std::max(0.0, rad));
}

// A perfect-cloning failure split at rate Q >= q_pc: the smallest-q1 root of
// zeta = 0 on the constraint line.
SolutionPoint perfect_point(const CloningProblem& problem, double Q) {
  const double lo = std::max(0.0, (Q - problem.eta2) / problem.eta1);
  const double hi = std::min(1.0, Q / problem.eta1);

  const auto f = [&](double q1) { return line_zeta(problem, Q, q1); };

  double root = lo;
  const double f_lo = f(lo);
  if (f_lo > kRootTolerance && hi > lo) {
    constexpr int kGrid = 2001;
    double prev_q = lo, prev_f = f_lo;
    bool bracketed = false;
    int best_i = 0;
    double best_f = f_lo;
    for (int i = 1; i < kGrid; ++i) {
      const double q1 = lo + (hi - lo) * i / (kGrid - 1);
      const double fq = f(q1);
      if (std::isfinite(fq) && fq < best_f) {
        best_f = fq;
        best_i = i;
      }
      if (!std::isfinite(prev_f) || !std::isfinite(fq)) {
        prev_q = q1;
        prev_f = fq;
        continue;
      }
      if (prev_f > 0.0 && fq <= 0.0) {
        root = bisect_to_zero(f, prev_q, q1, prev_f, fq);
        bracketed = true;
        break;
      }
      prev_q = q1;
      prev_f = fq;
    }
    if (!bracketed) {
      // At Q = q_pc exactly, zeta only touches zero; refine the grid minimum
      // instead of hunting a sign change.
      const double step = (hi - lo) / (kGrid - 1);
      double a = std::max(lo, lo + step * (best_i - 1));
      double b = std::min(hi, lo + step * (best_i + 1));
      constexpr double inv_gr = 0.6180339887498949;
      double c = b - inv_gr * (b - a), d = a + inv_gr * (b - a);
      double fc = f(c), fd = f(d);
      while (b - a > 1e-14) {
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
      root = 0.5 * (a + b);
      if (!(std::abs(f(root)) <= 1e-9))
        throw consistency_error("solve_at_Q: no zeta = 0 split found in the plateau");
    }
  }

  const double q2 = std::clamp((Q - problem.eta1 * root) / problem.eta2, 0.0, 1.0);
  const auto alloc = make_allocation(problem, root, q2);
  const auto pw = detail::overlap_powers(problem);
  SolutionPoint pt;
  pt.regime = SolutionRegime::kPerfect;
  pt.phi = kNaN;
  pt.Q = Q;
  pt.zeta_min = 0.0;
  pt.fidelity = 1.0;
  pt.u_star = alloc.u;
  pt.v_star = alloc.v;
  pt.q1_star = alloc.q1;
  pt.q2_star = alloc.q2;
  const double p1p2 = (1.0 - alloc.q1) * (1.0 - alloc.q2);
  pt.s_prime = p1p2 > 0.0 ? (pw.se - alloc.u) / std::sqrt(p1p2) : kNaN;
  return pt;
}

SolutionPoint segment_point_at(const CloningProblem& problem, double Q) {
  const auto alloc = make_allocation(problem, Q, Q);
  const double zeta = zeta_of_allocation(problem, alloc);
  SolutionPoint pt;
  pt.regime = SolutionRegime::kSegment;
  pt.phi = kNaN;
  pt.Q = Q;
  pt.zeta_min = std::max(0.0, zeta);
  pt.fidelity = fidelity_from_zeta(problem, alloc, pt.zeta_min).fidelity;
  pt.u_star = alloc.u;
  pt.v_star = alloc.v;
  pt.q1_star = Q;
  pt.q2_star = Q;
  pt.s_prime = (detail::effective_overlap(problem) - alloc.u) / (1.0 - Q);
  return pt;
}

// March grid over tau in [tau0, 0): per octave [tau0 2^-k, tau0 2^-k-1] a
// fixed number of linear substeps, so sign changes are caught at any scale.
template <class Visit>
void march_tau(double tau0, Visit&& visit) {
  constexpr int kOctaves = 64;
  constexpr int kSub = 16;
  double hi = tau0;
  for (int k = 0; k < kOctaves; ++k) {
    const double lo = hi * 0.5;
    for (int j = 1; j <= kSub; ++j) {
      const double tau = hi + (lo - hi) * j / kSub;
      if (!visit(tau)) return;
    }
    hi = lo;
  }
}

}  // namespace

double cot_phi_max(const CloningProblem& problem) {
  require_tangent_branch(problem, "cot_phi_max");
  const ParamContext ctx = context(problem);
  // sqrt((1-s^2)/gamma) = c sqrt(1-s^{2n})/s^n
  const double root_term = ctx.c * ctx.rt_1m2n / ctx.sen;
  return -(ctx.s + root_term) * ctx.dd / ctx.delta;
}

double phi_max(const CloningProblem& problem) {
  return phi_from_tau(cot_phi_max(problem));
}

PhiMinResult phi_min(const CloningProblem& problem) {
  require_tangent_branch(problem, "phi_min");
  const ParamContext ctx = context(problem);
  const double tau0 = cot_phi_max(problem);

  if (zeta_max(problem) <= 1e-15) {
    // n = 1: the parabola through the origin already realizes zeta = 0, so
    // perfect cloning is free.
    return PhiMinResult{phi_from_tau(tau0), tau0, 0.0};
  }

  const auto zeta_at = [&](double tau) { return raw_point(ctx, tau).zeta; };

  // zeta decreases from zeta_max along the branch; bracket its first zero.
  double prev_tau = tau0;
  double prev_zeta = zeta_at(tau0);
  double root_tau = kNaN;
  march_tau(tau0, [&](double tau) {
    const double z = zeta_at(tau);
    if (prev_zeta > 0.0 && z <= 0.0) {
      root_tau = bisect_to_zero(zeta_at, prev_tau, tau, prev_zeta, z);
      return false;
    }
    prev_tau = tau;
    prev_zeta = z;
    return true;
  });
  if (!std::isfinite(root_tau))
    throw consistency_error("phi_min: zeta_min does not change sign below phi_max");

  PhiMinResult res;
  res.cot_phi_min = root_tau;
  res.phi_min = phi_from_tau(root_tau);
  res.q_pc = raw_point(ctx, root_tau).Q;
  return res;
}

SolutionPoint solution_at_cot_phi(const CloningProblem& problem, double cot_phi) {
  require_tangent_branch(problem, "solution_at_phi");
  const ParamContext ctx = context(problem);
  return point_from_raw(problem, ctx, cot_phi, raw_point(ctx, cot_phi));
}

SolutionPoint solution_at_phi(const CloningProblem& problem, double phi) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  if (s == 0.0) throw domain_error("solution_at_phi: sin(phi) vanishes");
  require_tangent_branch(problem, "solution_at_phi");
  const ParamContext ctx = context(problem);
  const double tau = c / s;
  return point_from_raw(problem, ctx, tau, raw_point_parts(ctx, tau, s, c));
}

double q_perfect_cloning(const CloningProblem& problem) {
  if (problem.infinite_clones())
    throw domain_error("q_perfect_cloning: requires a finite clone count");
  const double se = detail::effective_overlap(problem);
  if (se == 0.0 || zeta_max(problem) <= 1e-15) return 0.0;
  if (problem.delta > 0.0) return phi_min(problem).q_pc;

  // delta = 0: root of zeta(q1 = q2 = Q) on [0, s]; zeta(0) = zeta_max > 0
  // and zeta(s) = -s^n (1-s) < 0.
  const auto g = [&](double q) { return segment_zeta(problem, q); };
  return bisect_to_zero(g, 0.0, se, g(0.0), g(se));
}

SolutionPoint solve_at_Q(const CloningProblem& problem, double Q) {
  if (problem.infinite_clones())
    throw domain_error("solve_at_Q: requires a finite clone count (see asymptotic)");
  const double q_ud = q_unambiguous(problem);
  if (!(Q >= 0.0) || Q > q_ud + detail::kRadicandTolerance)
    throw domain_error("solve_at_Q: Q outside [0, Q_UD]");
  Q = std::min(Q, q_ud);

  const double q_pc = q_perfect_cloning(problem);
  if (Q >= q_pc - 1e-12) return perfect_point(problem, Q);
  if (problem.delta == 0.0) return segment_point_at(problem, Q);

  const ParamContext ctx = context(problem);
  const double tau0 = cot_phi_max(problem);
  if (Q <= 0.0) return point_from_raw(problem, ctx, tau0, raw_point(ctx, tau0));
  const double tau_pc = phi_min(problem).cot_phi_min;

  const auto q_of = [&](double tau) { return raw_point(ctx, tau).Q; };

  // Q(tau) is expected to increase from 0 to q_pc on [tau0, tau_pc]; verify
  // on a coarse grid and fall back to piecewise bracketing if it does not.
  bool monotone = true;
  {
    constexpr int kCheck = 64;
    double prev = 0.0;
    for (int i = 1; i <= kCheck; ++i) {
      const double q = q_of(tau0 + (tau_pc - tau0) * i / kCheck);
      if (q < prev - 1e-12) {
        monotone = false;
        break;
      }
      prev = q;
    }
  }

  double a = tau0, b = tau_pc;
  double fa = Q, fb = Q - q_pc;  // f = Q - Q(tau), positive at a
  if (!monotone) {
    // Piecewise-monotone bracketing: first crossing from the phi_max side.
    constexpr int kGrid = 1024;
    double prev_tau = tau0, prev_f = Q;
    for (int i = 1; i <= kGrid; ++i) {
      const double tau = tau0 + (tau_pc - tau0) * i / kGrid;
      const double fq = Q - q_of(tau);
      if (prev_f > 0.0 && fq <= 0.0) {
        a = prev_tau;
        b = tau;
        fa = prev_f;
        fb = fq;
        break;
      }
      prev_tau = tau;
      prev_f = fq;
    }
  }

  const auto f = [&](double tau) { return Q - q_of(tau); };
  const double tau_star = bisect_to_zero(f, a, b, fa, fb);
  return point_from_raw(problem, ctx, tau_star, raw_point(ctx, tau_star));
}

TradeoffCurve tradeoff_curve(const CloningProblem& problem, int num_points) {
  if (num_points < 2) throw domain_error("tradeoff_curve: num_points must be >= 2");
  if (problem.infinite_clones())
    throw domain_error("tradeoff_curve: requires a finite clone count");

  TradeoffCurve curve;
  curve.problem = problem;
  curve.q_ud = q_unambiguous(problem);
  curve.q_pc = q_perfect_cloning(problem);

  if (curve.q_pc > 1e-15) {
    for (int i = 0; i < num_points; ++i) {
      const double q = curve.q_pc * i / (num_points - 1);
      curve.points.push_back(solve_at_Q(problem, q));
    }
  } else {
    curve.points.push_back(solve_at_Q(problem, 0.0));
  }

  if (curve.q_ud > curve.q_pc + 1e-12) {
    const int n_plateau = std::max(2, num_points / 4);
    for (int j = 1; j <= n_plateau; ++j) {
      const double q = curve.q_pc + (curve.q_ud - curve.q_pc) * j / n_plateau;
      curve.points.push_back(solve_at_Q(problem, q));
    }
  }
  return curve;
}

}  // namespace ffr
