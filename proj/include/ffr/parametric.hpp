#pragma once

#include <vector>

#include "ffr/problem.hpp"

namespace ffr {

enum class SolutionRegime {
  kTangent,  ///< ellipse-parabola tangency branch (delta > 0, Q < q_pc)
  kSegment,  ///< equal-priors branch q1 = q2 = Q (delta = 0)
  kPerfect,  ///< plateau Q >= q_pc: zeta = 0, fidelity = 1
};

/// One point of the optimal tradeoff curve.
struct SolutionPoint {
  SolutionRegime regime;
  double phi;       ///< ellipse parameter in (0, pi); NaN off the tangency branch
  double Q;
  double zeta_min;
  double fidelity;
  double u_star;    ///< tangency point, geometric-mean coordinate
  double v_star;    ///< tangency point, arithmetic-mean coordinate
  double q1_star;   ///< recovered failure split (state 1, the less likely one)
  double q2_star;
  double s_prime;   ///< clone overlap at the optimum
};

struct PhiMinResult {
  double phi_min;      ///< lower end of the optimal phi interval
  double cot_phi_min;  ///< same point in the cotangent parameterization
  double q_pc;         ///< failure rate of perfect cloning, Q at phi_min
};

/// cot(phi_max) in closed form:
///   cot(phi_max) = -[s + sqrt((1-s^2)/gamma_n)] sqrt(1-delta^2)/delta.
/// phi_max is the deterministic endpoint: Q(phi_max) = 0.
/// Requires delta > 0, s > 0 and finite n.
double cot_phi_max(const CloningProblem& problem);

double phi_max(const CloningProblem& problem);

/// Lower endpoint of the phi interval: the root of zeta_min(phi) = 0,
/// located by bracketed bisection refined with secant steps until
/// |zeta_min| < 1e-12 (200-iteration cap). For n = 1 (or an otherwise
/// vanishing zeta_max) perfect cloning is free and {phi_max, 0} is returned.
PhiMinResult phi_min(const CloningProblem& problem);

/// Optimal solution at ellipse parameter phi in (phi_min, phi_max].
/// Throws for phi above phi_max (negative failure rate) or below phi_min
/// (negative zeta: the perfect-cloning regime).
SolutionPoint solution_at_phi(const CloningProblem& problem, double phi);

/// Same computation parameterized by cot(phi). The cotangent form does not
/// lose resolution when phi_max crowds against pi (small delta or large n),
/// so prefer it for extreme parameters; all internal solvers use it.
SolutionPoint solution_at_cot_phi(const CloningProblem& problem, double cot_phi);

/// Failure rate of perfect probabilistic cloning, i.e. the smallest Q with
/// zeta_min(Q) = 0. Numeric for delta > 0 (via phi_min); for delta = 0 it is
/// the root of zeta(q1 = q2 = Q) along the segment branch.
double q_perfect_cloning(const CloningProblem& problem);

/// Inverts the parametric map Q(phi) at a prescribed failure rate
/// (|dQ| < 1e-12). For Q >= q_pc returns the perfect-cloning point: zeta = 0,
/// fidelity = 1, and a failure split realizing it on the constraint line.
SolutionPoint solve_at_Q(const CloningProblem& problem, double Q);

struct TradeoffCurve {
  CloningProblem problem;
  std::vector<SolutionPoint> points;  ///< ordered by increasing Q
  double q_pc;
  double q_ud;
};

/// The full F(Q) curve: `num_points` samples near-uniform in Q on the
/// optimal branch [0, q_pc], followed by the perfect-cloning plateau up to
/// Q_UD.
TradeoffCurve tradeoff_curve(const CloningProblem& problem, int num_points);

}  // namespace ffr
