#include "ffr/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ffr/frio.hpp"
#include "ffr/parametric.hpp"

namespace ffr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Detection floor for the second-derivative gap; well below the O(1..10)
// jumps the threshold produces and well above differencing roundoff at the
// permitted steps.
constexpr double kGapFloor = 1e-2;

double segment_top_zeta(const CloningProblem& problem, double Q) {
  const double s = detail::effective_overlap(problem);
  const double c = std::sqrt(1.0 - s * s);
  const double d = problem.delta;
  const double four_eta = detail::four_eta_product(problem);
  const double r = frio_r(problem, Q);
  const double bracket = 2.0 * (d * d - Q) + (1.0 + s * s) * four_eta;
  return (s * bracket - 2.0 * d * c * r) / (2.0 * (s * s + d * d * c * c));
}

}  // namespace

AsymptoticSolution asymptotic_solution(const CloningProblem& problem, double Q) {
  if (!problem.infinite_clones())
    throw domain_error("asymptotic_solution: problem must request infinite clones");
  const double q_ud = q_unambiguous(problem);
  if (!(Q >= 0.0) || Q > q_ud + detail::kRadicandTolerance)
    throw domain_error("asymptotic_solution: Q outside [0, Q_UD]");
  Q = std::min(Q, q_ud);

  AsymptoticSolution sol;
  sol.Q = Q;
  if (povm_only(problem) || Q <= q_threshold(problem)) {
    sol.regime = AsymptoticRegime::kVertexTangent;
    sol.zeta_min = (q_zero(problem) - Q) / detail::root_four_eta(problem);
  } else {
    sol.regime = AsymptoticRegime::kSegmentTop;
    sol.zeta_min = segment_top_zeta(problem, Q);
  }
  if (sol.zeta_min < 0.0) {
    if (sol.zeta_min < -detail::kRadicandTolerance)
      throw consistency_error("asymptotic_solution: negative zeta_min");
    sol.zeta_min = 0.0;
  }
  sol.fidelity = fidelity_from_zeta(problem, Q, sol.zeta_min).fidelity;
  sol.segment_u = detail::effective_overlap(problem) - sol.zeta_min;
  return sol;
}

IdentityPair perfect_square_identity_check(const CloningProblem& problem, double Q) {
  if (!problem.infinite_clones())
    throw domain_error("perfect_square_identity_check: infinite-clone limit only");
  if (povm_only(problem) || Q < q_threshold(problem))
    throw domain_error("perfect_square_identity_check: requires the segment-top regime");
  if (Q > q_unambiguous(problem) + detail::kRadicandTolerance)
    throw domain_error("perfect_square_identity_check: Q outside [0, Q_UD]");

  const double s = detail::effective_overlap(problem);
  const double c = std::sqrt(1.0 - s * s);
  const double d = problem.delta;
  const double four_eta = detail::four_eta_product(problem);
  const double r = frio_r(problem, Q);
  const double zeta = segment_top_zeta(problem, Q);
  const double qbar = 1.0 - Q;

  IdentityPair pair;
  pair.lhs = qbar * qbar - four_eta * zeta * zeta;
  const double bracket =
      2.0 * s * c * four_eta * r + d * (2.0 * (d * d - Q) + (1.0 + s * s) * four_eta);
  const double den = 2.0 * (s * s + d * d * c * c);
  pair.rhs = (bracket / den) * (bracket / den);
  return pair;
}

ConvergenceScan convergence_scan(const CloningProblem& problem, double Q,
                                 const std::vector<int>& n_list) {
  ConvergenceScan scan;
  CloningProblem p = problem;
  for (int n : n_list) {
    if (n == CloningProblem::kInfiniteClones)
      throw domain_error("convergence_scan: n_list entries must be finite");
    p.n = n;
    scan.finite.emplace_back(n, solve_at_Q(p, Q).fidelity);
  }
  p.n = CloningProblem::kInfiniteClones;
  scan.f_infinity = asymptotic_solution(p, Q).fidelity;
  return scan;
}

namespace {

double fidelity_at(const CloningProblem& problem, double Q) {
  return problem.infinite_clones() ? asymptotic_solution(problem, Q).fidelity
                                   : solve_at_Q(problem, Q).fidelity;
}

PhaseScanSample sample_at(const CloningProblem& problem, double q, double h) {
  PhaseScanSample s;
  s.q = q;
  s.step = h;
  const double f0 = fidelity_at(problem, q);
  s.d2_left =
      (f0 - 2.0 * fidelity_at(problem, q - h) + fidelity_at(problem, q - 2.0 * h)) /
      (h * h);
  s.d2_right =
      (fidelity_at(problem, q + 2.0 * h) - 2.0 * fidelity_at(problem, q + h) + f0) /
      (h * h);
  s.gap = std::abs(s.d2_right - s.d2_left);
  return s;
}

}  // namespace

PhaseScanReport phase_transition_scan(const CloningProblem& problem, double q_grid_step) {
  if (!(q_grid_step >= 1e-5) || !(q_grid_step <= 1e-2))
    throw domain_error("phase_transition_scan: step must lie in [1e-5, 1e-2]");

  PhaseScanReport rep;
  rep.unbalanced = !povm_only(problem);
  rep.q_th = q_threshold(problem);
  rep.q_ud = q_unambiguous(problem);
  rep.transition_detected = false;
  rep.detected_q = kNaN;
  rep.gap_estimate = 0.0;
  rep.noise_estimate = 0.0;

  std::vector<double> candidates;
  if (rep.unbalanced) {
    if (rep.q_th < 2.0 * q_grid_step || rep.q_ud - rep.q_th < 2.0 * q_grid_step)
      throw domain_error(
          "phase_transition_scan: step too coarse to resolve Q_th from the boundaries");
    candidates.push_back(rep.q_th);
  } else {
    // No threshold inside the physical range: sweep the interior to confirm
    // the curve is free of second-derivative jumps.
    constexpr int kSweep = 19;
    for (int i = 1; i <= kSweep; ++i) {
      const double q = rep.q_ud * i / (kSweep + 1);
      if (q - 2.0 * q_grid_step > 0.0 && q + 2.0 * q_grid_step < rep.q_ud)
        candidates.push_back(q);
    }
  }

  for (double q : candidates) {
    const PhaseScanSample coarse = sample_at(problem, q, q_grid_step);
    const PhaseScanSample fine = sample_at(problem, q, 0.5 * q_grid_step);
    rep.samples.push_back(coarse);
    rep.samples.push_back(fine);
    const double noise = std::abs(coarse.gap - fine.gap);
    const bool detected = fine.gap > 10.0 * noise && fine.gap > kGapFloor;
    if (detected && fine.gap > rep.gap_estimate) {
      rep.transition_detected = true;
      rep.detected_q = q;
      rep.gap_estimate = fine.gap;
      rep.noise_estimate = noise;
    }
  }
  return rep;
}

}  // namespace ffr
