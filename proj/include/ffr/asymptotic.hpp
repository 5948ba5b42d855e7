#pragma once

#include <vector>

#include "ffr/problem.hpp"

namespace ffr {

/// Tangency regime of the many-clone limit, where the constant-zeta parabolas
/// collapse to vertical segments at u = s - zeta.
enum class AsymptoticRegime {
  kVertexTangent,  ///< Q < Q_th: ellipse touches the segment at its vertex
  kSegmentTop,     ///< Q >= Q_th: ellipse touches the top of the segment
};

struct AsymptoticSolution {
  double Q;
  AsymptoticRegime regime;
  double zeta_min;
  double fidelity;
  double segment_u;  ///< abscissa s - zeta_min of the limiting vertical segment
};

/// Optimal solution in the infinite-clone limit (problem.n must be
/// kInfiniteClones). Vertex regime: 2 sqrt(eta1 eta2) zeta_min = Q_0 - Q.
/// Segment-top regime:
///   zeta_min = (s [2(delta^2-Q) + (1+s^2)(1-delta^2)] - 2 delta c R)
///              / (2 (s^2 + delta^2 c^2)).
/// The fidelity follows from the same zeta -> F map as at finite n.
AsymptoticSolution asymptotic_solution(const CloningProblem& problem, double Q);

struct IdentityPair {
  double lhs;  ///< Qbar^2 - 4 eta1 eta2 zeta_min^2
  double rhs;  ///< the equivalent perfect-square form
};

/// Both sides of the perfect-square identity for the segment-top branch:
///   Qbar^2 - 4 eta1 eta2 zeta_min^2 =
///     {2 s c (1-delta^2) R + delta [2(delta^2-Q) + (1+s^2)(1-delta^2)]}^2
///     / (4 (s^2 + delta^2 c^2)^2).
/// Requires the segment-top regime (unbalanced priors, Q >= Q_th).
IdentityPair perfect_square_identity_check(const CloningProblem& problem, double Q);

struct ConvergenceScan {
  std::vector<std::pair<int, double>> finite;  ///< (n, fidelity) per requested n
  double f_infinity;
};

/// Finite-n fidelities at fixed Q next to their infinite-clone limit.
ConvergenceScan convergence_scan(const CloningProblem& problem, double Q,
                                 const std::vector<int>& n_list);

struct PhaseScanSample {
  double q;         ///< candidate location
  double step;
  double d2_left;   ///< one-sided second difference from below
  double d2_right;  ///< one-sided second difference from above
  double gap;       ///< |d2_right - d2_left|
};

struct PhaseScanReport {
  bool unbalanced;      ///< priors admit a regime threshold inside (0, Q_UD)
  double q_th;
  double q_ud;
  std::vector<PhaseScanSample> samples;
  bool transition_detected;
  double detected_q;      ///< candidate where detected (NaN if none)
  double gap_estimate;    ///< stable gap at the detected candidate
  double noise_estimate;  ///< step-halving change used as the noise floor
};

/// Probes the fidelity curve for a second-derivative discontinuity. For
/// unbalanced priors the candidate is the threshold Q_th; for balanced priors
/// an interior grid is swept to confirm absence. A discontinuity is reported
/// only when the one-sided second-difference gap is stable under step
/// halving (gap > 10x the halving change) and above an absolute floor.
/// Works for both the infinite-clone limit and finite n (where the gap must
/// vanish with the step).
PhaseScanReport phase_transition_scan(const CloningProblem& problem, double q_grid_step);

}  // namespace ffr
