#pragma once

#include "ffr/problem.hpp"

namespace ffr {

struct OracleResult {
  double zeta_min;       ///< smallest non-negative zeta found (0 if clamped)
  double q1, q2;         ///< minimizing allocation on the constraint line
  long evaluations;      ///< number of zeta evaluations
  double resolution;     ///< final refinement width in q1
  bool perfect_cloning;  ///< raw minimum was negative, so zeta = 0 is achievable
};

/// Ground-truth minimizer of zeta over the line eta1 q1 + eta2 q2 = Q.
///
/// q1 is scanned over its physical range [max(0, (Q-eta2)/eta1), min(1, Q/eta1)]
/// on a coarse grid (unimodality is not assumed), then the best cell is
/// refined by golden-section search over a three-cell window down to a
/// width of 1e-12. Grid points whose radicand is negative are skipped;
/// if no grid point is feasible a domain error is thrown.
OracleResult brute_force_zeta_min(const CloningProblem& problem, double Q,
                                  int coarse_points = 2001);

}  // namespace ffr
