#pragma once

#include <cmath>

#include "ffr/errors.hpp"

namespace ffr {

/// A two-state cloning problem: two known pure states with real overlap
/// `s`, prior probabilities (eta1, eta2), and a request to turn `m` copies
/// into `n` clones.
///
/// Conventions applied at construction:
///  - the overlap's phase is immaterial, so `s` is stored as a magnitude;
///  - state labels are canonicalized so that eta1 <= eta2 (a swap is
///    recorded in `relabeled` so per-state quantities can be mapped back);
///  - `n == kInfiniteClones` selects the many-clone limit, served by the
///    asymptotic routines only.
struct CloningProblem {
  static constexpr int kInfiniteClones = -1;

  double s;        ///< single-copy input overlap, 0 <= s < 1
  int m;           ///< number of input copies, >= 1
  int n;           ///< number of clones, n >= m, or kInfiniteClones
  double eta1;     ///< prior of state 1, 0 < eta1 <= 1/2
  double eta2;     ///< prior of state 2, eta2 = 1 - eta1
  double delta;    ///< eta2 - eta1, in [0, 1)
  bool relabeled;  ///< true if the constructor swapped the state labels

  bool infinite_clones() const { return n == kInfiniteClones; }
};

CloningProblem make_problem(double overlap, double eta1, int n, int m = 1);

/// Same as make_problem but parameterized by the prior gap delta = eta2 - eta1.
CloningProblem make_problem_delta(double overlap, double delta, int n, int m = 1);

/// The m->n problem restated as a 1->n problem on the m-copy bundles:
/// overlap s^m, m = 1, n unchanged. Identity when m == 1.
CloningProblem effective_problem(const CloningProblem& problem);

/// A point on the failure-probability constraint line, together with the
/// derived means used by the conic picture.
struct FailureAllocation {
  double q1;    ///< failure probability on state 1
  double q2;    ///< failure probability on state 2
  double Q;     ///< eta1*q1 + eta2*q2
  double Qbar;  ///< 1 - Q
  double u;     ///< sqrt(q1*q2), geometric mean
  double v;     ///< (q1+q2)/2, arithmetic mean
};

FailureAllocation make_allocation(const CloningProblem& problem, double q1, double q2);

/// Conditional-fidelity evaluation at a given objective value zeta.
struct FidelityResult {
  double zeta;
  double fidelity;    ///< average global fidelity conditioned on success
  double eta1_post;   ///< posterior prior of state 1 given success
  double eta2_post;
  double delta_post;  ///< eta2_post - eta1_post
};

/// The prior-independent objective
///   zeta = (s - u) sqrt(1 - s^{2n}) - s^n sqrt(1 - s^2 + 2 s u - (q1+q2))
/// evaluated with the problem's effective (bundle) overlap. Throws
/// ffr::domain_error when the second radicand is negative beyond tolerance,
/// i.e. the allocation is not physically realizable for this overlap.
/// May return a negative value; callers decide feasibility.
double zeta_of_allocation(const CloningProblem& problem, const FailureAllocation& alloc);

/// zeta at the zero-failure allocation q1 = q2 = 0:
///   zeta_max = s sqrt(1 - s^{2n}) - s^n sqrt(1 - s^2).
/// The largest value the constrained minimum can take (attained at Q = 0).
double zeta_max(const CloningProblem& problem);

/// Maximum conditional fidelity for failure rate Q at objective value zeta:
///   F = (Qbar + sqrt(Qbar^2 - 4 eta1 eta2 zeta^2)) / (2 Qbar).
/// F = 1 exactly when zeta = 0. Throws when the discriminant is negative
/// beyond tolerance (construction infeasible).
///
/// This overload does not know the individual failure split, so the
/// posterior fields are filled with the priors themselves; that is exact
/// for an equal split q1 = q2 and a placeholder otherwise. Use the
/// allocation overload when the split is known.
FidelityResult fidelity_from_zeta(const CloningProblem& problem, double Q, double zeta);

/// Full-posterior overload: eta_k_post = eta_k (1 - q_k) / Qbar.
FidelityResult fidelity_from_zeta(const CloningProblem& problem,
                                  const FailureAllocation& alloc, double zeta);

namespace detail {

/// Radicand policy: values in [-kRadicandTolerance, 0) are rounding noise
/// and clamp to zero; anything below is a hard domain error.
inline constexpr double kRadicandTolerance = 1e-12;

double checked_radicand(double x, const char* what);

/// s^k for integer k >= 0.
double pow_int(double s, int k);

/// Effective single-input overlap s^m.
double effective_overlap(const CloningProblem& problem);

/// 4 eta1 eta2 == 1 - delta^2; the single definition used everywhere.
inline double four_eta_product(const CloningProblem& problem) {
  return 4.0 * problem.eta1 * problem.eta2;
}

/// 2 sqrt(eta1 eta2) == sqrt(1 - delta^2).
inline double root_four_eta(const CloningProblem& problem) {
  return std::sqrt(four_eta_product(problem));
}

/// Per-problem overlap powers shared by the formula evaluators.
struct OverlapPowers {
  double se;       ///< effective input overlap s^m
  double sen;      ///< se^n (0 in the infinite-clone limit)
  double se2n;     ///< se^{2n}
  double rt_1m2n;  ///< sqrt(1 - se^{2n})
  double c;        ///< sqrt(1 - se^2)
};

OverlapPowers overlap_powers(const CloningProblem& problem);

}  // namespace detail
}  // namespace ffr
