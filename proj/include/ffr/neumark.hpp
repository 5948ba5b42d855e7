#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "ffr/parametric.hpp"
#include "ffr/problem.hpp"

namespace ffr {

/// Explicit cloner: the two working planes (input span and clone span), the
/// basis angles, and the isometry mapping the input span into
/// (clone plane) x (success/failure flag).
///
/// Plane conventions, all real:
///   inputs   |psi_k>   = cos(alpha)|a> -(-1)^k sin(alpha)|b>, cos(2 alpha) = s
///   targets  |psi_k^n> = cos(theta)|0> -(-1)^k sin(theta)|1>, cos(2 theta) = s^n
///   clones   |Psi_k>   = cos(theta'+(-1)^k w)|0> -(-1)^k sin(theta'+(-1)^k w)|1>
/// with cos(2 theta') = s' and w the basis rotation angle. The failure state
/// is the rotated basis vector |0'> = cos(w)|0> - sin(w)|1>, shared by both
/// inputs. The isometry is 4x2: columns are the images of {|a>, |b>} in the
/// output basis {|0,succ>, |1,succ>, |0,fail>, |1,fail>}.
struct ClonerRealization {
  double theta;        ///< cos(2 theta) = s^n
  double theta_prime;  ///< cos(2 theta') = s'
  double omega;        ///< optimal basis rotation
  double p1, p2;       ///< success probabilities
  double q1, q2;       ///< failure probabilities
  double s_prime;      ///< clone overlap, rederived from the split via unitarity
  double eta1_post, eta2_post;

  Eigen::Matrix<double, 4, 2> isometry;
  Eigen::Vector2d failure_state;  ///< |Phi> in clone-plane coordinates
  Eigen::Vector2d input1, input2;
  Eigen::Vector2d target1, target2;
  Eigen::Vector2d clone1, clone2;
  double gram_residual;  ///< max |A^T A - I|, verified <= 1e-10
};

/// Rotation angle maximizing the conditional fidelity:
///   2 w = atan2(delta_post sin(2 theta - 2 theta'), cos(2 theta - 2 theta')).
/// Zero for delta_post = 0 or theta = theta'.
double optimal_omega(double theta, double theta_prime, double delta_post);

/// Builds the explicit cloner for a solution point (finite n). The clone
/// overlap is rederived from (q1, q2) via the unitarity constraint so the
/// column Gram matrix is the identity to rounding; a residual above 1e-10
/// signals inconsistent inputs and throws.
ClonerRealization build_realization(const CloningProblem& problem,
                                    const SolutionPoint& point);

struct MonteCarloReport {
  long shots;
  std::uint64_t seed;
  double observed_q;      ///< empirical failure rate
  double observed_q_err;  ///< binomial standard error
  double observed_f;      ///< mean conditional fidelity over successes
  double observed_f_err;  ///< sample standard error
  double q1_hat, q1_err;  ///< per-state failure estimates
  double q2_hat, q2_err;
  long draws_1, draws_2;
  long failures;
};

/// Samples the cloner: per shot draw the input state by its prior, apply the
/// isometry, read the flag from the output amplitudes, and on success record
/// the exact overlap-squared with the perfect-clone target. Deterministic
/// for a fixed seed (mt19937_64; uniform doubles take the top 53 bits).
MonteCarloReport monte_carlo(const ClonerRealization& realization,
                             const CloningProblem& problem, long shots,
                             std::uint64_t seed);

}  // namespace ffr
