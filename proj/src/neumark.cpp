#include "ffr/neumark.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>

namespace ffr {

namespace {

constexpr double kGramTolerance = 1e-10;

double clamped_acos_half(double x) { return 0.5 * std::acos(std::clamp(x, -1.0, 1.0)); }

}  // namespace

double optimal_omega(double theta, double theta_prime, double delta_post) {
  const double d = 2.0 * (theta - theta_prime);
  return 0.5 * std::atan2(delta_post * std::sin(d), std::cos(d));
}

ClonerRealization build_realization(const CloningProblem& problem,
                                    const SolutionPoint& point) {
  if (problem.infinite_clones())
    throw domain_error("build_realization: requires a finite clone count");
  const auto pw = detail::overlap_powers(problem);

  ClonerRealization r;
  r.q1 = std::clamp(point.q1_star, 0.0, 1.0);
  r.q2 = std::clamp(point.q2_star, 0.0, 1.0);
  r.p1 = 1.0 - r.q1;
  r.p2 = 1.0 - r.q2;
  const double root_p1p2 = std::sqrt(r.p1 * r.p2);
  if (!(root_p1p2 > 0.0))
    throw domain_error("build_realization: vanishing success probability");

  // Unitarity fixes the clone overlap for this split; using it (rather than
  // the point's reported s') makes the column Gram condition exact.
  const double u = std::sqrt(r.q1 * r.q2);
  r.s_prime = (pw.se - u) / root_p1p2;
  if (r.s_prime < -1e-9 || r.s_prime > 1.0 + 1e-9)
    throw consistency_error("build_realization: clone overlap escaped [0, 1]");
  r.s_prime = std::clamp(r.s_prime, 0.0, 1.0);

  const double qbar = problem.eta1 * r.p1 + problem.eta2 * r.p2;
  r.eta1_post = problem.eta1 * r.p1 / qbar;
  r.eta2_post = problem.eta2 * r.p2 / qbar;

  r.theta = clamped_acos_half(pw.sen);
  r.theta_prime = clamped_acos_half(r.s_prime);
  r.omega = optimal_omega(r.theta, r.theta_prime, r.eta2_post - r.eta1_post);

  const double alpha = clamped_acos_half(pw.se);
  r.input1 << std::cos(alpha), std::sin(alpha);
  r.input2 << std::cos(alpha), -std::sin(alpha);
  r.target1 << std::cos(r.theta), std::sin(r.theta);
  r.target2 << std::cos(r.theta), -std::sin(r.theta);
  r.clone1 << std::cos(r.theta_prime - r.omega), std::sin(r.theta_prime - r.omega);
  r.clone2 << std::cos(r.theta_prime + r.omega), -std::sin(r.theta_prime + r.omega);
  r.failure_state << std::cos(r.omega), -std::sin(r.omega);

  Eigen::Vector4d w1, w2;
  w1 << std::sqrt(r.p1) * r.clone1, std::sqrt(r.q1) * r.failure_state;
  w2 << std::sqrt(r.p2) * r.clone2, std::sqrt(r.q2) * r.failure_state;

  // Linear extension of the action on the two inputs to the whole plane.
  r.isometry.col(0) = (w1 + w2) / (2.0 * std::cos(alpha));
  r.isometry.col(1) = (w1 - w2) / (2.0 * std::sin(alpha));

  const Eigen::Matrix2d gram = r.isometry.transpose() * r.isometry;
  r.gram_residual = (gram - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
  if (r.gram_residual > kGramTolerance)
    throw consistency_error("build_realization: column Gram condition violated");
  return r;
}

MonteCarloReport monte_carlo(const ClonerRealization& realization,
                             const CloningProblem& problem, long shots,
                             std::uint64_t seed) {
  if (shots < 1) throw domain_error("monte_carlo: shots must be >= 1");

  std::mt19937_64 rng(seed);
  const auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  const Eigen::Vector4d out1 = realization.isometry * realization.input1;
  const Eigen::Vector4d out2 = realization.isometry * realization.input2;
  const double ps1 = out1.head<2>().squaredNorm();
  const double ps2 = out2.head<2>().squaredNorm();
  const double fid1 =
      std::pow(realization.target1.dot(out1.head<2>().normalized()), 2);
  const double fid2 =
      std::pow(realization.target2.dot(out2.head<2>().normalized()), 2);

  long draws1 = 0, fails1 = 0, fails2 = 0;
  long successes = 0;
  double fid_sum = 0.0, fid_sumsq = 0.0;
  for (long i = 0; i < shots; ++i) {
    const bool first = uniform() < problem.eta1;
    draws1 += first;
    const double ps = first ? ps1 : ps2;
    if (uniform() < ps) {
      ++successes;
      const double f = first ? fid1 : fid2;
      fid_sum += f;
      fid_sumsq += f * f;
    } else {
      (first ? fails1 : fails2) += 1;
    }
  }
  const long draws2 = shots - draws1;
  const long failures = fails1 + fails2;

  MonteCarloReport rep;
  rep.shots = shots;
  rep.seed = seed;
  rep.draws_1 = draws1;
  rep.draws_2 = draws2;
  rep.failures = failures;
  rep.observed_q = static_cast<double>(failures) / shots;
  rep.observed_q_err =
      std::sqrt(rep.observed_q * (1.0 - rep.observed_q) / shots);
  if (successes > 0) {
    rep.observed_f = fid_sum / successes;
    const double var =
        successes > 1
            ? std::max(0.0, (fid_sumsq - fid_sum * fid_sum / successes) / (successes - 1))
            : 0.0;
    rep.observed_f_err = std::sqrt(var / successes);
  } else {
    rep.observed_f = std::numeric_limits<double>::quiet_NaN();
    rep.observed_f_err = std::numeric_limits<double>::quiet_NaN();
  }
  const auto binom = [](long k, long n) {
    const double p = n > 0 ? static_cast<double>(k) / n : std::numeric_limits<double>::quiet_NaN();
    return std::pair<double, double>{p, n > 0 ? std::sqrt(p * (1.0 - p) / n) : p};
  };
  std::tie(rep.q1_hat, rep.q1_err) = binom(fails1, draws1);
  std::tie(rep.q2_hat, rep.q2_err) = binom(fails2, draws2);
  return rep;
}

}  // namespace ffr
