#include "ffr/problem.hpp"

#include <cmath>
#include <string>

namespace ffr {

namespace detail {

double checked_radicand(double x, const char* what) {
  if (x >= 0.0) return x;
  if (x >= -kRadicandTolerance) return 0.0;
  throw domain_error(std::string(what) + ": radicand " + std::to_string(x) +
                     " below tolerance");
}

double pow_int(double s, int k) {
  double acc = 1.0;
  double base = s;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) acc *= base;
    base *= base;
  }
  return acc;
}

double effective_overlap(const CloningProblem& problem) {
  return pow_int(problem.s, problem.m);
}

OverlapPowers overlap_powers(const CloningProblem& problem) {
  OverlapPowers p;
  p.se = effective_overlap(problem);
  if (problem.infinite_clones()) {
    p.sen = 0.0;
    p.se2n = 0.0;
  } else {
    p.sen = pow_int(p.se, problem.n);
    p.se2n = p.sen * p.sen;
  }
  p.rt_1m2n = std::sqrt(1.0 - p.se2n);
  p.c = std::sqrt(1.0 - p.se * p.se);
  return p;
}

}  // namespace detail

CloningProblem make_problem(double overlap, double eta1, int n, int m) {
  CloningProblem p;
  p.s = std::abs(overlap);
  if (!(p.s < 1.0))
    throw domain_error("make_problem: |overlap| must be < 1 (identical states rejected)");
  if (!(eta1 > 0.0) || !(eta1 < 1.0))
    throw domain_error("make_problem: eta1 must lie in (0, 1)");
  p.relabeled = eta1 > 0.5;
  p.eta1 = p.relabeled ? 1.0 - eta1 : eta1;
  p.eta2 = 1.0 - p.eta1;
  p.delta = p.eta2 - p.eta1;
  if (m < 1) throw domain_error("make_problem: m must be >= 1");
  if (n != CloningProblem::kInfiniteClones && n < m)
    throw domain_error("make_problem: need n >= m (or n = kInfiniteClones)");
  p.m = m;
  p.n = n;
  return p;
}

CloningProblem make_problem_delta(double overlap, double delta, int n, int m) {
  if (!(delta >= 0.0) || !(delta < 1.0))
    throw domain_error("make_problem_delta: delta must lie in [0, 1)");
  return make_problem(overlap, (1.0 - delta) / 2.0, n, m);
}

CloningProblem effective_problem(const CloningProblem& problem) {
  if (problem.m == 1) return problem;
  CloningProblem eff = problem;
  eff.s = detail::effective_overlap(problem);
  eff.m = 1;
  return eff;
}

FailureAllocation make_allocation(const CloningProblem& problem, double q1, double q2) {
  if (!(q1 >= 0.0) || !(q1 <= 1.0) || !(q2 >= 0.0) || !(q2 <= 1.0))
    throw domain_error("make_allocation: failure probabilities must lie in [0, 1]");
  FailureAllocation a;
  a.q1 = q1;
  a.q2 = q2;
  a.Q = problem.eta1 * q1 + problem.eta2 * q2;
  a.Qbar = 1.0 - a.Q;
  a.u = std::sqrt(q1 * q2);
  a.v = 0.5 * (q1 + q2);
  return a;
}

double zeta_of_allocation(const CloningProblem& problem, const FailureAllocation& alloc) {
  if (problem.infinite_clones())
    throw domain_error("zeta_of_allocation: requires a finite clone count");
  const auto p = detail::overlap_powers(problem);
  const double rad = detail::checked_radicand(
      1.0 - p.se * p.se + 2.0 * p.se * alloc.u - (alloc.q1 + alloc.q2),
      "zeta_of_allocation");
  return (p.se - alloc.u) * p.rt_1m2n - p.sen * std::sqrt(rad);
}

double zeta_max(const CloningProblem& problem) {
  if (problem.infinite_clones()) {
    // gamma_n -> 0: the parabolas become vertical segments and the
    // zero-failure objective tends to the bundle overlap itself.
    return detail::effective_overlap(problem);
  }
  const auto p = detail::overlap_powers(problem);
  return p.se * p.rt_1m2n - p.sen * p.c;
}

namespace {

FidelityResult fidelity_common(const CloningProblem& problem, double Q, double Qbar,
                               double zeta) {
  if (!(Q >= 0.0) || !(Q < 1.0))
    throw domain_error("fidelity_from_zeta: Q must lie in [0, 1)");
  if (zeta < 0.0) {
    if (zeta < -detail::kRadicandTolerance)
      throw domain_error("fidelity_from_zeta: zeta must be non-negative");
    zeta = 0.0;
  }
  const double disc = detail::checked_radicand(
      Qbar * Qbar - detail::four_eta_product(problem) * zeta * zeta,
      "fidelity_from_zeta");
  FidelityResult r;
  r.zeta = zeta;
  r.fidelity = zeta == 0.0 ? 1.0 : (Qbar + std::sqrt(disc)) / (2.0 * Qbar);
  return r;
}

}  // namespace

FidelityResult fidelity_from_zeta(const CloningProblem& problem, double Q, double zeta) {
  FidelityResult r = fidelity_common(problem, Q, 1.0 - Q, zeta);
  r.eta1_post = problem.eta1;
  r.eta2_post = problem.eta2;
  r.delta_post = problem.delta;
  return r;
}

FidelityResult fidelity_from_zeta(const CloningProblem& problem,
                                  const FailureAllocation& alloc, double zeta) {
  FidelityResult r = fidelity_common(problem, alloc.Q, alloc.Qbar, zeta);
  r.eta1_post = problem.eta1 * (1.0 - alloc.q1) / alloc.Qbar;
  r.eta2_post = problem.eta2 * (1.0 - alloc.q2) / alloc.Qbar;
  r.delta_post = r.eta2_post - r.eta1_post;
  return r;
}

}  // namespace ffr
