#include "ffr/frio.hpp"

#include <cmath>
#include <limits>

namespace ffr {

namespace {

double effective_s(const CloningProblem& problem) {
  return detail::effective_overlap(problem);
}

}  // namespace

bool povm_only(const CloningProblem& problem) {
  const double s = effective_s(problem);
  return problem.eta1 >= s * s / (1.0 + s * s);
}

double q_zero(const CloningProblem& problem) {
  return detail::root_four_eta(problem) * effective_s(problem);
}

double q_one(const CloningProblem& problem) {
  const double s = effective_s(problem);
  return problem.eta1 + problem.eta2 * s * s;
}

double q_threshold(const CloningProblem& problem) {
  const double s = effective_s(problem);
  return 2.0 * problem.eta1 * problem.eta2 * (1.0 - s * s) / (1.0 - q_zero(problem));
}

double q_unambiguous(const CloningProblem& problem) {
  return povm_only(problem) ? q_zero(problem) : q_one(problem);
}

double frio_r(const CloningProblem& problem, double Q) {
  const double s = effective_s(problem);
  const double rad = Q * (1.0 - Q) - problem.eta1 * problem.eta2 * (1.0 - s * s);
  if (rad < -detail::kRadicandTolerance)
    throw consistency_error("frio_r: imaginary R (inconsistent regime call)");
  return std::sqrt(std::max(0.0, rad));
}

FrioQuantities frio_success(const CloningProblem& problem, double Q) {
  FrioQuantities f;
  f.q0 = q_zero(problem);
  f.q_th = q_threshold(problem);
  f.q1_bound = q_one(problem);
  f.q_ud = q_unambiguous(problem);
  f.c = detail::overlap_powers(problem).c;
  f.r = std::numeric_limits<double>::quiet_NaN();

  if (!(Q >= 0.0) || Q > f.q_ud + detail::kRadicandTolerance)
    throw domain_error("frio_success: Q outside the physical range [0, Q_UD]");
  Q = std::min(Q, f.q_ud);
  const double qbar = 1.0 - Q;
  const double s = effective_s(problem);

  if (povm_only(problem) || Q <= f.q_th) {
    f.regime = FrioRegime::kPovm;
    const double diff = Q - f.q0;
    const double disc =
        detail::checked_radicand(qbar * qbar - diff * diff, "frio_success");
    f.p_tilde_s = (qbar + std::sqrt(disc)) / (2.0 * qbar);
  } else {
    f.regime = FrioRegime::kProjective;
    f.r = frio_r(problem, Q);
    const double c2 = f.c * f.c;
    const double num = (problem.eta2 - problem.eta1) * (problem.eta2 - Q) * c2 +
                       qbar * s * s + 2.0 * problem.eta1 * s * f.c * f.r;
    const double den = s * s + problem.delta * problem.delta * c2;
    f.p_tilde_s = problem.eta2 / qbar * num / den;
  }
  return f;
}

FrioCloneFidelity frio_clone_fidelity(const CloningProblem& problem, double p_conc_1,
                                      double p_conc_2, double r_conc_1, double r_conc_2,
                                      double Q) {
  for (double x : {p_conc_1, p_conc_2, r_conc_1, r_conc_2})
    if (!(x >= 0.0) || !(x <= 1.0))
      throw domain_error("frio_clone_fidelity: probabilities must lie in [0, 1]");
  if (p_conc_1 + r_conc_1 > 1.0 + 1e-12 || p_conc_2 + r_conc_2 > 1.0 + 1e-12)
    throw domain_error("frio_clone_fidelity: per-state conclusive budget exceeds 1");
  const double budget = problem.eta1 * (1.0 - p_conc_1 - r_conc_1) +
                        problem.eta2 * (1.0 - p_conc_2 - r_conc_2);
  if (std::abs(budget - Q) > 1e-9)
    throw consistency_error("frio_clone_fidelity: inconclusive budget does not match Q");

  const auto pw = detail::overlap_powers(problem);
  const double s2n = pw.se2n;
  const double qbar = 1.0 - Q;
  FrioCloneFidelity out;
  out.p_conc_1 = p_conc_1;
  out.p_conc_2 = p_conc_2;
  out.r_conc_1 = r_conc_1;
  out.r_conc_2 = r_conc_2;
  out.fidelity = (problem.eta1 * (p_conc_1 + r_conc_1 * s2n) +
                  problem.eta2 * (p_conc_2 + r_conc_2 * s2n)) /
                 qbar;
  return out;
}

}  // namespace ffr
