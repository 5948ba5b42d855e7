#pragma once

#include "ffr/problem.hpp"

namespace ffr {

/// Measurement regime of the optimal fixed-inconclusive-rate discrimination.
/// POVM: three-outcome measurement, success probability
///   P~s = (Qbar + sqrt(Qbar^2 - (Q - Q0)^2)) / (2 Qbar).
/// PROJECTIVE: two-outcome measurement (very unbalanced priors, Q beyond the
/// threshold), success probability
///   P~s = (eta2/Qbar) [(eta2-eta1)(eta2-Q) c^2 + Qbar s^2 + 2 eta1 s c R]
///         / (s^2 + delta^2 c^2),
/// with c = sqrt(1-s^2) and R = sqrt(Q Qbar - eta1 eta2 c^2).
enum class FrioRegime { kPovm, kProjective };

struct FrioQuantities {
  double q0;         ///< Q_0 = 2 sqrt(eta1 eta2) s, the UD failure rate for balanced-enough priors
  double q_th;       ///< regime threshold 2 eta1 eta2 (1-s^2) / (1 - Q_0)
  double q_ud;       ///< largest physical Q: Q_0, or Q_1 for very unbalanced priors
  double q1_bound;   ///< Q_1 = eta1 + eta2 s^2
  FrioRegime regime;
  double p_tilde_s;  ///< success probability conditioned on a conclusive outcome
  double c;          ///< sqrt(1 - s^2)
  double r;          ///< R (NaN in the POVM regime where it is not used)
};

/// Conclusive-outcome probabilities supplied by the caller and the resulting
/// measure-and-prepare fidelity
///   F = [eta1 (p1 + r1 s^{2n}) + eta2 (p2 + r2 s^{2n})] / Qbar.
struct FrioCloneFidelity {
  double p_conc_1, p_conc_2;  ///< probability of correctly identifying state k
  double r_conc_1, r_conc_2;  ///< probability of misidentifying state k
  double fidelity;
};

/// True when the priors are balanced enough (eta1 >= s^2/(1+s^2)) that the
/// three-outcome POVM is optimal for every physical Q. Equality is assigned
/// to the POVM class; both formulas agree there.
bool povm_only(const CloningProblem& problem);

double q_zero(const CloningProblem& problem);         ///< Q_0
double q_one(const CloningProblem& problem);          ///< Q_1
double q_threshold(const CloningProblem& problem);    ///< Q_th
double q_unambiguous(const CloningProblem& problem);  ///< Q_UD per prior class

/// R = sqrt(Q Qbar - eta1 eta2 (1-s^2)); throws ffr::consistency_error when
/// the radicand is negative, which signals an inconsistent regime call.
double frio_r(const CloningProblem& problem, double Q);

/// Success probability of discrimination with inconclusive rate Q, with the
/// regime dispatch and all thresholds. The prior class is decided first,
/// then the Q class. Uses the effective (bundle) overlap.
FrioQuantities frio_success(const CloningProblem& problem, double Q);

/// Fidelity of the measure-and-prepare protocol for caller-supplied
/// conclusive probabilities. The probability budget must be consistent:
/// eta1 (1-p1-r1) + eta2 (1-p2-r2) = Q within 1e-9. In the infinite-clone
/// limit s^{2n} = 0 and the fidelity reduces to (eta1 p1 + eta2 p2)/Qbar.
FrioCloneFidelity frio_clone_fidelity(const CloningProblem& problem, double p_conc_1,
                                      double p_conc_2, double r_conc_1, double r_conc_2,
                                      double Q);

}  // namespace ffr
