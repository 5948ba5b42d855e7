#pragma once

#include "ffr/problem.hpp"

namespace ffr {

/// Image of the constraint line eta1 q1 + eta2 q2 = Q under the map
/// (q1, q2) -> (u, v) = (sqrt(q1 q2), (q1+q2)/2): an ellipse for delta > 0.
/// For delta = 0 it degenerates to the horizontal segment v = Q, 0 <= u <= Q,
/// served by segment_point; for Q = 0 it collapses to the origin.
struct EllipseParams {
  double Q;
  double delta;

  double center_v() const { return Q / (1.0 - delta * delta); }
  double semi_axis_u() const { return Q / std::sqrt(1.0 - delta * delta); }
  double semi_axis_v() const { return Q * delta / (1.0 - delta * delta); }
};

/// One member of the constant-zeta parabola family
///   v = s u + (1-s^2)/2 - (1/(2 gamma)) (u - s + zeta/sqrt(1-s^{2n}))^2,
/// gamma = s^{2n}/(1-s^{2n}).
struct ParabolaParams {
  double s;
  int n;
  double zeta;

  double gamma() const {
    const double s2n = detail::pow_int(s, 2 * n);
    return s2n / (1.0 - s2n);
  }
};

struct UV {
  double u;
  double v;
};

/// Point on the ellipse at parameter phi in (0, pi) for the upper arc.
/// Throws for the degenerate delta = 0 case.
UV ellipse_point(const EllipseParams& e, double phi);

/// Degenerate delta = 0 image: v = Q, u = t*Q for t in [0, 1].
UV segment_point(double Q, double t);

double parabola_v(const ParabolaParams& p, double u);

/// dv/du along the parabola.
double parabola_slope(const ParabolaParams& p, double u);

/// Envelope of the parabola family over zeta: the line v = s u + (1-s^2)/2.
double parabola_envelope_v(double s, double u);

struct TangencyResidual {
  double gap;        ///< v_ellipse(phi) - v_parabola(u_ellipse(phi))
  double slope_gap;  ///< dv/du difference, ellipse minus parabola
};

/// Residuals of the two tangency conditions at ellipse parameter phi.
/// Both vanish simultaneously exactly when (phi, zeta) is the optimal pair.
/// The ellipse slope is -(delta/sqrt(1-delta^2)) cot(phi); a phi that is a
/// multiple of pi (singular cotangent) is reported as a domain error.
TangencyResidual tangency_residual(const EllipseParams& e, const ParabolaParams& p,
                                   double phi);

}  // namespace ffr
