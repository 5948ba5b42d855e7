#include "ffr/geometry.hpp"

#include <cmath>
#include <numbers>

namespace ffr {

UV ellipse_point(const EllipseParams& e, double phi) {
  if (e.delta <= 0.0)
    throw domain_error("ellipse_point: degenerate ellipse (delta = 0); use segment_point");
  const double dd = std::sqrt(1.0 - e.delta * e.delta);
  UV p;
  p.u = e.Q / dd * std::cos(phi);
  p.v = e.Q / (1.0 - e.delta * e.delta) * (1.0 + e.delta * std::sin(phi));
  return p;
}

UV segment_point(double Q, double t) {
  if (!(t >= 0.0) || !(t <= 1.0))
    throw domain_error("segment_point: t must lie in [0, 1]");
  return UV{t * Q, Q};
}

double parabola_v(const ParabolaParams& p, double u) {
  const double s2n = detail::pow_int(p.s, 2 * p.n);
  const double w = u - p.s + p.zeta / std::sqrt(1.0 - s2n);
  return p.s * u + 0.5 * (1.0 - p.s * p.s) - 0.5 * (1.0 - s2n) / s2n * w * w;
}

double parabola_slope(const ParabolaParams& p, double u) {
  const double s2n = detail::pow_int(p.s, 2 * p.n);
  const double w = u - p.s + p.zeta / std::sqrt(1.0 - s2n);
  return p.s - (1.0 - s2n) / s2n * w;
}

double parabola_envelope_v(double s, double u) { return s * u + 0.5 * (1.0 - s * s); }

TangencyResidual tangency_residual(const EllipseParams& e, const ParabolaParams& p,
                                   double phi) {
  const double turns = phi / std::numbers::pi;
  if (std::abs(turns - std::round(turns)) < 1e-12)
    throw domain_error("tangency_residual: cot(phi) singular (phi = 0 mod pi)");
  const double sphi = std::sin(phi);
  const UV ep = ellipse_point(e, phi);
  const double dd = std::sqrt(1.0 - e.delta * e.delta);
  const double ellipse_slope = -(e.delta / dd) * (std::cos(phi) / sphi);
  TangencyResidual r;
  r.gap = ep.v - parabola_v(p, ep.u);
  r.slope_gap = ellipse_slope - parabola_slope(p, ep.u);
  return r;
}

}  // namespace ffr
