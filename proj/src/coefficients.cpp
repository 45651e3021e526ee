#include "oscspec/coefficients.hpp"

#include <cmath>
#include <string>

#include "oscspec/errors.hpp"

namespace oscspec {

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::corrected ? "corrected" : "naive";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "naive") return Scheme::naive;
  if (text == "corrected") return Scheme::corrected;
  throw ConfigurationError("unknown scheme '" + std::string(text) + "'");
}

CoefficientSet build_coefficients(Geometry geometry, double mu, int l, double epsilon,
                                  Scheme scheme) {
  if (l < 0) throw ConfigurationError("l must be nonnegative");
  if (geometry.is_curved() && !(mu > 0.0)) throw ConfigurationError("mu must be positive");

  const double L2 = (l + 0.5) * (l + 0.5);
  CoefficientSet set;
  set.geometry = geometry;
  set.scheme = scheme;
  set.epsilon_used = epsilon;
  set.l_used = l;
  set.C = -L2;

  switch (geometry.kind) {
    case GeometryKind::flat:
      set.A = -1.0;
      set.B = 2.0 * epsilon;
      set.correction_noop = scheme == Scheme::corrected;
      return set;
    case GeometryKind::hyperbolic:
      set.A = -mu;
      set.B = 2.0 * epsilon - 1.0 + L2;
      if (scheme == Scheme::corrected) {
        set.alpha = -0.25;
        set.beta = 0.25;
      }
      break;
    case GeometryKind::spherical:
      set.A = -mu;
      set.B = 2.0 * epsilon + 1.0 - L2;
      if (scheme == Scheme::corrected) {
        set.alpha = -0.25;
        set.beta = -0.25;
      }
      break;
  }
  set.A += set.alpha;
  set.B += set.beta;
  return set;
}

MomentumField::MomentumField(const CoefficientSet& coefficients)
    : coefficients_(coefficients) {
  const bool corrected = coefficients.scheme == Scheme::corrected;
  switch (coefficients.geometry.kind) {
    case GeometryKind::flat:
      s_ = 0.0;
      denominator_ = DenominatorKind::one;
      delta_ = DeltaKind::none;
      break;
    case GeometryKind::hyperbolic:
      s_ = 1.0;
      denominator_ = DenominatorKind::one_minus_z2_squared;
      delta_ = corrected ? DeltaKind::hyperbolic_corrected : DeltaKind::hyperbolic_naive;
      break;
    case GeometryKind::spherical:
      s_ = -1.0;
      denominator_ = DenominatorKind::one_plus_z2_squared;
      delta_ = corrected ? DeltaKind::spherical_corrected : DeltaKind::spherical_naive;
      break;
  }
}

cplx MomentumField::checked_base(cplx z) const {
  const cplx d = 1.0 - s_ * z * z;
  if (std::abs(d) < 1e-14) {
    const cplx pole = s_ > 0 ? cplx(z.real() < 0 ? -1.0 : 1.0, 0.0)
                             : cplx(0.0, z.imag() < 0 ? -1.0 : 1.0);
    throw PoleEvaluationError(pole);
  }
  return d;
}

cplx MomentumField::pi_squared(cplx z) const {
  const auto& c = coefficients_;
  const cplx x = z * z;
  const cplx d = checked_base(z);
  return (c.A * x * x + c.B * x + c.C) / (d * d);
}

cplx MomentumField::delta(cplx z) const {
  const cplx x = z * z;
  const cplx d = checked_base(z);
  switch (delta_) {
    case DeltaKind::none: return 0.0;
    case DeltaKind::hyperbolic_naive: return (5.0 - x) * x / (4.0 * d * d);
    case DeltaKind::spherical_naive: return -(5.0 + x) * x / (4.0 * d * d);
    // Fixed by Pi^2_naive + Delta_naive == Pi^2_corrected + Delta_corrected.
    case DeltaKind::hyperbolic_corrected: return x / (d * d);
    case DeltaKind::spherical_corrected: return -x / (d * d);
  }
  return 0.0;
}

PiSquaredJet MomentumField::pi_squared_jet(cplx z) const {
  // With x = z^2 and d = 1 - s x: P = N d^-2, and d/dt = 2x d/dx.
  const auto& c = coefficients_;
  const cplx x = z * z;
  const cplx d = checked_base(z);
  const cplx inv = 1.0 / d;
  const cplx inv2 = inv * inv;
  const cplx num = c.A * x * x + c.B * x + c.C;
  const cplx num_x = 2.0 * c.A * x + c.B;
  const cplx num_xx = 2.0 * c.A;
  const cplx p = num * inv2;
  const cplx p_x = num_x * inv2 + 2.0 * s_ * num * inv2 * inv;
  const cplx p_xx = num_xx * inv2 + 4.0 * s_ * num_x * inv2 * inv + 6.0 * s_ * s_ * num * inv2 * inv2;
  return {p, 2.0 * x * p_x, 4.0 * x * p_x + 4.0 * x * x * p_xx};
}

std::array<cplx, 4> MomentumField::turning_points() const {
  const auto& c = coefficients_;
  // Roots of A x^2 + B x + C in x = z^2, computed without cancellation.
  const cplx disc = std::sqrt(cplx(c.B * c.B - 4.0 * c.A * c.C));
  const cplx q = -0.5 * (cplx(c.B) + (c.B >= 0 ? disc : -disc));
  cplx x1 = q / c.A;
  cplx x2 = c.C / q;
  if (std::abs(x1) > std::abs(x2)) std::swap(x1, x2);
  const cplx z1 = std::sqrt(x1);
  const cplx z2 = std::sqrt(x2);
  return {z1, z2, -z1, -z2};
}

std::vector<cplx> MomentumField::poles() const {
  if (s_ > 0) return {cplx(1.0, 0.0), cplx(-1.0, 0.0)};
  if (s_ < 0) return {cplx(0.0, 1.0), cplx(0.0, -1.0)};
  return {};
}

cplx pi_squared(const MomentumField& field, cplx z) { return field.pi_squared(z); }

cplx delta(const MomentumField& field, cplx z) { return field.delta(z); }

}  // namespace oscspec
