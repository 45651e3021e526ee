#pragma once

#include <complex>
#include <span>
#include <vector>

#include "oscspec/coefficients.hpp"

namespace oscspec {

/// Circle around one excluded point. orientation is the sign with which the
/// counter-clockwise circle integral enters the contour L.
struct Circle {
  cplx center;
  double radius = 0.0;
  int orientation = -1;
};

/// Circle realization of the contour L around the cuts joining the turning points:
/// L = (large circle, counter-clockwise) - sum of small circles around 0 and the poles.
struct ContourSpec {
  std::vector<Circle> circles;
  double large_circle_radius = 0.0;
  int samples_per_circle = 4096;
};

/// Small radii are a quarter of the distance to the nearest other special point and the
/// large radius twice the largest special modulus, so doubling every radius stays valid.
ContourSpec default_contour(const MomentumField& field, int samples_per_circle = 4096);

/// Throws ConfigurationError unless every circle keeps 1e-6 away from turning points and
/// poles, encloses only its own centre, and the large circle encloses everything.
void validate_contour(const ContourSpec& contour, const MomentumField& field);

ContourSpec scale_radii(const ContourSpec& contour, double factor);

/// Continuous choice of Q0 = sqrt(Pi^2) along a path in the z plane.
class BranchTracker {
 public:
  BranchTracker(const MomentumField& field, cplx z, cplx q0);

  /// Anchor on the lower lip of the cut [z1, z2] on the positive real axis, Q0 = +sqrt(Pi^2).
  static BranchTracker anchored(const MomentumField& field);

  cplx position() const { return z_; }
  cplx value() const { return q0_; }

  /// Single step; throws BranchStepTooLarge if arg Pi^2 moves by more than pi/2.
  cplx step_to(cplx z);
  /// Straight-line continuation, subdivided as needed.
  cplx continue_to(cplx z);

 private:
  const MomentumField* field_;
  std::vector<cplx> singular_;
  cplx z_;
  cplx p_;
  cplx q0_;
};

/// Q_order(z) of the Riccati expansion on the tracked branch. Orders 0-2 use exact
/// derivatives of Pi^2; higher orders differentiate by Cauchy integrals in t = ln z.
cplx q_term(int order, const MomentumField& field, cplx z, BranchTracker& state);

/// Q_0 .. Q_max_order at z, each paired with dQ_k/dt.
struct QTermJet {
  std::vector<cplx> value;
  std::vector<cplx> derivative;
};
QTermJet q_terms_with_derivatives(int max_order, const MomentumField& field, cplx z,
                                  BranchTracker& state);

struct WkbTermValue {
  int order = 0;
  cplx integral;  ///< the contour integral of Q_order dt
  Scheme scheme = Scheme::naive;
  Geometry geometry;
  std::vector<long> samples;  ///< per circle, large circle last

  /// (hbar/i)^order times the integral, the term entering the quantization sum.
  cplx weighted() const;
};

struct IntegrationOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  long max_samples = 1L << 20;
  bool parallel = true;
};

WkbTermValue integrate_term(int order, const MomentumField& field, const ContourSpec& contour,
                            const IntegrationOptions& options = {});

/// Residue value of the weighted term for orders 0 and 1 on the bound branch.
/// Order 0: 2 pi (-sqrt(-C) - sqrt(-A-B-C) + sqrt(-A)) for H3, the analogous sums otherwise.
/// Order 1: -2 pi for every coefficient set.
cplx analytic_residue_sum(int order, const CoefficientSet& coefficients);

struct VanishingMeasurement {
  int order = 0;
  double magnitude = 0.0;
  cplx weighted;
};

/// Measures |(hbar/i)^n contour integral of Q_n dt| for each requested order (n >= 2).
std::vector<VanishingMeasurement> higher_order_vanishing(const MomentumField& field,
                                                         std::span<const int> orders,
                                                         const ContourSpec& contour);

/// |(h/i) Q' + Q^2 - Pi^2 + (h/i)^2 Delta| for Q truncated at the given order.
double riccati_residual(const MomentumField& field, cplx z, BranchTracker& state,
                        int truncation_order, double hbar = 1.0);

}  // namespace oscspec
