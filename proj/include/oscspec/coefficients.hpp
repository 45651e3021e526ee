#pragma once

#include <array>
#include <complex>
#include <vector>

#include "oscspec/core.hpp"

namespace oscspec {

using cplx = std::complex<double>;

/// Naive: coefficients read off the reduced radial equation directly.
/// Corrected: hbar^2 shifts of A and B chosen so two WKB terms give the exact spectrum.
enum class Scheme { naive, corrected };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);

/// Coefficients of Pi^2(z) = (A z^4 + B z^2 + C) / D(z), with z = e^t.
struct CoefficientSet {
  Geometry geometry;
  Scheme scheme = Scheme::naive;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double epsilon_used = 0.0;
  int l_used = 0;
  double alpha = 0.0;  ///< (A - A_naive) / hbar^2
  double beta = 0.0;   ///< (B - B_naive) / hbar^2
  /// Set when the corrected scheme was requested for E3, where it coincides with naive.
  bool correction_noop = false;
};

/// Units: hbar = 1; for E3 additionally M = k = 1 so A = -1. mu is ignored for E3.
CoefficientSet build_coefficients(Geometry geometry, double mu, int l, double epsilon,
                                  Scheme scheme);

enum class DenominatorKind { one, one_minus_z2_squared, one_plus_z2_squared };

enum class DeltaKind {
  none,
  hyperbolic_naive,
  hyperbolic_corrected,
  spherical_naive,
  spherical_corrected
};

/// Value of Pi^2 together with its first two derivatives in t = ln z.
struct PiSquaredJet {
  cplx value;
  cplx dt;
  cplx dtt;
};

/// Pi^2(z) and the correction term Delta(z) of S'' + (Pi^2/hbar^2 + Delta) S = 0.
class MomentumField {
 public:
  explicit MomentumField(const CoefficientSet& coefficients);

  const CoefficientSet& coefficients() const { return coefficients_; }
  Geometry geometry() const { return coefficients_.geometry; }
  DenominatorKind denominator_kind() const { return denominator_; }
  DeltaKind delta_kind() const { return delta_; }

  cplx pi_squared(cplx z) const;
  cplx delta(cplx z) const;
  PiSquaredJet pi_squared_jet(cplx z) const;

  /// Zeros of the numerator A z^4 + B z^2 + C: (+z1, +z2, -z1, -z2) with |z1| <= |z2|.
  std::array<cplx, 4> turning_points() const;
  /// Zeros of the denominator: {+1, -1}, {+i, -i} or none.
  std::vector<cplx> poles() const;

 private:
  // D(z) = (1 - s z^2)^2 with s = +1 (H3), -1 (S3), 0 (E3).
  double s_;
  cplx checked_base(cplx z) const;

  CoefficientSet coefficients_;
  DenominatorKind denominator_;
  DeltaKind delta_;
};

cplx pi_squared(const MomentumField& field, cplx z);
cplx delta(const MomentumField& field, cplx z);

}  // namespace oscspec
