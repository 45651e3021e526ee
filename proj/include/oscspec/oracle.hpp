#pragma once

#include <string>
#include <vector>

#include "oscspec/core.hpp"

namespace oscspec::oracle {

struct OracleConfig {
  double r_max = 0.0;  ///< 0 picks the truncation from the trial energy (flat/hyperbolic only)
  int grid_points = 20000;
  double bisection_tol = 1e-11;
  int max_iterations = 200;

  /// Throws ConfigurationError unless grid_points >= 2000 and 0 < bisection_tol <= 1e-8.
  void validate() const;
};

/// Distance kept from the singular endpoints of the spherical domain (0, pi/2).
inline constexpr double kSphericalMargin = 1e-6;

struct WavePoint {
  double r = 0.0;
  double u = 0.0;
};

struct EigenResult {
  double epsilon = 0.0;
  int node_count = 0;
  std::vector<WavePoint> wavefunction;  ///< normalized so that the integral of u^2 is 1
  bool converged = false;
  bool no_bound_state = false;
  std::string diagnostics;
};

/// W(r) in u'' + W u = 0 with u = r f, sinh(r) f or sin(r) f.
/// Throws DomainError at or beyond a singular endpoint.
double effective_equation(Geometry geometry, double mu, int l, double epsilon, double r);

/// Radial eigenvalue with n interior nodes by Numerov shooting and node-count bisection.
/// A hyperbolic level above the continuum edge yields converged = false and
/// no_bound_state = true. Throws ResolutionError if node counts are not monotone in epsilon.
EigenResult solve(Geometry geometry, double mu, int l, int n, const OracleConfig& config = {});

}  // namespace oscspec::oracle
