#pragma once

#include "oscspec/coefficients.hpp"
#include "oscspec/core.hpp"

namespace oscspec {

/// Closed-form spectra. E3: epsilon = N. H3: 2 eps = -N^2 + sqrt(1+4mu) N + 3/4.
/// S3: 2 eps = N^2 + sqrt(1+4mu) N - 3/4. Unbound H3 levels are returned with bound = false.
SpectrumEntry exact_epsilon(Geometry geometry, double mu, const QuantumNumbers& qn);

/// E3 level as an exact rational, 2n + l + 3/2.
Rational exact_flat_epsilon(const QuantumNumbers& qn);

/// Bohr-Sommerfeld result with the naive coefficients (coincides with exact in E3).
SpectrumEntry naive_wkb_epsilon(Geometry geometry, double mu, const QuantumNumbers& qn);

/// H3 levels are bound iff N < sqrt(1+4mu)/2, i.e. the decay rate
/// sqrt(mu + 1 - 2 eps) = sqrt(1+4mu)/2 - N is positive.
bool is_hyperbolic_bound(double mu, const QuantumNumbers& qn);

/// Number of bound H3 levels with orbital number l.
int bound_state_count(double mu, int l);

enum class SignConvention {
  as_printed,   ///< H3: -sqrt(-C) + sqrt(-A-B-C) + sqrt(-A) - 1
  bound_branch  ///< H3: -sqrt(-C) - sqrt(-A-B-C) + sqrt(-A) - 1
};

/// Left side of the two-term condition in units of hbar; equals 2n on a level.
/// E3: -sqrt(-C) + B/(2 sqrt(-A)) - 1. S3: -sqrt(-C) + sqrt(-A+B-C) - sqrt(-A) - 1.
/// Throws NoClassicalRegionError naming the radicand that went negative.
double two_term_sum(const CoefficientSet& coefficients,
                    SignConvention convention = SignConvention::as_printed);

struct SolveOptions {
  double residual_tol = 1e-12;
  int max_iterations = 200;
};

/// Root of the bound-branch two-term condition in epsilon by bracketed bisection.
/// Throws NoBoundStateError when the condition has no root inside the classical range.
SpectrumEntry solve_epsilon(Geometry geometry, double mu, const QuantumNumbers& qn,
                            Scheme scheme, const SolveOptions& options = {});

}  // namespace oscspec
