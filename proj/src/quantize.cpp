#include "oscspec/quantize.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "oscspec/errors.hpp"

namespace oscspec {

namespace {

void require_mu(Geometry geometry, double mu) {
  if (geometry.is_curved() && !(mu > 0.0)) throw ConfigurationError("mu must be positive");
}

double half_root(double mu) { return 0.5 * std::sqrt(1.0 + 4.0 * mu); }

double checked_root(double radicand, const char* name, bool clamp) {
  if (radicand < 0.0) {
    if (clamp && radicand > -1e-12) return 0.0;
    throw NoClassicalRegionError(name, radicand);
  }
  return std::sqrt(radicand);
}

double two_term_sum_impl(const CoefficientSet& c, SignConvention convention, bool clamp) {
  const double root_c = checked_root(-c.C, "-C", clamp);
  if (c.A >= 0.0) throw NoClassicalRegionError("-A", -c.A);
  const double root_a = std::sqrt(-c.A);
  switch (c.geometry.kind) {
    case GeometryKind::flat:
      return -root_c + c.B / (2.0 * root_a) - 1.0;
    case GeometryKind::hyperbolic: {
      const double middle = checked_root(-c.A - c.B - c.C, "-A-B-C", clamp);
      const double sign = convention == SignConvention::as_printed ? 1.0 : -1.0;
      return -root_c + sign * middle + root_a - 1.0;
    }
    case GeometryKind::spherical: {
      const double middle = checked_root(-c.A + c.B - c.C, "-A+B-C", clamp);
      return -root_c + middle - root_a - 1.0;
    }
  }
  return 0.0;
}

}  // namespace

Rational exact_flat_epsilon(const QuantumNumbers& qn) { return qn.N(); }

bool is_hyperbolic_bound(double mu, const QuantumNumbers& qn) {
  return qn.N().value() < half_root(mu);
}

SpectrumEntry exact_epsilon(Geometry geometry, double mu, const QuantumNumbers& qn) {
  require_mu(geometry, mu);
  const double N = qn.N().value();
  SpectrumEntry entry{qn, 0.0, Method::exact, true};
  switch (geometry.kind) {
    case GeometryKind::flat:
      entry.epsilon = N;
      break;
    case GeometryKind::hyperbolic:
      entry.epsilon = 0.5 * (-N * N + std::sqrt(1.0 + 4.0 * mu) * N + 0.75);
      entry.bound = is_hyperbolic_bound(mu, qn);
      break;
    case GeometryKind::spherical:
      entry.epsilon = 0.5 * (N * N + std::sqrt(1.0 + 4.0 * mu) * N - 0.75);
      break;
  }
  return entry;
}

SpectrumEntry naive_wkb_epsilon(Geometry geometry, double mu, const QuantumNumbers& qn) {
  require_mu(geometry, mu);
  const double N = qn.N().value();
  SpectrumEntry entry{qn, N, Method::wkb_naive, true};
  switch (geometry.kind) {
    case GeometryKind::flat:
      break;
    case GeometryKind::hyperbolic:
      // sqrt(mu - 2 eps + 1) = sqrt(mu) - N
      entry.epsilon = 0.5 * (-N * N + 2.0 * std::sqrt(mu) * N + 1.0);
      entry.bound = N < std::sqrt(mu);
      break;
    case GeometryKind::spherical:
      // sqrt(mu + 2 eps + 1) = N + sqrt(mu)
      entry.epsilon = 0.5 * (N * N + 2.0 * std::sqrt(mu) * N - 1.0);
      break;
  }
  return entry;
}

int bound_state_count(double mu, int l) {
  if (!(mu > 0.0)) throw ConfigurationError("mu must be positive");
  if (l < 0) throw ConfigurationError("l must be nonnegative");
  int count = 0;
  while (is_hyperbolic_bound(mu, QuantumNumbers(count, l))) ++count;
  return count;
}

double two_term_sum(const CoefficientSet& coefficients, SignConvention convention) {
  return two_term_sum_impl(coefficients, convention, false);
}

SpectrumEntry solve_epsilon(Geometry geometry, double mu, const QuantumNumbers& qn,
                            Scheme scheme, const SolveOptions& options) {
  require_mu(geometry, mu);
  const double target = 2.0 * qn.n();
  const int l = qn.l();
  auto condition = [&](double eps) {
    const auto c = build_coefficients(geometry, mu, l, eps, scheme);
    return two_term_sum_impl(c, SignConvention::bound_branch, true) - target;
  };

  // B = 2 eps + b0, so the radicands are linear in eps.
  const double b0 = build_coefficients(geometry, mu, l, 0.0, scheme).B;
  const auto c0 = build_coefficients(geometry, mu, l, 0.0, scheme);

  double lo = 0.0;
  double hi = 0.0;
  switch (geometry.kind) {
    case GeometryKind::flat: {
      lo = 0.0;
      hi = 1.0;
      int guard = 0;
      while (condition(hi) < 0.0 && guard++ < options.max_iterations) hi *= 2.0;
      break;
    }
    case GeometryKind::hyperbolic: {
      // -A - B - C >= 0  <=>  eps <= (-A - b0 - C) / 2, where the condition is largest.
      hi = 0.5 * (-c0.A - b0 - c0.C);
      if (condition(hi) <= options.residual_tol) {
        throw NoBoundStateError("no hyperbolic bound state for n=" + std::to_string(qn.n()) +
                                ", l=" + std::to_string(l) + ", mu=" + std::to_string(mu));
      }
      lo = std::min(hi - 1.0, 0.0);
      int guard = 0;
      while (condition(lo) > 0.0 && guard++ < options.max_iterations) lo = hi - 2.0 * (hi - lo);
      break;
    }
    case GeometryKind::spherical: {
      // -A + B - C >= 0  <=>  eps >= (A - b0 + C) / 2
      lo = 0.5 * (c0.A - b0 + c0.C);
      hi = lo + 1.0;
      int guard = 0;
      while (condition(hi) < 0.0 && guard++ < options.max_iterations) hi = lo + 2.0 * (hi - lo);
      break;
    }
  }
  const double f_lo = condition(lo);
  const double f_hi = condition(hi);
  if (!(f_lo <= 0.0 && f_hi >= 0.0)) {
    throw NoBoundStateError("could not bracket the two-term condition");
  }

  double mid = f_hi == 0.0 ? hi : lo;
  double value = f_hi == 0.0 ? f_hi : f_lo;
  for (int it = 0; it < options.max_iterations && value != 0.0; ++it) {
    mid = 0.5 * (lo + hi);
    value = condition(mid);
    if (value == 0.0 || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                                          std::max(1.0, std::abs(mid))) {
      break;
    }
    (value < 0.0 ? lo : hi) = mid;
  }
  if (std::abs(value) > options.residual_tol) {
    throw Error("two-term root search stalled with residual " + std::to_string(value));
  }

  SpectrumEntry entry{qn, mid, scheme == Scheme::corrected ? Method::wkb_corrected
                                                           : Method::wkb_naive,
                      true};
  if (geometry.kind == GeometryKind::hyperbolic) {
    entry.bound = 2.0 * mid < mu + 1.0;
  }
  return entry;
}

}  // namespace oscspec
