#include "oscspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "oscspec/errors.hpp"

namespace oscspec::oracle {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kRescale = 1e150;

struct Grid {
  double h = 0.0;
  int last = 0;  ///< index of the outer end
  double origin = 0.0;
  bool from_equator = false;  ///< r_i = pi/2 - margin - (last - i) h
  double r(int i) const { return origin + h * i; }
};

enum class Verdict { too_low, too_high };

struct Shot {
  Verdict verdict = Verdict::too_low;
  int outward_nodes = 0;
  std::vector<double> u;
  Grid grid;
};

double regular_w_at_origin(Geometry g, int l, double eps) {
  const double ll = l * (l + 1.0);
  switch (g.kind) {
    case GeometryKind::flat:
      return 2.0 * eps;
    case GeometryKind::hyperbolic:
      return 2.0 * eps - 1.0 + ll / 3.0;
    case GeometryKind::spherical:
      return 2.0 * eps + 1.0 - ll / 3.0;
  }
  return 0.0;
}

Grid make_grid(Geometry g, double mu, double eps, const OracleConfig& config) {
  double r_max = config.r_max;
  if (g.kind == GeometryKind::spherical) {
    r_max = kHalfPi - kSphericalMargin;
  } else if (r_max <= 0.0) {
    if (g.kind == GeometryKind::flat) {
      r_max = std::sqrt(std::max(2.0 * eps, 1.0)) + 8.0;
    } else {
      const double kappa = std::sqrt(std::max(mu + 1.0 - 2.0 * eps, 1e-6));
      const double t = std::min(std::sqrt(std::max(2.0 * eps - 1.0, 0.0) / mu), 1.0 - 1e-12);
      r_max = std::min(std::atanh(t) + 3.0 + 20.0 / kappa, 400.0);
    }
  }
  Grid grid;
  grid.last = config.grid_points;
  grid.h = r_max / config.grid_points;
  return grid;
}

int sign_changes(const std::vector<double>& u, int from, int to) {
  int count = 0;
  for (int i = from; i < to; ++i) {
    if ((u[i] < 0.0 && u[i + 1] > 0.0) || (u[i] > 0.0 && u[i + 1] < 0.0)) ++count;
  }
  return count;
}

Shot shoot(Geometry g, double mu, int l, int n, double eps, const OracleConfig& config) {
  Shot shot;
  shot.grid = make_grid(g, mu, eps, config);
  const Grid& grid = shot.grid;
  const int last = grid.last;
  const double h = grid.h;
  const double h12 = h * h / 12.0;

  std::vector<double> w(last + 1, 0.0);
  std::vector<double> f(last + 1, 1.0);
  for (int i = 1; i <= last; ++i) {
    w[i] = effective_equation(g, mu, l, eps, grid.r(i));
    f[i] = 1.0 + h12 * w[i];
  }

  // Outer classical turning point.
  int icl = -1;
  for (int i = last - 1; i >= 1; --i) {
    if (w[i] > 0.0) {
      icl = i + 1;
      break;
    }
  }
  if (icl < 0) return shot;  // nowhere classically allowed
  icl = std::clamp(icl, 3, last - 3);

  std::vector<double>& u = shot.u;
  u.assign(last + 1, 0.0);

  // Outward from the regular origin, u ~ r^{l+1} (1 + c r^2).
  const double ll = l * (l + 1.0);
  int i0 = 1;
  while (i0 < icl - 2 && h12 * ll / (grid.r(i0) * grid.r(i0)) >= 0.25) ++i0;
  const double c = -regular_w_at_origin(g, l, eps) / (2.0 * (2.0 * l + 3.0));
  const double r0 = grid.r(i0);
  for (int i : {i0, i0 + 1}) {
    const double r = grid.r(i);
    u[i] = std::pow(r / r0, l + 1) * (1.0 + c * r * r);
  }
  for (int i = i0 + 1; i < icl + 1; ++i) {
    u[i + 1] = ((12.0 - 10.0 * f[i]) * u[i] - f[i - 1] * u[i - 1]) / f[i + 1];
    if (std::abs(u[i + 1]) > kRescale) {
      for (int k = 0; k <= i + 1; ++k) u[k] /= kRescale;
    }
  }
  shot.outward_nodes = sign_changes(u, i0, icl);
  if (shot.outward_nodes != n) {
    shot.verdict = shot.outward_nodes > n ? Verdict::too_high : Verdict::too_low;
    return shot;
  }
  const double u_match = u[icl];

  // Inward from the outer end with a decaying start.
  std::vector<double> v(last + 1, 0.0);
  int j0 = last;
  if (g.kind == GeometryKind::spherical) {
    // u ~ y^a (1 + ...) with y = pi/2 - r; start where mu tan^2 r is resolved.
    const double a = 0.5 + std::sqrt(0.25 + mu);
    auto y = [&](int i) { return kHalfPi - grid.r(i); };
    while (j0 > icl + 2 && h12 * mu / (y(j0) * y(j0)) >= 0.25) --j0;
    v[j0] = 1e-200;
    v[j0 - 1] = v[j0] * std::pow(y(j0 - 1) / y(j0), a);
  } else {
    v[j0] = 0.0;
    v[j0 - 1] = 1e-200;
  }
  for (int i = j0 - 1; i > icl - 1; --i) {
    v[i - 1] = ((12.0 - 10.0 * f[i]) * v[i] - f[i + 1] * v[i + 1]) / f[i - 1];
    if (std::abs(v[i - 1]) > kRescale) {
      for (int k = i - 1; k <= last; ++k) v[k] /= kRescale;
    }
  }
  const double scale = u_match / v[icl];
  for (int i = icl; i <= last; ++i) u[i] = v[i] * scale;

  const double djump = (u[icl + 1] + u[icl - 1] - (14.0 - 12.0 * f[icl]) * u[icl]) / h;
  shot.verdict = djump * u[icl] > 0.0 ? Verdict::too_high : Verdict::too_low;
  return shot;
}

}  // namespace

void OracleConfig::validate() const {
  if (grid_points < 2000) throw ConfigurationError("grid_points must be at least 2000");
  if (!(bisection_tol > 0.0) || bisection_tol > 1e-8) {
    throw ConfigurationError("bisection_tol must lie in (0, 1e-8]");
  }
  if (max_iterations < 1) throw ConfigurationError("max_iterations must be positive");
  if (!(r_max >= 0.0)) throw ConfigurationError("r_max must be nonnegative");
}

double effective_equation(Geometry geometry, double mu, int l, double epsilon, double r) {
  const double ll = l * (l + 1.0);
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must lie inside the radial domain");
  switch (geometry.kind) {
    case GeometryKind::flat:
      return 2.0 * epsilon - r * r - ll / (r * r);
    case GeometryKind::hyperbolic: {
      const double t = std::tanh(r);
      const double s = std::sinh(r);
      return 2.0 * epsilon - 1.0 - mu * t * t - (ll == 0.0 ? 0.0 : ll / (s * s));
    }
    case GeometryKind::spherical: {
      if (!(r < kHalfPi)) throw DomainError("r must lie inside (0, pi/2)");
      const double t = std::tan(r);
      const double s = std::sin(r);
      return 2.0 * epsilon + 1.0 - mu * t * t - ll / (s * s);
    }
  }
  return 0.0;
}

EigenResult solve(Geometry geometry, double mu, int l, int n, const OracleConfig& config) {
  config.validate();
  if (l < 0 || n < 0) throw ConfigurationError("quantum numbers must be nonnegative");
  if (geometry.is_curved() && !(mu > 0.0)) throw ConfigurationError("mu must be positive");

  // Trial outcomes keyed by epsilon, used to detect a non-monotone node sequence.
  std::map<double, int> nodes_at;
  auto trial = [&](double eps) {
    Shot s = shoot(geometry, mu, l, n, eps, config);
    nodes_at[eps] = s.outward_nodes;
    return s;
  };

  EigenResult result;
  double lo = geometry.kind == GeometryKind::spherical ? -1.0 : 0.0;
  double hi = 0.0;
  int iterations = 0;
  if (geometry.kind == GeometryKind::hyperbolic) {
    hi = 0.5 * (mu + 1.0) * (1.0 - 1e-9);
    if (trial(hi).verdict == Verdict::too_low) {
      result.no_bound_state = true;
      result.epsilon = hi;
      result.diagnostics = "no bound state with n=" + std::to_string(n) + " below the continuum edge " +
                           std::to_string(0.5 * (mu + 1.0));
      return result;
    }
  } else {
    hi = 1.0;
    while (trial(hi).verdict == Verdict::too_low) {
      if (++iterations > config.max_iterations) {
        result.diagnostics = "upper energy bracket not found";
        return result;
      }
      hi *= 2.0;
    }
  }
  if (trial(lo).verdict == Verdict::too_high) {
    throw ResolutionError("lower energy bracket already above the requested level");
  }

  while (hi - lo > config.bisection_tol) {
    if (++iterations > config.max_iterations) {
      result.diagnostics = "bisection did not converge within max_iterations";
      result.epsilon = 0.5 * (lo + hi);
      return result;
    }
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (trial(mid).verdict == Verdict::too_high ? hi : lo) = mid;
  }

  int previous = -1;
  for (const auto& [eps, nodes] : nodes_at) {
    if (nodes < previous) {
      throw ResolutionError("node count decreases with energy near epsilon=" +
                            std::to_string(eps) + "; refine the grid");
    }
    previous = nodes;
  }

  result.epsilon = 0.5 * (lo + hi);
  Shot final_shot = shoot(geometry, mu, l, n, result.epsilon, config);
  if (final_shot.u.empty()) throw ResolutionError("no classical region at the converged energy");

  const Grid& grid = final_shot.grid;
  const auto& u = final_shot.u;
  double norm = 0.0;
  for (int i = 1; i <= grid.last; ++i) norm += u[i] * u[i];
  norm = std::sqrt(norm * grid.h);
  double peak = 0.0;
  for (int i = 1; i <= grid.last; ++i) peak = std::max(peak, std::abs(u[i]));
  result.wavefunction.reserve(grid.last);
  for (int i = 1; i <= grid.last; ++i) {
    result.wavefunction.push_back({grid.r(i), u[i] / norm});
  }
  // Nodes over the whole domain, ignoring round-off sign flips in the far tails.
  std::vector<double> clipped(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    clipped[i] = std::abs(u[i]) > 1e-10 * peak ? u[i] : 0.0;
  }
  int nodes = 0;
  double last_sign = 0.0;
  for (double value : clipped) {
    if (value == 0.0) continue;
    const double sign = value > 0.0 ? 1.0 : -1.0;
    if (last_sign != 0.0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  result.node_count = nodes;
  result.converged = nodes == n;
  if (!result.converged) {
    result.diagnostics = "converged eigenfunction has " + std::to_string(nodes) +
                         " nodes, expected " + std::to_string(n);
  }
  return result;
}

}  // namespace oscspec::oracle
