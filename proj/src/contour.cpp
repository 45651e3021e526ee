#include "oscspec/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <string>

#include "oscspec/errors.hpp"
#include "oscspec/quantize.hpp"

namespace oscspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr double kMaxPhaseJump = kPi / 2.0;
constexpr int kCauchyPoints = 64;

using Series = std::vector<cplx>;

std::vector<cplx> singular_points(const MomentumField& field) {
  const auto tp = field.turning_points();
  std::vector<cplx> points(tp.begin(), tp.end());
  for (const cplx p : field.poles()) points.push_back(p);
  return points;
}

double nearest_distance(cplx z, const std::vector<cplx>& points) {
  double d = std::numeric_limits<double>::infinity();
  for (const cplx p : points) d = std::min(d, std::abs(z - p));
  return d;
}

double phase_jump(cplx from, cplx to) { return std::abs(std::arg(to / from)); }

cplx pick_branch(cplx p, cplx previous) {
  const cplx r = std::sqrt(p);
  return std::abs(r - previous) <= std::abs(r + previous) ? r : -r;
}

Series multiply(const Series& a, const Series& b) {
  Series c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t i = 0; i <= k; ++i) c[k] += a[i] * b[k - i];
  }
  return c;
}

Series inverse(const Series& a) {
  Series b(a.size());
  b[0] = 1.0 / a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    cplx s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) s += a[i] * b[k - i];
    b[k] = -s * b[0];
  }
  return b;
}

Series square_root(const Series& a, cplx root0) {
  Series b(a.size());
  b[0] = root0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    cplx s = a[k];
    for (std::size_t i = 1; i < k; ++i) s -= b[i] * b[k - i];
    b[k] = s / (2.0 * root0);
  }
  return b;
}

Series derivative(const Series& a) {
  Series d(a.size());
  for (std::size_t k = 0; k + 1 < a.size(); ++k) d[k] = static_cast<double>(k + 1) * a[k + 1];
  return d;
}

// Radius in the t plane: min(0.1, half the distance to the nearest singularity).
double cauchy_radius(cplx z, const std::vector<cplx>& singular) {
  double d = std::numeric_limits<double>::infinity();
  for (const cplx p : singular) d = std::min(d, std::abs(std::log(p / z)));
  if (!(d > 1e-12)) throw DomainError("Q-term evaluated on a turning point or pole");
  return std::min(0.1, 0.5 * d);
}

// Taylor coefficients in s of f(z e^s) from a trapezoidal Cauchy integral.
template <class F>
Series taylor_in_t(F&& f, cplx z, double radius, std::size_t length) {
  static const std::array<cplx, kCauchyPoints> roots = [] {
    std::array<cplx, kCauchyPoints> r;
    for (int j = 0; j < kCauchyPoints; ++j) r[j] = std::polar(1.0, 2.0 * kPi * j / kCauchyPoints);
    return r;
  }();
  std::array<cplx, kCauchyPoints> values;
  for (int j = 0; j < kCauchyPoints; ++j) values[j] = f(z * std::exp(radius * roots[j]));
  Series c(length);
  double scale = 1.0;
  for (std::size_t k = 0; k < length; ++k) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < kCauchyPoints; ++j) {
      s += values[j] * std::conj(roots[(j * k) % kCauchyPoints]);
    }
    c[k] = s / (kCauchyPoints * scale);
    scale *= radius;
  }
  return c;
}

// Jets of Q_0 .. Q_max_order in t around z; each jet is accurate through degree 1.
std::vector<Series> q_jets(int max_order, const MomentumField& field, cplx z, cplx q0,
                           const std::vector<cplx>& singular) {
  const double radius = cauchy_radius(z, singular);
  const std::size_t length = static_cast<std::size_t>(max_order) + 2;
  const Series p = taylor_in_t([&](cplx w) { return field.pi_squared(w); }, z, radius, length);
  const Series d = taylor_in_t([&](cplx w) { return field.delta(w); }, z, radius, length);

  std::vector<Series> q;
  q.push_back(square_root(p, q0));
  Series inv = inverse(q[0]);
  for (auto& c : inv) c *= 0.5;
  for (int n = 1; n <= max_order; ++n) {
    Series s = derivative(q[n - 1]);
    for (int k = 1; k < n; ++k) {
      const Series prod = multiply(q[n - k], q[k]);
      for (std::size_t i = 0; i < length; ++i) s[i] += prod[i];
    }
    if (n == 2) {
      for (std::size_t i = 0; i < length; ++i) s[i] += d[i];
    }
    Series next = multiply(inv, s);
    for (auto& c : next) c = -c;
    q.push_back(std::move(next));
  }
  return q;
}

cplx q_value(int order, const MomentumField& field, cplx z, cplx q0,
             const std::vector<cplx>& singular) {
  if (order < 0) throw ConfigurationError("WKB order must be nonnegative");
  if (order == 0) return q0;
  const PiSquaredJet jet = field.pi_squared_jet(z);
  if (jet.value == 0.0) throw DomainError("Q-term evaluated on a turning point");
  if (order == 1) return -jet.dt / (4.0 * jet.value);
  if (order == 2) {
    const cplx p = jet.value;
    const cplx q1 = -jet.dt / (4.0 * p);
    const cplx q1_prime = -jet.dtt / (4.0 * p) + jet.dt * jet.dt / (4.0 * p * p);
    return -(q1_prime + q1 * q1 + field.delta(z)) / (2.0 * q0);
  }
  return q_jets(order, field, z, q0, singular)[static_cast<std::size_t>(order)][0];
}

BranchTracker tracker_at(const BranchTracker& anchor, const MomentumField& field, cplx start) {
  BranchTracker tracker = anchor;
  if (start.imag() < 0.0) {
    tracker.continue_to(start);
    return tracker;
  }
  // Reach the upper half plane through a gap between the cuts on the real axis.
  const auto tp = field.turning_points();
  const double x = std::abs(start.real());
  if (x >= tp[0].real() && x <= tp[1].real()) {
    throw ConfigurationError("circle start point lies above a branch cut");
  }
  tracker.continue_to(cplx(start.real(), -0.5 * (std::abs(start) + 0.1)));
  tracker.continue_to(start);
  return tracker;
}

// Counter-clockwise trapezoidal sum of Q_n(z)/z dz starting at angle -pi/2.
cplx sweep_circle(int order, const MomentumField& field, const std::vector<cplx>& singular,
                  cplx center, double radius, long samples, double offset,
                  BranchTracker tracker) {
  const cplx start = tracker.position();
  const cplx q_start = tracker.value();
  cplx sum = 0.0;
  for (long j = 0; j < samples; ++j) {
    const double theta = -kPi / 2.0 + 2.0 * kPi * (static_cast<double>(j) + offset) /
                                          static_cast<double>(samples);
    const cplx e = std::polar(1.0, theta);
    const cplx z = center + radius * e;
    const cplx q0 = tracker.continue_to(z);
    sum += q_value(order, field, z, q0, singular) / z * (kI * radius * e);
  }
  const cplx q_end = tracker.continue_to(start);
  if (std::abs(q_end - q_start) > 1e-8 * (1.0 + std::abs(q_start))) {
    throw Error("Q0 is not single-valued around the circle at " + std::to_string(center.real()) +
                (center.imag() < 0 ? "-" : "+") + std::to_string(std::abs(center.imag())) + "i");
  }
  return sum * (2.0 * kPi / static_cast<double>(samples));
}

struct CircleResult {
  cplx integral;
  long samples = 0;
};

CircleResult integrate_circle(int order, const MomentumField& field,
                              const std::vector<cplx>& singular, cplx center, double radius,
                              long initial_samples, const IntegrationOptions& options,
                              const BranchTracker& at_start) {
  long n = initial_samples;
  cplx current = sweep_circle(order, field, singular, center, radius, n, 0.0, at_start);
  double change = std::numeric_limits<double>::infinity();
  while (2 * n <= options.max_samples) {
    const cplx midpoints = sweep_circle(order, field, singular, center, radius, n, 0.5, at_start);
    const cplx refined = 0.5 * (current + midpoints);
    change = std::abs(refined - current);
    n *= 2;
    current = refined;
    if (change <= std::max(options.rel_tol * std::abs(refined), options.abs_tol)) {
      return {current, n};
    }
  }
  throw QuadratureFailure(center, radius, n, change);
}

}  // namespace

ContourSpec default_contour(const MomentumField& field, int samples_per_circle) {
  const auto tp = field.turning_points();
  std::vector<cplx> special(tp.begin(), tp.end());
  std::vector<cplx> centers{cplx(0.0, 0.0)};
  for (const cplx p : field.poles()) {
    special.push_back(p);
    centers.push_back(p);
  }
  special.push_back(0.0);

  ContourSpec contour;
  contour.samples_per_circle = samples_per_circle;
  double largest = 0.0;
  for (const cplx p : special) largest = std::max(largest, std::abs(p));
  for (const cplx c : centers) {
    double d = std::numeric_limits<double>::infinity();
    for (const cplx p : special) {
      if (std::abs(p - c) > 1e-14) d = std::min(d, std::abs(p - c));
    }
    contour.circles.push_back({c, 0.25 * d, -1});
  }
  contour.large_circle_radius = 2.0 * largest;
  return contour;
}

void validate_contour(const ContourSpec& contour, const MomentumField& field) {
  if (contour.samples_per_circle < 64) {
    throw ConfigurationError("samples_per_circle must be at least 64");
  }
  const auto tp = field.turning_points();
  std::vector<cplx> special(tp.begin(), tp.end());
  std::vector<cplx> expected{cplx(0.0, 0.0)};
  for (const cplx p : field.poles()) {
    special.push_back(p);
    expected.push_back(p);
  }
  if (contour.circles.size() != expected.size()) {
    throw ConfigurationError("contour needs one circle per excluded point");
  }
  for (const cplx e : expected) {
    const auto hits = std::count_if(contour.circles.begin(), contour.circles.end(),
                                    [&](const Circle& c) { return std::abs(c.center - e) < 1e-12; });
    if (hits != 1) throw ConfigurationError("excluded point not covered by exactly one circle");
  }
  for (const Circle& circle : contour.circles) {
    if (!(circle.radius > 0.0)) throw ConfigurationError("circle radius must be positive");
    if (circle.orientation != 1 && circle.orientation != -1) {
      throw ConfigurationError("circle orientation must be +1 or -1");
    }
    for (const cplx p : special) {
      const double d = std::abs(p - circle.center);
      if (d < 1e-12) continue;
      if (d <= circle.radius + 1e-6) {
        throw ConfigurationError("circle around an excluded point reaches a turning point or pole");
      }
    }
  }
  double largest = 0.0;
  for (const cplx p : special) largest = std::max(largest, std::abs(p));
  if (!(contour.large_circle_radius > largest + 1e-6)) {
    throw ConfigurationError("large circle must enclose every turning point and pole");
  }
}

ContourSpec scale_radii(const ContourSpec& contour, double factor) {
  ContourSpec scaled = contour;
  for (auto& c : scaled.circles) c.radius *= factor;
  scaled.large_circle_radius *= factor;
  return scaled;
}

BranchTracker::BranchTracker(const MomentumField& field, cplx z, cplx q0)
    : field_(&field), singular_(singular_points(field)), z_(z), p_(field.pi_squared(z)), q0_(q0) {}

BranchTracker BranchTracker::anchored(const MomentumField& field) {
  const auto tp = field.turning_points();
  const cplx z1 = tp[0];
  const cplx z2 = tp[1];
  const double tol = 1e-10 * std::max(1.0, std::abs(z2));
  if (std::abs(z1.imag()) > tol || std::abs(z2.imag()) > tol || !(z1.real() > 0.0) ||
      !(z2.real() > z1.real())) {
    const auto& c = field.coefficients();
    throw NoClassicalRegionError("B^2-4AC", c.B * c.B - 4.0 * c.A * c.C);
  }
  if (field.geometry().kind == GeometryKind::hyperbolic && !(z2.real() < 1.0)) {
    throw NoClassicalRegionError("1-z2", 1.0 - z2.real());
  }
  const double width = z2.real() - z1.real();
  const cplx anchor(0.5 * (z1.real() + z2.real()), -1e-3 * width);
  return BranchTracker(field, anchor, std::sqrt(field.pi_squared(anchor)));
}

cplx BranchTracker::step_to(cplx z) {
  const cplx p = field_->pi_squared(z);
  const double jump = phase_jump(p_, p);
  if (jump > kMaxPhaseJump) throw BranchStepTooLarge(z_, z, jump);
  q0_ = pick_branch(p, q0_);
  z_ = z;
  p_ = p;
  return q0_;
}

cplx BranchTracker::continue_to(cplx target) {
  for (int guard = 0; z_ != target; ++guard) {
    if (guard > 10'000'000) throw Error("branch continuation did not reach its target");
    const cplx delta = target - z_;
    const double max_step = 0.25 * nearest_distance(z_, singular_);
    if (!(max_step > 1e-15)) throw DomainError("branch continuation hit a turning point or pole");
    cplx next = std::abs(delta) <= max_step ? target : z_ + delta * (max_step / std::abs(delta));
    for (int k = 0; k < 60 && phase_jump(p_, field_->pi_squared(next)) > kMaxPhaseJump / 2.0;
         ++k) {
      next = z_ + 0.5 * (next - z_);
    }
    step_to(next);
  }
  return q0_;
}

cplx q_term(int order, const MomentumField& field, cplx z, BranchTracker& state) {
  const cplx q0 = state.step_to(z);
  return q_value(order, field, z, q0, singular_points(field));
}

QTermJet q_terms_with_derivatives(int max_order, const MomentumField& field, cplx z,
                                  BranchTracker& state) {
  if (max_order < 0) throw ConfigurationError("WKB order must be nonnegative");
  const cplx q0 = state.step_to(z);
  const auto jets = q_jets(max_order, field, z, q0, singular_points(field));
  QTermJet out;
  for (const auto& j : jets) {
    out.value.push_back(j[0]);
    out.derivative.push_back(j[1]);
  }
  return out;
}

cplx WkbTermValue::weighted() const {
  cplx factor = 1.0;
  for (int k = 0; k < order; ++k) factor *= -kI;
  return factor * integral;
}

WkbTermValue integrate_term(int order, const MomentumField& field, const ContourSpec& contour,
                            const IntegrationOptions& options) {
  if (order < 0) throw ConfigurationError("WKB order must be nonnegative");
  validate_contour(contour, field);
  const auto singular = singular_points(field);
  const BranchTracker anchor = BranchTracker::anchored(field);

  std::vector<Circle> jobs = contour.circles;
  jobs.push_back({cplx(0.0, 0.0), contour.large_circle_radius, 1});

  const auto policy = options.parallel ? std::launch::async : std::launch::deferred;
  std::vector<std::future<CircleResult>> pending;
  for (const Circle& circle : jobs) {
    pending.push_back(std::async(policy, [&, circle] {
      const cplx start = circle.center - kI * circle.radius;
      const BranchTracker at_start = tracker_at(anchor, field, start);
      return integrate_circle(order, field, singular, circle.center, circle.radius,
                              contour.samples_per_circle, options, at_start);
    }));
  }

  WkbTermValue result;
  result.order = order;
  result.scheme = field.coefficients().scheme;
  result.geometry = field.geometry();
  result.integral = 0.0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const CircleResult r = pending[i].get();
    result.integral += static_cast<double>(jobs[i].orientation) * r.integral;
    result.samples.push_back(r.samples);
  }
  return result;
}

cplx analytic_residue_sum(int order, const CoefficientSet& coefficients) {
  if (order == 1) return -2.0 * kPi;
  if (order == 0) {
    return 2.0 * kPi * (two_term_sum(coefficients, SignConvention::bound_branch) + 1.0);
  }
  throw ConfigurationError("closed-form residue sums exist only for orders 0 and 1");
}

std::vector<VanishingMeasurement> higher_order_vanishing(const MomentumField& field,
                                                         std::span<const int> orders,
                                                         const ContourSpec& contour) {
  std::vector<VanishingMeasurement> out;
  for (const int order : orders) {
    if (order < 2) throw ConfigurationError("higher-order measurement needs order >= 2");
    const WkbTermValue v = integrate_term(order, field, contour);
    out.push_back({order, std::abs(v.weighted()), v.weighted()});
  }
  return out;
}

double riccati_residual(const MomentumField& field, cplx z, BranchTracker& state,
                        int truncation_order, double hbar) {
  const QTermJet jet = q_terms_with_derivatives(truncation_order, field, z, state);
  const cplx h = -kI * hbar;
  cplx q = 0.0;
  cplx q_prime = 0.0;
  cplx power = 1.0;
  for (int n = 0; n <= truncation_order; ++n) {
    q += power * jet.value[static_cast<std::size_t>(n)];
    q_prime += power * jet.derivative[static_cast<std::size_t>(n)];
    power *= h;
  }
  return std::abs(h * q_prime + q * q - field.pi_squared(z) + h * h * field.delta(z));
}

}  // namespace oscspec
