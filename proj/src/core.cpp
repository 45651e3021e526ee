#include "oscspec/core.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "oscspec/errors.hpp"

namespace oscspec {

namespace {

std::string format_complex(std::complex<double> z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

PoleEvaluationError::PoleEvaluationError(std::complex<double> pole)
    : Error("evaluation at denominator pole z = " + format_complex(pole)), pole_(pole) {}

NoClassicalRegionError::NoClassicalRegionError(std::string radicand, double value)
    : Error("no classical region: radicand " + radicand + " = " + std::to_string(value) +
            " is negative"),
      radicand_(std::move(radicand)),
      value_(value) {}

BranchStepTooLarge::BranchStepTooLarge(std::complex<double> from, std::complex<double> to,
                                       double phase_jump)
    : Error("branch tracking step " + format_complex(from) + " -> " + format_complex(to) +
            " rotates Pi^2 by " + std::to_string(phase_jump) + " rad; refine the step"),
      from_(from),
      to_(to),
      phase_jump_(phase_jump) {}

QuadratureFailure::QuadratureFailure(std::complex<double> center, double radius, long samples,
                                     double last_change)
    : Error("contour quadrature around " + format_complex(center) + " (radius " +
            std::to_string(radius) + ") did not converge with " + std::to_string(samples) +
            " samples; last change " + std::to_string(last_change)),
      center_(center),
      radius_(radius),
      samples_(samples),
      last_change_(last_change) {}

std::string_view Geometry::name() const {
  switch (kind) {
    case GeometryKind::hyperbolic: return "h3";
    case GeometryKind::spherical: return "s3";
    case GeometryKind::flat: break;
  }
  return "e3";
}

Geometry Geometry::parse(std::string_view text) {
  if (text == "e3" || text == "flat" || text == "E3") return euclidean();
  if (text == "h3" || text == "hyperbolic" || text == "H3") return hyperbolic();
  if (text == "s3" || text == "spherical" || text == "S3") return spherical();
  throw ConfigurationError("unknown geometry '" + std::string(text) + "'");
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ConfigurationError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / (g == 0 ? 1 : g);
  den_ = den / (g == 0 ? 1 : g);
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(Rational a, Rational b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(Rational a, Rational b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(Rational a, Rational b) { return Rational(a.num_ * b.num_, a.den_ * b.den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

QuantumNumbers::QuantumNumbers(int n, int l) : n_(n), l_(l) {
  if (n < 0 || l < 0) {
    throw ConfigurationError("quantum numbers must be nonnegative (n=" + std::to_string(n) +
                             ", l=" + std::to_string(l) + ")");
  }
}

ModelParams::ModelParams(double mu, double hbar, std::optional<PhysicalConstants> physical)
    : mu_(mu), hbar_(hbar), physical_(physical) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigurationError("mu must be positive");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ConfigurationError("hbar must be positive");
  if (physical_) {
    const auto& p = *physical_;
    if (!(p.mass > 0.0) || !(p.stiffness > 0.0) || !(p.radius > 0.0)) {
      throw ConfigurationError("physical constants must be positive");
    }
    const double expected = p.mass * p.stiffness * std::pow(p.radius, 4) / (hbar * hbar);
    if (std::abs(expected - mu) > 1e-12 * expected) {
      throw ConfigurationError("mu is inconsistent with M k rho^4 / hbar^2");
    }
  }
}

ModelParams ModelParams::from_physical(const PhysicalConstants& physical, double hbar) {
  const double mu = physical.mass * physical.stiffness * std::pow(physical.radius, 4) /
                    (hbar * hbar);
  return ModelParams(mu, hbar, physical);
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::wkb_naive: return "wkb_naive";
    case Method::wkb_corrected: return "wkb_corrected";
    case Method::ode_oracle: return "ode_oracle";
    case Method::exact: break;
  }
  return "exact";
}

namespace {

const PhysicalConstants& require_physical(const ModelParams& params) {
  if (!params.physical()) {
    throw ConfigurationError("unit conversion needs the physical constants M, k, rho");
  }
  return *params.physical();
}

// Energy scale such that epsilon = E / scale.
double energy_scale(const ModelParams& params, Geometry geometry) {
  const auto& p = require_physical(params);
  const double hbar = params.hbar();
  if (geometry.is_curved()) return hbar * hbar / (p.mass * p.radius * p.radius);
  return hbar * std::sqrt(p.stiffness / p.mass);
}

}  // namespace

double to_dimensionless(double energy, const ModelParams& params, Geometry geometry) {
  return energy / energy_scale(params, geometry);
}

double from_dimensionless(double epsilon, const ModelParams& params, Geometry geometry) {
  return epsilon * energy_scale(params, geometry);
}

double flat_limit_energy(double epsilon, double mu) {
  if (!(mu > 0.0)) throw ConfigurationError("mu must be positive");
  return epsilon / std::sqrt(mu);
}

}  // namespace oscspec
