#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace oscspec {

enum class GeometryKind { flat, hyperbolic, spherical };

/// One of the three constant-curvature models: E3, H3 or S3.
struct Geometry {
  GeometryKind kind = GeometryKind::flat;

  static constexpr Geometry euclidean() { return {GeometryKind::flat}; }
  static constexpr Geometry hyperbolic() { return {GeometryKind::hyperbolic}; }
  static constexpr Geometry spherical() { return {GeometryKind::spherical}; }

  /// 0 for E3, -1 for H3, +1 for S3.
  constexpr int curvature_sign() const {
    switch (kind) {
      case GeometryKind::hyperbolic: return -1;
      case GeometryKind::spherical: return 1;
      case GeometryKind::flat: break;
    }
    return 0;
  }
  constexpr bool is_curved() const { return kind != GeometryKind::flat; }

  /// Short name: "e3", "h3" or "s3".
  std::string_view name() const;
  /// Accepts e3/h3/s3 as well as flat/hyperbolic/spherical.
  static Geometry parse(std::string_view text);

  friend constexpr bool operator==(Geometry, Geometry) = default;
};

/// Exact rational number with 64-bit numerator and positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Radial quantum number n and orbital quantum number l.
class QuantumNumbers {
 public:
  QuantumNumbers(int n, int l);

  int n() const { return n_; }
  int l() const { return l_; }
  /// N = 2n + l + 3/2, the only combination the spectra depend on.
  Rational N() const { return Rational(4 * n_ + 2 * l_ + 3, 2); }
  /// L = l + 1/2.
  Rational L() const { return Rational(2 * l_ + 1, 2); }
  Rational L2() const { return L() * L(); }

  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;

 private:
  int n_;
  int l_;
};

struct PhysicalConstants {
  double mass = 1.0;
  double stiffness = 1.0;
  double radius = 1.0;  ///< curvature radius rho; unused for E3
};

/// Dimensionless stiffness mu = M k rho^4 / hbar^2 plus optional physical scales.
class ModelParams {
 public:
  explicit ModelParams(double mu, double hbar = 1.0,
                       std::optional<PhysicalConstants> physical = std::nullopt);
  static ModelParams from_physical(const PhysicalConstants& physical, double hbar = 1.0);

  double mu() const { return mu_; }
  double hbar() const { return hbar_; }
  const std::optional<PhysicalConstants>& physical() const { return physical_; }

 private:
  double mu_;
  double hbar_;
  std::optional<PhysicalConstants> physical_;
};

enum class Method { exact, wkb_naive, wkb_corrected, ode_oracle };

std::string_view to_string(Method method);

struct SpectrumEntry {
  QuantumNumbers quantum_numbers;
  double epsilon = 0.0;  ///< M E rho^2 / hbar^2 (curved) or E / (hbar sqrt(k/M)) (flat)
  Method method = Method::exact;
  bool bound = true;
};

/// Physical energy to the dimensionless epsilon of the given geometry.
double to_dimensionless(double energy, const ModelParams& params, Geometry geometry);
double from_dimensionless(double epsilon, const ModelParams& params, Geometry geometry);

/// Curved-space epsilon expressed in flat oscillator units hbar sqrt(k/M).
double flat_limit_energy(double epsilon, double mu);

}  // namespace oscspec
