#include <doctest.h>

#include <cmath>
#include <random>

#include "oscspec/coefficients.hpp"
#include "oscspec/errors.hpp"

using namespace oscspec;

namespace {
const Geometry kH3 = Geometry::hyperbolic();
const Geometry kS3 = Geometry::spherical();
const Geometry kE3 = Geometry::euclidean();
}  // namespace

TEST_CASE("coefficient triples") {
  auto c = build_coefficients(kH3, 30.0, 0, 7.5, Scheme::naive);
  CHECK(c.A == -30.0);
  CHECK(c.B == 14.25);
  CHECK(c.C == -0.25);

  c = build_coefficients(kH3, 30.0, 0, 7.5, Scheme::corrected);
  CHECK(c.A == -30.25);
  CHECK(c.B == 14.5);
  CHECK(c.C == -0.25);

  c = build_coefficients(kS3, 30.0, 1, 16.5, Scheme::naive);
  CHECK(c.A == -30.0);
  CHECK(c.B == 31.75);
  CHECK(c.C == -2.25);

  c = build_coefficients(kE3, 0.0, 0, 1.5, Scheme::naive);
  CHECK(c.A == -1.0);
  CHECK(c.B == 3.0);
  CHECK(c.C == -0.25);
}

TEST_CASE("flat corrected scheme is a flagged no-op") {
  const auto naive = build_coefficients(kE3, 0.0, 2, 3.0, Scheme::naive);
  const auto corrected = build_coefficients(kE3, 0.0, 2, 3.0, Scheme::corrected);
  CHECK(corrected.correction_noop);
  CHECK_FALSE(naive.correction_noop);
  CHECK(corrected.A == naive.A);
  CHECK(corrected.B == naive.B);
  CHECK(corrected.C == naive.C);
}

TEST_CASE("coefficient invariants (random)") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> mu_dist(0.1, 200.0);
  std::uniform_real_distribution<double> eps_dist(-5.0, 60.0);
  std::uniform_int_distribution<int> l_dist(0, 8);
  for (int trial = 0; trial < 500; ++trial) {
    const double mu = mu_dist(rng);
    const double eps = eps_dist(rng);
    const int l = l_dist(rng);
    for (auto g : {kH3, kS3}) {
      const auto naive = build_coefficients(g, mu, l, eps, Scheme::naive);
      const auto corr = build_coefficients(g, mu, l, eps, Scheme::corrected);
      CHECK(naive.C == -(l + 0.5) * (l + 0.5));
      CHECK(corr.C == naive.C);
      CHECK(naive.A < 0.0);
      CHECK(corr.A < 0.0);
      CHECK(naive.alpha == 0.0);
      CHECK(naive.beta == 0.0);
      CHECK(corr.A - naive.A == doctest::Approx(-0.25));
      CHECK(corr.B - naive.B == doctest::Approx(g == kH3 ? 0.25 : -0.25));
      CHECK(corr.alpha == -0.25);
      CHECK(corr.beta == (g == kH3 ? 0.25 : -0.25));
    }
  }
}

TEST_CASE("field kinds follow the geometry") {
  CHECK(MomentumField(build_coefficients(kE3, 0, 0, 1.5, Scheme::naive)).denominator_kind() ==
        DenominatorKind::one);
  CHECK(MomentumField(build_coefficients(kE3, 0, 0, 1.5, Scheme::naive)).delta_kind() ==
        DeltaKind::none);
  CHECK(MomentumField(build_coefficients(kH3, 30, 0, 7.5, Scheme::naive)).denominator_kind() ==
        DenominatorKind::one_minus_z2_squared);
  CHECK(MomentumField(build_coefficients(kS3, 30, 0, 9, Scheme::corrected)).delta_kind() ==
        DeltaKind::spherical_corrected);
  CHECK(MomentumField(build_coefficients(kS3, 30, 0, 9, Scheme::naive)).denominator_kind() ==
        DenominatorKind::one_plus_z2_squared);
}

TEST_CASE("pi_squared values") {
  const MomentumField h3(build_coefficients(kH3, 30.0, 0, 7.5, Scheme::naive));
  CHECK(std::abs(pi_squared(h3, 0.0) - cplx(-0.25)) < 1e-15);
  // (-30/16 + 14.25/4 - 1/4) / (3/4)^2 = 23/9
  CHECK(std::abs(pi_squared(h3, 0.5) - cplx(23.0 / 9.0)) < 1e-14);

  const MomentumField e3(build_coefficients(kE3, 0.0, 0, 1.5, Scheme::naive));
  for (double sign : {1.0, -1.0}) {
    const double z = std::sqrt((3.0 + sign * std::sqrt(8.0)) / 2.0);
    CHECK(std::abs(pi_squared(e3, z)) < 1e-14);
  }
  CHECK_THROWS_AS(pi_squared(h3, 1.0), PoleEvaluationError);
  const MomentumField s3(build_coefficients(kS3, 30.0, 0, 9.0, Scheme::naive));
  try {
    (void)pi_squared(s3, cplx(0.0, -1.0));
    FAIL("expected a pole error");
  } catch (const PoleEvaluationError& e) {
    CHECK(std::abs(e.pole() - cplx(0.0, -1.0)) < 1e-12);
  }
}

TEST_CASE("delta values") {
  const MomentumField h3n(build_coefficients(kH3, 30.0, 0, 7.5, Scheme::naive));
  const MomentumField h3c(build_coefficients(kH3, 30.0, 0, 7.5, Scheme::corrected));
  const MomentumField s3n(build_coefficients(kS3, 30.0, 0, 9.0, Scheme::naive));
  const MomentumField e3(build_coefficients(kE3, 0.0, 0, 1.5, Scheme::naive));
  CHECK(std::abs(delta(h3n, 0.0)) == 0.0);
  CHECK(std::abs(delta(h3c, 0.0)) == 0.0);
  CHECK(std::abs(delta(s3n, 0.5) - cplx(-0.21)) < 1e-14);
  CHECK(std::abs(delta(e3, cplx(0.3, 0.7))) == 0.0);
}

TEST_CASE("rearrangement leaves Pi^2 + Delta unchanged (random)") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> mu_dist(0.5, 150.0);
  std::uniform_real_distribution<double> eps_dist(0.0, 50.0);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_int_distribution<int> l_dist(0, 6);
  for (int trial = 0; trial < 400; ++trial) {
    const double mu = mu_dist(rng);
    const double eps = eps_dist(rng);
    const int l = l_dist(rng);
    const cplx z(coord(rng), coord(rng));
    for (auto g : {kH3, kS3}) {
      const MomentumField naive(build_coefficients(g, mu, l, eps, Scheme::naive));
      const MomentumField corr(build_coefficients(g, mu, l, eps, Scheme::corrected));
      const double s = g == kH3 ? 1.0 : -1.0;
      if (std::abs(1.0 - s * z * z) < 1e-3) continue;
      const cplx lhs = naive.pi_squared(z) + naive.delta(z);
      const cplx rhs = corr.pi_squared(z) + corr.delta(z);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("Pi^2 and Delta are even in z (random)") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  const MomentumField fields[] = {
      MomentumField(build_coefficients(kH3, 30, 1, 9.0, Scheme::naive)),
      MomentumField(build_coefficients(kH3, 30, 1, 9.0, Scheme::corrected)),
      MomentumField(build_coefficients(kS3, 5, 2, 12.0, Scheme::naive)),
      MomentumField(build_coefficients(kS3, 5, 2, 12.0, Scheme::corrected)),
      MomentumField(build_coefficients(kE3, 0, 3, 6.5, Scheme::naive)),
  };
  for (int trial = 0; trial < 200; ++trial) {
    const cplx z(coord(rng), coord(rng));
    for (const auto& f : fields) {
      if (std::abs(1.0 - std::abs(z * z)) < 1e-3) continue;
      CHECK(std::abs(f.pi_squared(z) - f.pi_squared(-z)) <= 1e-12 * (1 + std::abs(f.pi_squared(z))));
      CHECK(std::abs(f.delta(z) - f.delta(-z)) <= 1e-12 * (1 + std::abs(f.delta(z))));
    }
  }
}

TEST_CASE("pi_squared_jet matches finite differences in t") {
  const MomentumField f(build_coefficients(kS3, 30, 1, 16.5, Scheme::corrected));
  const cplx z(0.4, 0.3);
  const double h = 1e-4;
  auto p = [&](double dt) { return f.pi_squared(z * std::exp(dt)); };
  const auto jet = f.pi_squared_jet(z);
  CHECK(std::abs(jet.value - p(0)) < 1e-14);
  CHECK(std::abs(jet.dt - (p(h) - p(-h)) / (2 * h)) < 1e-6);
  CHECK(std::abs(jet.dtt - (p(h) - 2.0 * p(0) + p(-h)) / (h * h)) < 1e-4);
}

TEST_CASE("turning points are zeros of the numerator") {
  const MomentumField f(build_coefficients(kH3, 30, 0, 7.5, Scheme::corrected));
  const auto tp = f.turning_points();
  CHECK(std::abs(tp[0]) <= std::abs(tp[1]));
  for (const cplx z : tp) CHECK(std::abs(f.pi_squared(z)) < 1e-12);
  CHECK(std::abs(tp[2] + tp[0]) < 1e-15);
  CHECK(f.poles().size() == 2);
  CHECK(MomentumField(build_coefficients(kE3, 0, 0, 1.5, Scheme::naive)).poles().empty());
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(build_coefficients(kH3, 30, -1, 1.0, Scheme::naive), ConfigurationError);
  CHECK_THROWS_AS(build_coefficients(kH3, -1.0, 0, 1.0, Scheme::naive), ConfigurationError);
  CHECK_THROWS_AS(parse_scheme("langer"), ConfigurationError);
}
