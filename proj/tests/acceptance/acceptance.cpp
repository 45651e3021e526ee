// Acceptance gate: one PASS/FAIL line per criterion.
//   acceptance                 run every criterion
//   acceptance --criterion k   run criterion k only
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oscspec/contour.hpp"
#include "oscspec/oracle.hpp"
#include "oscspec/quantize.hpp"

using namespace oscspec;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Pinned tolerances.
constexpr double kFlatOracleAbs = 1e-6;
constexpr double kFlatRuntimeSeconds = 10.0;
constexpr double kExactAbs = 1e-12;
constexpr double kCorrectedWkbAbs = 1e-10;
constexpr double kOracleRel = 1e-5;
constexpr double kIdentityAbs = 1e-12;
constexpr double kOrderOneAbs = 1e-6;
constexpr double kResidueRel = 1e-6;
constexpr double kVanishingAbs = 1e-6;
constexpr double kNaiveGapAbs = 1e-4;
constexpr double kNaiveGapH3 = 0.09083;
constexpr double kNaiveGapS3 = -0.15913;
constexpr double kShrinkMin = 80.0;
constexpr double kShrinkMax = 120.0;
constexpr double kGridDoublingAbs = 1e-7;

const Geometry kE3 = Geometry::euclidean();
const Geometry kH3 = Geometry::hyperbolic();
const Geometry kS3 = Geometry::spherical();
const Geometry kAll[] = {kE3, kH3, kS3};

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome out;
  std::ostringstream notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      out.pass = false;
      notes << "[fail] " << what << "; ";
    }
  }
  void note(const std::string& what) { notes << what << "; "; }
  Outcome done() {
    out.detail = notes.str();
    return out;
  }
};

std::string num(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.6g", x);
  return buffer;
}

std::string state(int n, int l) { return "(" + std::to_string(n) + "," + std::to_string(l) + ")"; }

cplx weighted_term(int order, const CoefficientSet& c) {
  const MomentumField f(c);
  return integrate_term(order, f, default_contour(f)).weighted();
}

Outcome criterion_1() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  for (int n = 0; n <= 5; ++n) {
    for (int l = 0; l <= 5; ++l) {
      c.require(exact_flat_epsilon(QuantumNumbers(n, l)) == Rational(4 * n + 2 * l + 3, 2),
                "exact rational " + state(n, l));
    }
  }
  double worst = 0.0;
  for (int n = 0; n <= 3; ++n) {
    for (int l = 0; l <= 3; ++l) {
      const auto r = oracle::solve(kE3, 0.0, l, n);
      const double dev = std::abs(r.epsilon - (2.0 * n + l + 1.5));
      worst = std::max(worst, dev);
      c.require(r.converged && dev <= kFlatOracleAbs, "oracle " + state(n, l) + " dev " + num(dev));
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(seconds < kFlatRuntimeSeconds, "runtime " + num(seconds) + " s");
  c.note("max oracle deviation " + num(worst) + ", runtime " + num(seconds) + " s");
  return c.done();
}

Outcome curved_levels(Geometry g, const double (&expected)[3]) {
  Check c;
  const int ns[] = {0, 0, 1};
  const int ls[] = {0, 1, 0};
  for (int k = 0; k < 3; ++k) {
    const QuantumNumbers qn(ns[k], ls[k]);
    const auto exact = exact_epsilon(g, 30.0, qn);
    c.require(exact.bound && std::abs(exact.epsilon - expected[k]) <= kExactAbs,
              "exact " + state(ns[k], ls[k]) + " = " + num(exact.epsilon));
    const auto wkb = solve_epsilon(g, 30.0, qn, Scheme::corrected);
    c.require(std::abs(wkb.epsilon - expected[k]) <= kCorrectedWkbAbs,
              "corrected WKB " + state(ns[k], ls[k]) + " = " + num(wkb.epsilon));
    const auto r = oracle::solve(g, 30.0, ls[k], ns[k]);
    const double rel = std::abs(r.epsilon - expected[k]) / expected[k];
    c.require(r.converged && rel <= kOracleRel,
              "oracle " + state(ns[k], ls[k]) + " rel " + num(rel));
    c.note(state(ns[k], ls[k]) + " exact " + num(exact.epsilon) + " wkb " + num(wkb.epsilon) +
           " oracle " + num(r.epsilon));
  }
  return c.done();
}

Outcome criterion_2() {
  Outcome o = curved_levels(kH3, {7.5, 11.0, 13.5});
  const int count = bound_state_count(30.0, 0);
  const auto top = exact_epsilon(kH3, 30.0, QuantumNumbers(2, 0));
  if (count != 2 || top.bound) {
    o.pass = false;
    o.detail += "[fail] bound_state_count(30,0) = " + std::to_string(count) +
                ", n=2 bound flag " + (top.bound ? "true" : "false") + "; ";
  } else {
    o.detail += "bound_state_count(30,0) = 2, n=2 unbound; ";
  }
  return o;
}

Outcome criterion_3() { return curved_levels(kS3, {9.0, 16.5, 25.0}); }

Outcome criterion_4() {
  Check c;
  double worst = 0.0;
  int checked = 0;
  for (double mu : {5.0, 30.0, 100.0}) {
    for (int n = 0; n <= 6; ++n) {
      for (int l = 0; l <= 6; ++l) {
        const QuantumNumbers qn(n, l);
        const auto h = exact_epsilon(kH3, mu, qn);
        if (!h.bound) continue;
        const double s = exact_epsilon(kS3, mu, qn).epsilon;
        const double N = qn.N().value();
        const double d1 = std::abs((s - h.epsilon) - (N * N - 0.75));
        const double d2 = std::abs((s + h.epsilon) - std::sqrt(1.0 + 4.0 * mu) * N);
        worst = std::max({worst, d1, d2});
        c.require(d1 <= kIdentityAbs && d2 <= kIdentityAbs,
                  "mu " + num(mu) + " " + state(n, l));
        ++checked;
      }
    }
  }
  c.note(std::to_string(checked) + " bound states, max residual " + num(worst));
  return c.done();
}

Outcome criterion_5() {
  Check c;
  double worst = 0.0;
  for (auto g : kAll) {
    for (auto scheme : {Scheme::naive, Scheme::corrected}) {
      for (double mu : {5.0, 30.0}) {
        for (int l = 0; l <= 1; ++l) {
          const auto ground = exact_epsilon(g, mu, QuantumNumbers(0, l));
          if (!ground.bound) continue;
          // the eigenvalue itself and an arbitrary trial energy inside the bound range
          for (double e : {ground.epsilon, ground.epsilon * 1.013}) {
            const cplx v = weighted_term(1, build_coefficients(g, mu, l, e, scheme));
            const double dev = std::abs(v - cplx(-kTwoPi));
            worst = std::max(worst, dev);
            c.require(dev <= kOrderOneAbs, std::string(g.name()) + " " +
                                               std::string(to_string(scheme)) + " eps " + num(e) +
                                               " dev " + num(dev));
          }
        }
      }
    }
  }
  c.note("max |order-1 term + 2 pi| = " + num(worst));
  return c.done();
}

Outcome criterion_6() {
  Check c;
  double worst = 0.0;
  for (auto g : kAll) {
    for (auto scheme : {Scheme::naive, Scheme::corrected}) {
      for (double mu : {5.0, 30.0}) {
        for (int n = 0; n <= 1; ++n) {
          for (int l = 0; l <= 1; ++l) {
            const auto exact = exact_epsilon(g, mu, QuantumNumbers(n, l));
            if (!exact.bound) continue;
            const auto coeffs = build_coefficients(g, mu, l, exact.epsilon, scheme);
            const cplx analytic = analytic_residue_sum(0, coeffs);
            const cplx numeric = weighted_term(0, coeffs);
            const double rel = std::abs(numeric - analytic) / std::abs(analytic);
            worst = std::max(worst, rel);
            c.require(rel <= kResidueRel, std::string(g.name()) + " mu " + num(mu) + " " +
                                              state(n, l) + " rel " + num(rel));
          }
        }
      }
    }
  }
  c.note("max relative deviation " + num(worst));
  return c.done();
}

Outcome criterion_7() {
  Check c;
  double worst = 0.0;
  for (auto g : kAll) {
    for (int n = 0; n <= 1; ++n) {
      for (int l = 0; l <= 1; ++l) {
        const auto exact = exact_epsilon(g, 30.0, QuantumNumbers(n, l));
        if (!exact.bound) continue;
        const cplx v =
            weighted_term(2, build_coefficients(g, 30.0, l, exact.epsilon, Scheme::corrected));
        worst = std::max(worst, std::abs(v));
        c.require(std::abs(v) <= kVanishingAbs, std::string(g.name()) + " " + state(n, l) +
                                                    " |order-2| = " + num(std::abs(v)));
      }
    }
  }
  c.note("corrected max |order-2| " + num(worst));
  for (auto g : {kH3, kS3}) {
    const double e = naive_wkb_epsilon(g, 30.0, QuantumNumbers(0, 0)).epsilon;
    const cplx v = weighted_term(2, build_coefficients(g, 30.0, 0, e, Scheme::naive));
    c.note(std::string(g.name()) + " naive order-2 at naive root " + num(v.real()) +
           " (reported)");
  }
  return c.done();
}

Outcome criterion_8() {
  Check c;
  const QuantumNumbers qn(0, 0);
  const double h = naive_wkb_epsilon(kH3, 30.0, qn).epsilon - exact_epsilon(kH3, 30.0, qn).epsilon;
  const double s = naive_wkb_epsilon(kS3, 30.0, qn).epsilon - exact_epsilon(kS3, 30.0, qn).epsilon;
  c.require(std::abs(h - kNaiveGapH3) <= kNaiveGapAbs, "h3 gap " + num(h));
  c.require(std::abs(s - kNaiveGapS3) <= kNaiveGapAbs, "s3 gap " + num(s));
  c.note("h3 gap " + num(h) + ", s3 gap " + num(s));
  return c.done();
}

Outcome criterion_9() {
  Check c;
  const QuantumNumbers qn(0, 0);
  const double N = qn.N().value();
  for (auto g : {kH3, kS3}) {
    const double d4 = std::abs(flat_limit_energy(exact_epsilon(g, 1e4, qn).epsilon, 1e4) - N);
    const double d6 = std::abs(flat_limit_energy(exact_epsilon(g, 1e6, qn).epsilon, 1e6) - N);
    const double shrink = d4 / d6;
    c.require(shrink >= kShrinkMin && shrink <= kShrinkMax,
              std::string(g.name()) + " shrink factor " + num(shrink) + " outside [" +
                  num(kShrinkMin) + ", " + num(kShrinkMax) + "]");
    c.note(std::string(g.name()) + " |eps/sqrt(mu) - N| = " + num(d4) + " -> " + num(d6) +
           ", factor " + num(shrink));
  }
  return c.done();
}

Outcome criterion_10() {
  Check c;
  oracle::OracleConfig fine;
  fine.grid_points = 2 * oracle::OracleConfig{}.grid_points;
  double worst = 0.0;
  int solved = 0;
  for (auto g : kAll) {
    for (double mu : {5.0, 30.0, 100.0}) {
      if (g == kE3 && mu != 5.0) continue;
      for (int n = 0; n <= 2; ++n) {
        for (int l = 0; l <= 2; ++l) {
          if (!exact_epsilon(g, mu, QuantumNumbers(n, l)).bound) continue;
          const auto a = oracle::solve(g, mu, l, n);
          const auto b = oracle::solve(g, mu, l, n, fine);
          const std::string tag = std::string(g.name()) + " mu " + num(mu) + " " + state(n, l);
          c.require(a.converged && a.node_count == n,
                    tag + " nodes " + std::to_string(a.node_count));
          const double shift = std::abs(a.epsilon - b.epsilon);
          worst = std::max(worst, shift);
          c.require(shift <= kGridDoublingAbs, tag + " grid shift " + num(shift));
          ++solved;
        }
      }
    }
  }
  c.note(std::to_string(solved) + " states, max grid-doubling shift " + num(worst));
  return c.done();
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria = {
    {"E3 spectrum exact and oracle", criterion_1},
    {"H3 spectrum at mu=30", criterion_2},
    {"S3 spectrum at mu=30", criterion_3},
    {"cross-geometry identities", criterion_4},
    {"order-1 universality", criterion_5},
    {"residue-quadrature agreement", criterion_6},
    {"higher-order vanishing", criterion_7},
    {"naive-gap reproduction", criterion_8},
    {"flat-limit shrink factor", criterion_9},
    {"oracle node theorem and grid doubling", criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion k]\n");
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(kCriteria.size())) {
    std::fprintf(stderr, "criterion must be 1..%zu\n", kCriteria.size());
    return 2;
  }
  bool all = true;
  for (std::size_t k = 0; k < kCriteria.size(); ++k) {
    if (only != 0 && static_cast<int>(k + 1) != only) continue;
    Outcome o;
    try {
      o = kCriteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::printf("%s  %2zu  %-40s %s\n", o.pass ? "PASS" : "FAIL", k + 1, kCriteria[k].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
