#include "oscspec/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "oscspec/contour.hpp"
#include "oscspec/errors.hpp"
#include "oscspec/oracle.hpp"
#include "oscspec/quantize.hpp"
#include "oscspec/report.hpp"

namespace oscspec::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class UsageError : public Error {
 public:
  using Error::Error;
};

// Runs fn(0..count-1) on a small worker pool; results land at their own index.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> results;
  results.reserve(count);
  for (auto& s : slots) results.push_back(std::move(*s));
  return results;
}

double tolerance_from_environment(double fallback) {
  const char* text = std::getenv("OSCSPEC_TOL");
  if (text == nullptr || *text == '\0') return fallback;
  char* end = nullptr;
  const double value = std::strtod(text, &end);
  if (*end != '\0' || !std::isfinite(value) || !(value > 0.0)) {
    throw UsageError(std::string("OSCSPEC_TOL is not a positive decimal: ") + text);
  }
  return value;
}

struct GeometryArgs {
  std::string geometry;
  double mu = 0.0;
  CLI::Option* mu_option = nullptr;

  void attach(CLI::App* app, const std::vector<std::string>& allowed, bool with_mu = true) {
    app->add_option("--geometry", geometry)->required()->check(CLI::IsMember(allowed));
    if (with_mu) {
      mu_option = app->add_option("--mu", mu, "dimensionless stiffness M k rho^4 / hbar^2");
    }
  }
  Geometry resolved() const { return Geometry::parse(geometry); }
  std::optional<double> checked_mu() const {
    const Geometry g = resolved();
    const bool given = mu_option->count() > 0;
    if (g.is_curved() && !given) throw UsageError("--mu is required for h3 and s3");
    if (!g.is_curved() && given) throw UsageError("--mu is not accepted for e3");
    if (!given) return std::nullopt;
    if (!(mu > 0.0) || !std::isfinite(mu)) throw UsageError("--mu must be positive");
    return mu;
  }
};

Method parse_method(const std::string& text) {
  if (text == "exact") return Method::exact;
  if (text == "wkb-naive") return Method::wkb_naive;
  if (text == "wkb-corrected") return Method::wkb_corrected;
  return Method::ode_oracle;
}

struct StateOutcome {
  report::SpectrumRow row;
  std::vector<oracle::WavePoint> wavefunction;
  std::string failure;
};

StateOutcome compute_state(Geometry g, std::optional<double> mu, int n, int l, Method method) {
  const QuantumNumbers qn(n, l);
  const double m = mu.value_or(0.0);
  StateOutcome out{{g, mu, SpectrumEntry{qn, kNaN, method, false}, true}, {}, {}};
  switch (method) {
    case Method::exact:
      out.row.entry = exact_epsilon(g, m, qn);
      break;
    case Method::wkb_naive:
      out.row.entry = naive_wkb_epsilon(g, m, qn);
      break;
    case Method::wkb_corrected:
      try {
        out.row.entry = solve_epsilon(g, m, qn, Scheme::corrected);
      } catch (const NoBoundStateError&) {
      }
      break;
    case Method::ode_oracle:
      try {
        oracle::EigenResult r = oracle::solve(g, m, l, n);
        if (r.no_bound_state) break;
        out.row.entry.epsilon = r.epsilon;
        out.row.entry.bound = true;
        out.row.converged = r.converged;
        if (!r.converged) out.failure = r.diagnostics;
        out.wavefunction = std::move(r.wavefunction);
      } catch (const ResolutionError& e) {
        out.row.converged = false;
        out.failure = e.what();
      }
      break;
  }
  return out;
}

std::string suffixed_path(const std::string& path, int n, int l) {
  const std::string tag = "_n" + std::to_string(n) + "_l" + std::to_string(l);
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

void check_ranges(int n_max, int l_max) {
  if (n_max < 0 || l_max < 0) throw UsageError("--n-max and --l-max must be nonnegative");
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  GeometryArgs geometry;
  int n_max = 0;
  int l_max = 0;
  std::string method = "exact";
  std::string format = "table";
  std::string dump;
};

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out, std::ostream& err) {
  const Geometry g = a.geometry.resolved();
  const auto mu = a.geometry.checked_mu();
  check_ranges(a.n_max, a.l_max);
  const Method method = parse_method(a.method);
  if (!a.dump.empty() && method != Method::ode_oracle) {
    throw UsageError("--dump-wavefunction requires --method ode");
  }

  std::vector<std::pair<int, int>> states;
  for (int n = 0; n <= a.n_max; ++n) {
    for (int l = 0; l <= a.l_max; ++l) states.emplace_back(n, l);
  }
  const auto outcomes = parallel_map<StateOutcome>(states.size(), [&](std::size_t i) {
    return compute_state(g, mu, states[i].first, states[i].second, method);
  });

  std::vector<report::SpectrumRow> rows;
  for (const auto& o : outcomes) rows.push_back(o.row);
  if (a.format == "csv") {
    report::write_csv(out, rows);
  } else if (a.format == "json") {
    out << report::canonical_json(report::to_json(rows)) << '\n';
  } else {
    report::write_table(out, rows);
  }

  if (!a.dump.empty()) {
    for (const auto& o : outcomes) {
      if (o.wavefunction.empty()) continue;
      const auto& qn = o.row.entry.quantum_numbers;
      const std::string path =
          states.size() == 1 ? a.dump : suffixed_path(a.dump, qn.n(), qn.l());
      report::write_wavefunction(path, g, mu, qn.n(), qn.l(), o.row.entry.epsilon,
                                 o.wavefunction);
    }
  }

  int status = kExitOk;
  for (const auto& o : outcomes) {
    if (!o.row.converged) {
      err << "oracle did not converge for n=" << o.row.entry.quantum_numbers.n()
          << " l=" << o.row.entry.quantum_numbers.l() << ": " << o.failure << '\n';
      status = kExitOracle;
    }
  }
  return status;
}

// ---------------------------------------------------------------- contour

struct ContourArgs {
  GeometryArgs geometry;
  int l = 0;
  double epsilon = 0.0;
  int order = 0;
  std::string scheme = "corrected";
  int samples = 4096;
  std::string format = "table";
};

int cmd_contour(const ContourArgs& a, std::ostream& out) {
  const Geometry g = a.geometry.resolved();
  const auto mu = a.geometry.checked_mu();
  if (a.l < 0) throw UsageError("--l must be nonnegative");
  if (a.order < 0) throw UsageError("--order must be nonnegative");
  if (a.samples < 64) throw UsageError("--samples must be at least 64");

  const auto coefficients =
      build_coefficients(g, mu.value_or(0.0), a.l, a.epsilon, parse_scheme(a.scheme));
  const MomentumField field(coefficients);
  const ContourSpec contour = default_contour(field, a.samples);
  const WkbTermValue value = integrate_term(a.order, field, contour);
  const cplx weighted = value.weighted();
  std::optional<cplx> analytic;
  if (a.order <= 1) analytic = analytic_residue_sum(a.order, coefficients);

  nlohmann::json doc;
  doc["geometry"] = g.name();
  doc["mu"] = mu ? nlohmann::json(*mu) : nlohmann::json(nullptr);
  doc["l"] = a.l;
  doc["epsilon"] = a.epsilon;
  doc["order"] = a.order;
  doc["scheme"] = to_string(coefficients.scheme);
  doc["integral"] = {value.integral.real(), value.integral.imag()};
  doc["weighted"] = {weighted.real(), weighted.imag()};
  doc["samples"] = value.samples;
  if (analytic) {
    doc["analytic"] = {analytic->real(), analytic->imag()};
    doc["difference"] = std::abs(weighted - *analytic);
  }

  if (a.format == "json") {
    out << report::canonical_json(doc) << '\n';
    return kExitOk;
  }
  auto pair = [](cplx z) {
    return report::format_real(z.real()) + " " + report::format_real(z.imag()) + "i";
  };
  out << "geometry   " << g.name() << '\n';
  out << "scheme     " << to_string(coefficients.scheme) << '\n';
  out << "order      " << a.order << '\n';
  out << "integral   " << pair(value.integral) << '\n';
  out << "weighted   " << pair(weighted) << '\n';
  if (analytic) {
    out << "analytic   " << pair(*analytic) << '\n';
    out << "difference " << report::format_real(std::abs(weighted - *analytic)) << '\n';
  }
  out << "samples   ";
  for (long s : value.samples) out << ' ' << s;
  out << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  GeometryArgs geometry;
  int n_max = 0;
  int l_max = 0;
  double tol = 0.0;
  CLI::Option* tol_option = nullptr;
  std::string format = "table";
};

struct VerifyRow {
  int n = 0;
  int l = 0;
  bool bound = false;
  double exact = kNaN;
  double corrected = kNaN;
  double naive = kNaN;
  double ode = kNaN;
  bool ode_converged = true;
  std::string failure;
};

double deviation(double value, double reference) {
  if (!std::isfinite(value)) return std::numeric_limits<double>::infinity();
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const Geometry g = a.geometry.resolved();
  const auto mu = a.geometry.checked_mu();
  check_ranges(a.n_max, a.l_max);
  const double tol = a.tol_option->count() > 0 ? a.tol : tolerance_from_environment(1e-5);
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
  const double m = mu.value_or(0.0);

  std::vector<std::pair<int, int>> states;
  for (int n = 0; n <= a.n_max; ++n) {
    for (int l = 0; l <= a.l_max; ++l) states.emplace_back(n, l);
  }
  const auto rows = parallel_map<VerifyRow>(states.size(), [&](std::size_t i) {
    const auto [n, l] = states[i];
    const QuantumNumbers qn(n, l);
    VerifyRow row;
    row.n = n;
    row.l = l;
    const SpectrumEntry exact = exact_epsilon(g, m, qn);
    row.exact = exact.epsilon;
    row.bound = exact.bound;
    if (!row.bound) return row;
    row.naive = naive_wkb_epsilon(g, m, qn).epsilon;
    try {
      row.corrected = solve_epsilon(g, m, qn, Scheme::corrected).epsilon;
    } catch (const NoBoundStateError&) {
    }
    try {
      const auto r = oracle::solve(g, m, l, n);
      row.ode = r.no_bound_state ? kNaN : r.epsilon;
      row.ode_converged = r.converged || r.no_bound_state;
      row.failure = r.diagnostics;
    } catch (const ResolutionError& e) {
      row.ode_converged = false;
      row.failure = e.what();
    }
    return row;
  });

  double max_corrected = 0.0;
  double max_ode = 0.0;
  double max_naive = 0.0;
  std::vector<std::string> breaches;
  bool oracle_failed = false;
  nlohmann::json states_json = nlohmann::json::array();
  for (const auto& r : rows) {
    if (!r.bound) continue;
    const double dc = deviation(r.corrected, r.exact);
    const double dode = deviation(r.ode, r.exact);
    const double dn = deviation(r.naive, r.exact);
    max_corrected = std::max(max_corrected, dc);
    max_ode = std::max(max_ode, dode);
    max_naive = std::max(max_naive, dn);
    if (!r.ode_converged) oracle_failed = true;
    if (dc > tol || dode > tol) {
      breaches.push_back("n=" + std::to_string(r.n) + " l=" + std::to_string(r.l));
    }
    nlohmann::json item;
    item["n"] = r.n;
    item["l"] = r.l;
    item["exact"] = r.exact;
    item["wkb_corrected"] = std::isfinite(r.corrected) ? nlohmann::json(r.corrected) : nullptr;
    item["wkb_naive"] = r.naive;
    item["ode"] = std::isfinite(r.ode) ? nlohmann::json(r.ode) : nullptr;
    item["ode_converged"] = r.ode_converged;
    states_json.push_back(std::move(item));
  }
  const bool pass = breaches.empty() && !oracle_failed;

  if (a.format == "json") {
    nlohmann::json doc;
    doc["geometry"] = g.name();
    doc["mu"] = mu ? nlohmann::json(*mu) : nlohmann::json(nullptr);
    doc["tolerance"] = tol;
    doc["states"] = states_json;
    doc["max_deviation"] = {
        {"wkb_corrected", max_corrected}, {"ode", max_ode}, {"wkb_naive", max_naive}};
    doc["pass"] = pass;
    out << report::canonical_json(doc) << '\n';
  } else {
    out << std::left << std::setw(4) << "n" << std::setw(4) << "l" << std::setw(20) << "exact"
        << std::setw(20) << "wkb_corrected" << std::setw(20) << "wkb_naive" << "ode" << '\n';
    for (const auto& r : rows) {
      if (!r.bound) continue;
      out << std::left << std::setw(4) << r.n << std::setw(4) << r.l << std::setw(20)
          << report::format_real(r.exact) << std::setw(20) << report::format_real(r.corrected)
          << std::setw(20) << report::format_real(r.naive) << report::format_real(r.ode)
          << '\n';
    }
    out << "max deviation exact vs wkb_corrected " << report::format_real(max_corrected) << '\n';
    out << "max deviation exact vs ode           " << report::format_real(max_ode) << '\n';
    out << "max deviation exact vs wkb_naive     " << report::format_real(max_naive)
        << " (informational)\n";
    out << (pass ? "PASS" : "FAIL") << " at tolerance " << report::format_real(tol) << '\n';
  }

  if (oracle_failed) {
    for (const auto& r : rows) {
      if (r.bound && !r.ode_converged) {
        err << "oracle did not converge for n=" << r.n << " l=" << r.l << ": " << r.failure
            << '\n';
      }
    }
    return kExitOracle;
  }
  if (!breaches.empty()) {
    err << "tolerance exceeded for";
    for (const auto& b : breaches) err << ' ' << b << ';';
    err << '\n';
    return kExitVerification;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  GeometryArgs geometry;
  double mu_min = 1e2;
  double mu_max = 1e6;
  int points = 9;
  int n = 0;
  int l = 0;
  std::vector<std::string> columns;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const Geometry g = a.geometry.resolved();
  if (!(a.mu_min > 0.0) || !(a.mu_max >= a.mu_min)) {
    throw UsageError("need 0 < --mu-min <= --mu-max");
  }
  if (a.points < 1) throw UsageError("--points must be positive");
  if (a.n < 0 || a.l < 0) throw UsageError("--n and --l must be nonnegative");
  std::vector<std::string> columns = a.columns;
  if (columns.empty()) columns = {"epsilon", "epsilon_over_sqrt_mu", "naive_gap"};

  const QuantumNumbers qn(a.n, a.l);
  struct Point {
    double mu = 0.0;
    SpectrumEntry exact{QuantumNumbers(0, 0)};
    double naive = 0.0;
  };
  const auto points = parallel_map<Point>(static_cast<std::size_t>(a.points), [&](std::size_t k) {
    const double fraction = a.points == 1 ? 0.0 : static_cast<double>(k) / (a.points - 1);
    const double mu = a.mu_min * std::pow(a.mu_max / a.mu_min, fraction);
    return Point{mu, exact_epsilon(g, mu, qn), naive_wkb_epsilon(g, mu, qn).epsilon};
  });

  out << "mu";
  for (const auto& c : columns) out << ',' << c;
  out << ",bound\n";
  for (const auto& p : points) {
    out << report::format_real(p.mu);
    for (const auto& c : columns) {
      double v = p.exact.epsilon;
      if (c == "epsilon_over_sqrt_mu") v = flat_limit_energy(p.exact.epsilon, p.mu);
      if (c == "naive_gap") v = p.naive - p.exact.epsilon;
      out << ',' << report::format_real(v);
    }
    out << ',' << (p.exact.bound ? "true" : "false") << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oscillator spectra in flat, hyperbolic and spherical space", "oscspec"};
  app.require_subcommand(1);

  SpectrumArgs spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Energy table for n <= n-max, l <= l-max");
  spectrum.geometry.attach(spectrum_cmd, {"e3", "h3", "s3"});
  spectrum_cmd->add_option("--n-max", spectrum.n_max)->required();
  spectrum_cmd->add_option("--l-max", spectrum.l_max)->required();
  spectrum_cmd->add_option("--method", spectrum.method)
      ->check(CLI::IsMember({"exact", "wkb-naive", "wkb-corrected", "ode"}));
  spectrum_cmd->add_option("--format", spectrum.format)
      ->check(CLI::IsMember({"table", "csv", "json"}));
  spectrum_cmd->add_option("--dump-wavefunction", spectrum.dump,
                           "write (r,u) samples of each oracle state to this path");

  ContourArgs contour;
  auto* contour_cmd = app.add_subcommand("contour", "Numeric contour integral of one WKB term");
  contour.geometry.attach(contour_cmd, {"e3", "h3", "s3"});
  contour_cmd->add_option("--l", contour.l);
  contour_cmd->add_option("--epsilon", contour.epsilon)->required();
  contour_cmd->add_option("--order", contour.order);
  contour_cmd->add_option("--scheme", contour.scheme)
      ->check(CLI::IsMember({"naive", "corrected"}));
  contour_cmd->add_option("--samples", contour.samples);
  contour_cmd->add_option("--format", contour.format)->check(CLI::IsMember({"table", "json"}));

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Compare exact, WKB and oracle spectra");
  verify.geometry.attach(verify_cmd, {"e3", "h3", "s3"});
  verify_cmd->add_option("--n-max", verify.n_max)->required();
  verify_cmd->add_option("--l-max", verify.l_max)->required();
  verify.tol_option = verify_cmd->add_option("--tol", verify.tol);
  verify_cmd->add_option("--format", verify.format)->check(CLI::IsMember({"table", "json"}));

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Logarithmic mu sweep of one level");
  sweep.geometry.attach(sweep_cmd, {"h3", "s3"}, false);
  sweep_cmd->add_option("--mu-min", sweep.mu_min, "smallest mu")->capture_default_str();
  sweep_cmd->add_option("--mu-max", sweep.mu_max, "largest mu")->capture_default_str();
  sweep_cmd->add_option("--points", sweep.points, "log-spaced samples")->capture_default_str();
  sweep_cmd->add_option("--n", sweep.n, "radial quantum number")->capture_default_str();
  sweep_cmd->add_option("--l", sweep.l, "angular momentum")->capture_default_str();
  sweep_cmd->add_option("--columns", sweep.columns)
      ->delimiter(',')
      ->check(CLI::IsMember({"epsilon", "epsilon_over_sqrt_mu", "naive_gap"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*spectrum_cmd) return cmd_spectrum(spectrum, out, err);
    if (*contour_cmd) return cmd_contour(contour, out);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*sweep_cmd) return cmd_sweep(sweep, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const QuadratureFailure& e) {
    err << "quadrature failed on the circle at (" << e.center().real() << ", "
        << e.center().imag() << ") radius " << e.radius() << " after " << e.samples()
        << " samples; last change " << e.last_change() << '\n';
    return kExitQuadrature;
  } catch (const BranchStepTooLarge& e) {
    err << "branch tracking failed: " << e.what() << '\n';
    return kExitQuadrature;
  } catch (const ResolutionError& e) {
    err << "oracle failure: " << e.what() << '\n';
    return kExitOracle;
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NoClassicalRegionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return *contour_cmd ? kExitQuadrature : kExitOracle;
  }
  return kExitUsage;
}

}  // namespace oscspec::cli
