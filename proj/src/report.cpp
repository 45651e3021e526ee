#include "oscspec/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "oscspec/errors.hpp"

namespace oscspec::report {

namespace {

void emit(std::string& out, const nlohmann::json& value) {
  using value_t = nlohmann::json::value_t;
  switch (value.type()) {
    case value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        emit(out, item);
      }
      out += '}';
      break;
    }
    case value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ',';
        first = false;
        emit(out, item);
      }
      out += ']';
      break;
    }
    case value_t::number_float: {
      const double x = value.get<double>();
      out += std::isfinite(x) ? format_real(x) : "null";
      break;
    }
    default:
      out += value.dump();
      break;
  }
}

std::string short_real(double value) {
  if (!std::isfinite(value)) return format_real(value);
  std::ostringstream s;
  s << std::setprecision(6) << value;
  return s.str();
}

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12e", value);
  return buffer;
}

void write_csv(std::ostream& out, const std::vector<SpectrumRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    const auto& e = row.entry;
    out << row.geometry.name() << ',' << (row.mu ? format_real(*row.mu) : "") << ','
        << e.quantum_numbers.n() << ',' << e.quantum_numbers.l() << ','
        << format_real(e.quantum_numbers.N().value()) << ',' << format_real(e.epsilon) << ','
        << to_string(e.method) << ',' << (e.bound ? "true" : "false") << '\n';
  }
}

void write_table(std::ostream& out, const std::vector<SpectrumRow>& rows) {
  out << std::left << std::setw(5) << "geom" << std::setw(10) << "mu" << std::setw(4) << "n"
      << std::setw(4) << "l" << std::setw(8) << "N" << std::setw(14) << "epsilon"
      << std::setw(15) << "method" << "status" << '\n';
  for (const auto& row : rows) {
    const auto& e = row.entry;
    std::string status = e.bound ? "bound" : "unbound";
    if (!row.converged) status += " (not converged)";
    out << std::left << std::setw(5) << row.geometry.name() << std::setw(10)
        << (row.mu ? short_real(*row.mu) : "-") << std::setw(4) << e.quantum_numbers.n()
        << std::setw(4) << e.quantum_numbers.l() << std::setw(8)
        << e.quantum_numbers.N().str() << std::setw(14) << short_real(e.epsilon)
        << std::setw(15) << to_string(e.method) << status << '\n';
  }
}

nlohmann::json to_json(const std::vector<SpectrumRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    const auto& e = row.entry;
    nlohmann::json item;
    item["geometry"] = row.geometry.name();
    item["mu"] = row.mu ? nlohmann::json(*row.mu) : nlohmann::json(nullptr);
    item["n"] = e.quantum_numbers.n();
    item["l"] = e.quantum_numbers.l();
    item["N"] = e.quantum_numbers.N().value();
    item["epsilon"] = std::isfinite(e.epsilon) ? nlohmann::json(e.epsilon) : nlohmann::json(nullptr);
    item["method"] = to_string(e.method);
    item["bound"] = e.bound;
    item["converged"] = row.converged;
    out.push_back(std::move(item));
  }
  return out;
}

std::string canonical_json(const nlohmann::json& value) {
  std::string out;
  emit(out, value);
  return out;
}

void write_wavefunction(const std::string& path, Geometry geometry, std::optional<double> mu,
                        int n, int l, double epsilon,
                        const std::vector<oracle::WavePoint>& points) {
  std::ofstream file(path);
  if (!file) throw ConfigurationError("cannot open " + path + " for writing");
  file << "# geometry " << geometry.name() << '\n';
  file << "# mu " << (mu ? format_real(*mu) : "none") << '\n';
  file << "# n " << n << '\n';
  file << "# l " << l << '\n';
  file << "# epsilon " << format_real(epsilon) << '\n';
  file << "r,u\n";
  for (const auto& p : points) file << format_real(p.r) << ',' << format_real(p.u) << '\n';
  if (!file) throw Error("failed writing " + path);
}

}  // namespace oscspec::report
