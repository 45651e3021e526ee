#pragma once

#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "oscspec/core.hpp"
#include "oscspec/oracle.hpp"

namespace oscspec::report {

/// Header written by write_csv; the column set is part of the output contract.
inline constexpr const char* kCsvHeader = "geometry,mu,n,l,N,epsilon,method,bound";

struct SpectrumRow {
  Geometry geometry;
  std::optional<double> mu;  ///< absent for e3
  SpectrumEntry entry;
  bool converged = true;
};

/// %.12e; NaN and infinities are spelled nan, inf, -inf.
std::string format_real(double value);

void write_csv(std::ostream& out, const std::vector<SpectrumRow>& rows);
void write_table(std::ostream& out, const std::vector<SpectrumRow>& rows);

nlohmann::json to_json(const std::vector<SpectrumRow>& rows);

/// Sorted keys, floats as %.12e, no insignificant whitespace. Emitting a parsed
/// document again gives the same bytes.
std::string canonical_json(const nlohmann::json& value);

/// Two columns r,u preceded by '#' lines naming geometry, mu, n, l and epsilon.
void write_wavefunction(const std::string& path, Geometry geometry, std::optional<double> mu,
                        int n, int l, double epsilon,
                        const std::vector<oracle::WavePoint>& points);

}  // namespace oscspec::report
