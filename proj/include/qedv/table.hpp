#pragma once

// Plain-text numeric tables: whitespace or comma separated columns, '#'
// starts a comment, blank lines are skipped.

#include "qedv/atom.hpp"
#include "qedv/density.hpp"

#include <istream>
#include <string>
#include <vector>

namespace qedv {

/// Returns the table column-major. Throws ConfigError on a malformed row or
/// when the row width differs from `columns`.
std::vector<std::vector<double>> read_columns(std::istream& in, std::size_t columns,
                                              const std::string& source = "<stream>");
std::vector<std::vector<double>> read_columns_file(const std::string& path, std::size_t columns);

/// Two-column (p, rho) table.
SpectralDensity load_density_table(const std::string& path, double tail_exponent);

/// A smearing function that depends on |p| only, chi(p) = v(|p|), together
/// with its vacuum density rho(p) = p |v(p)|^2 / (6 pi^2).
struct RadialSmearing {
  SmearingFunction chi;
  SpectralDensity density;
};

/// Builds a RadialSmearing from samples p_k, v(p_k). v is interpolated
/// componentwise (PCHIP), held constant below the first node and continued
/// as v_N (p_N/p)^tail_exponent past the last.
RadialSmearing radial_smearing(std::vector<double> p, std::vector<Vec3> v, double tail_exponent,
                               std::string label = "table");

/// Four-column (p, v_x, v_y, v_z) table.
RadialSmearing load_smearing_table(const std::string& path, double tail_exponent);

}  // namespace qedv
