#include "qedv/table.hpp"

#include "qedv/errors.hpp"

#include "pchip.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

namespace qedv {

std::vector<std::vector<double>> read_columns(std::istream& in, std::size_t columns,
                                              const std::string& source) {
  std::vector<std::vector<double>> out(columns);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ConfigError(source + ":" + std::to_string(line_no) + ": not a number: '" + token + "'");
      }
    }
    if (row.empty()) continue;
    if (row.size() != columns) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(columns) + " columns, got " + std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < columns; ++c) out[c].push_back(row[c]);
  }
  return out;
}

std::vector<std::vector<double>> read_columns_file(const std::string& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table '" + path + "'");
  return read_columns(in, columns, path);
}

SpectralDensity load_density_table(const std::string& path, double tail_exponent) {
  auto cols = read_columns_file(path, 2);
  try {
    return tabulated_density(std::move(cols[0]), std::move(cols[1]), tail_exponent, path);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

RadialSmearing radial_smearing(std::vector<double> p, std::vector<Vec3> v, double tail_exponent,
                               std::string label) {
  if (p.size() != v.size() || p.size() < 4) {
    throw std::invalid_argument("radial_smearing: need at least 4 rows of matching length");
  }
  if (!(tail_exponent > 1.0)) throw std::invalid_argument("radial_smearing: tail exponent must be > 1");
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (!(p[i] > p[i - 1])) throw std::invalid_argument("radial_smearing: p must be strictly increasing");
  }
  if (p.front() < 0.0) throw std::invalid_argument("radial_smearing: p must be >= 0");

  using boost::math::interpolators::pchip;
  using Spline = pchip<std::vector<double>>;
  std::array<std::shared_ptr<const Spline>, 3> splines;
  for (int c = 0; c < 3; ++c) {
    std::vector<double> x = p;
    std::vector<double> y(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) y[i] = v[i][c];
    splines[static_cast<std::size_t>(c)] = std::make_shared<const Spline>(std::move(x), std::move(y));
  }
  const double p_first = p.front();
  const double p_last = p.back();
  const Vec3 v_first = v.front();
  const Vec3 v_last = v.back();

  auto radial = [splines, p_first, p_last, v_first, v_last, tail_exponent](double q) -> Vec3 {
    if (q <= p_first) return v_first;
    if (q >= p_last) return v_last * std::pow(p_last / q, tail_exponent);
    return Vec3((*splines[0])(q), (*splines[1])(q), (*splines[2])(q));
  };

  RadialSmearing out;
  out.chi.eval = [radial](const Vec3& mom) { return radial(mom.norm()); };
  out.chi.label = label;

  double peak = p.front();
  double best = -1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = p[i] * v[i].squaredNorm();
    if (r > best) {
      best = r;
      peak = p[i];
    }
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  out.density.value = [radial, pi2](double q) {
    if (q < 0.0) throw std::invalid_argument("radial smearing density: p must be >= 0");
    return q * radial(q).squaredNorm() / (6.0 * pi2);
  };
  out.density.decay = Decay::algebraic(
      2.0 * tail_exponent - 1.0,
      v_last.squaredNorm() * std::pow(p_last, 2.0 * tail_exponent) / (6.0 * pi2), p_last);
  out.density.peak = peak > 0.0 ? peak : p_last / 10.0;
  out.density.width = out.density.peak;
  out.density.label = label;
  return out;
}

RadialSmearing load_smearing_table(const std::string& path, double tail_exponent) {
  auto cols = read_columns_file(path, 4);
  std::vector<Vec3> v(cols[0].size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Vec3(cols[1][i], cols[2][i], cols[3][i]);
  try {
    return radial_smearing(std::move(cols[0]), std::move(v), tail_exponent, path);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace qedv
