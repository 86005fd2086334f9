#include "qedv/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qedv {

DecayFit fit_decay(const AmplitudeSeries& series, double t1, double t2) {
  const TimeGrid& grid = series.grid;
  if (series.values.size() != grid.size()) throw std::invalid_argument("fit_decay: malformed series");
  if (!(t1 < t2) || t1 < 0.0 || t2 > grid.t_max() * (1.0 + 1e-12)) {
    throw std::invalid_argument("fit_decay: window must satisfy 0 <= t1 < t2 <= t_max");
  }

  std::vector<double> ts;
  std::vector<double> ys;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.t(k);
    if (t < t1 || t > t2) continue;
    const double a2 = std::norm(series.values[k]);
    if (!(a2 > 0.0)) throw std::invalid_argument("fit_decay: |c| vanishes inside the window");
    ts.push_back(t);
    ys.push_back(std::log(a2));
  }
  if (ts.size() < 10) throw std::invalid_argument("fit_decay: fewer than 10 points in the window");

  const double n = static_cast<double>(ts.size());
  double mt = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    my += ys[i];
  }
  mt /= n;
  my /= n;
  double stt = 0.0;
  double sty = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double dt = ts[i] - mt;
    const double dy = ys[i] - my;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  const double slope = sty / stt;

  DecayFit fit;
  fit.gamma_fit = -slope;
  fit.intercept = my - slope * mt;
  fit.r_squared = syy > 0.0 ? std::clamp(sty * sty / (stt * syy), 0.0, 1.0) : 1.0;
  fit.t1 = t1;
  fit.t2 = t2;
  fit.points = ts.size();
  fit.reliable = fit.r_squared >= DecayFit::kReliableRSquared;
  return fit;
}

DecayFit fit_decay(const AmplitudeSeries& series) {
  const double t_max = series.grid.t_max();
  return fit_decay(series, 0.2 * t_max, 0.9 * t_max);
}

}  // namespace qedv
