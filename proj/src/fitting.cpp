#include "deltaion/fitting.hpp"

#include <cmath>

#include "deltaion/errors.hpp"

namespace deltaion {

CycleAverage cycle_average_survival(const Trajectory& traj) {
  CycleAverage avg;
  if (traj.omega <= 0.0 || traj.size() < 2) return avg;
  const double period = 2.0 * M_PI / traj.omega;
  const std::size_t per_cycle =
      static_cast<std::size_t>(std::floor(period / traj.h));
  if (per_cycle < 2) return avg;
  std::size_t start = 0;
  while (start + per_cycle <= traj.size() - 1) {
    double sum = 0.0;
    for (std::size_t j = start; j < start + per_cycle; ++j)
      sum += traj.survival[j];
    avg.mean.push_back(sum / per_cycle);
    avg.t_mid.push_back(traj.times[start] + 0.5 * per_cycle * traj.h);
    start += per_cycle;
  }
  return avg;
}

LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y) {
  LinearFit fit;
  const std::size_t n = std::min(x.size(), y.size());
  fit.points = n;
  if (n < 2) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) return fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  const double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += e * e;
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

namespace {

LinearFit windowed_fit(const Trajectory& traj, double t_lo, double t_hi,
                       bool loglog) {
  const CycleAverage avg = cycle_average_survival(traj);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < avg.t_mid.size(); ++i) {
    const double t = avg.t_mid[i];
    if (t < t_lo || t > t_hi) continue;
    if (avg.mean[i] <= 0.0) continue;
    if (loglog) {
      xs.push_back(std::log10(t));
      ys.push_back(std::log10(avg.mean[i]));
    } else {
      xs.push_back(t);
      ys.push_back(std::log(avg.mean[i]));
    }
  }
  if (xs.size() < 3)
    throw NumericalError("fitting", loglog ? "fit_power_law"
                                           : "fit_exponential_rate",
                         "fewer than 3 cycle-averaged points in window");
  return linear_fit(xs, ys);
}

}  // namespace

LinearFit fit_exponential_rate(const Trajectory& traj, double t_lo,
                               double t_hi) {
  return windowed_fit(traj, t_lo, t_hi, false);
}

LinearFit fit_power_law(const Trajectory& traj, double t_lo, double t_hi) {
  return windowed_fit(traj, t_lo, t_hi, true);
}

}  // namespace deltaion
