#pragma once

// Decay-rate extraction from survival histories: cycle averaging (to remove
// the periodic modulation of the pole part), exponential slope fits, and
// late-time power-law fits.

#include <vector>

#include "deltaion/volterra.hpp"

namespace deltaion {

struct CycleAverage {
  std::vector<double> t_mid;  // midpoints of full drive periods
  std::vector<double> mean;   // mean survival over each period
};

// Mean survival over consecutive full periods 2 pi / omega.
CycleAverage cycle_average_survival(const Trajectory& traj);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y);

// ln(cycle-averaged survival) vs t over [t_lo, t_hi]; Gamma = -slope.
LinearFit fit_exponential_rate(const Trajectory& traj, double t_lo,
                               double t_hi);

// log10(cycle-averaged survival) vs log10 t over [t_lo, t_hi]; the
// branch-cut tail has slope -3 (t^{-3/2} in theta).
LinearFit fit_power_law(const Trajectory& traj, double t_lo, double t_hi);

}  // namespace deltaion
