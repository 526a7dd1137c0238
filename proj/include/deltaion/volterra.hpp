#pragma once

// Time-domain route: product-integration solution of the weakly singular
// Volterra equation
//
//   Y(t) = eta(t) { 1 + int_0^t [2i + M(t-t')] Y(t') dt' } ,
//
// followed by theta(t) = 1 + 2i int_0^t Y and the momentum amplitudes
// Theta(k,t).
//
// Scheme: split the kernel as
//
//   2i + M(s) = a s^{-1/2} + b s^{1/2} + G(s),
//   a = e^{i pi/4}/sqrt(pi),  b = i e^{i pi/4}/sqrt(pi),
//
// where G is C^1 at s = 0 (G(0) = i, G'(0) = 0). On each step the two
// fractional-power terms are integrated exactly against the piecewise
// linear interpolant of Y (Abel product integration); G goes through the
// trapezoid rule. The implicit self-weight of Y_j is solved algebraically,
// so eta zero-crossings cost nothing. Empirical global order ~2 for the
// order-2 scheme (>= 1.5 required); the order-1 variant uses piecewise
// constant interpolation instead.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "deltaion/model.hpp"

namespace deltaion {

struct SolverConfig {
  double h = 0.005;        // step, units of 1/omega0
  double t_max = 100.0;
  int scheme_order = 2;    // 1 = rectangle, 2 = product trapezoid
  int norm_check_interval = 0;  // steps between unitarity checkpoints; 0 = off

  // h*omega < 0.2 so the drive is resolved; t_max >= h.
  void validate(double omega) const;
};

struct Trajectory {
  double h = 0.0;
  double omega = 0.0;  // drive frequency used (for cycle averaging)
  std::vector<double> times;
  std::vector<cplx> Y;
  std::vector<cplx> theta;
  std::vector<double> survival;  // |theta|^2

  double t_max() const { return times.empty() ? 0.0 : times.back(); }
  std::size_t size() const { return times.size(); }
  // index of the last node with t_j <= t (throws on t out of range)
  std::size_t index_at(double t) const;
};

struct MomentumSpectrum {
  std::vector<double> k_grid;        // k >= 0; |k| symmetry folded in
  std::vector<double> gl_weights;    // quadrature weights for k-integrals
  std::vector<cplx> Theta;           // Theta(k, t_snapshot)
  double t_snapshot = 0.0;
};

// Y(t_j), theta(t_j), survival on the uniform grid j*h up to t_max.
Trajectory solve_Y(const DriveSpec& drive, const SolverConfig& cfg);

// Default momentum grid: n nodes, Gauss-Legendre on [0, k_max],
// k_max = max(4, 3 sqrt(max(n_ph*w - 1, 1))).
void default_k_grid(const DriveSpec& drive, int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Composite grid with geometric refinement around each open-channel line
// k_j = sqrt(j w - 1). The plain grid cannot hold the unitarity budget once
// the lines narrow to width ~Gamma/2k (or pi/2kt at finite t); this one
// resolves them at roughly the same node count.
void build_adaptive_k_grid(const DriveSpec& drive, double t_snapshot,
                           std::vector<double>& nodes,
                           std::vector<double>& weights);

// Theta(k, t) = 2|k| / (sqrt(2 pi)(1 - i|k|)) int_0^t Y(s) e^{i(1+k^2)s} ds,
// integrated panel-exactly against the linear interpolant of Y (matches the
// solver order uniformly in k). t_snapshot beyond the trajectory throws.
MomentumSpectrum compute_spectrum(const Trajectory& traj,
                                  const std::vector<double>& k_grid,
                                  const std::vector<double>& k_weights,
                                  double t_snapshot);
MomentumSpectrum compute_spectrum(const Trajectory& traj,
                                  const DriveSpec& drive, double t_snapshot,
                                  int n_nodes = 400);

struct FractionResult {
  double value = 0.0;              // int |Theta|^2 dk over the full line
  double tail_contribution = 0.0;  // last-cell share of the total
  bool tail_warning = false;       // tail_contribution > 1e-6 of total
};

FractionResult ionized_fraction(const MomentumSpectrum& spectrum);

// psi(y,t) = theta(t) u_b(y) e^{it} + int Theta(k,t) u(k,y) e^{-ik^2 t} dk
// on the y grid, the k-integral on the spectrum's quadrature grid.
std::vector<cplx> reconstruct_wavefunction(const Trajectory& traj,
                                           const MomentumSpectrum& spectrum,
                                           const std::vector<double>& y_grid,
                                           double t);

struct ConvergenceStudy {
  double order = 0.0;             // empirical p from Richardson ratios
  bool exact = false;             // all refinements identical (e.g. r = 0)
  bool monotone = true;           // errors decreased monotonically
  std::vector<double> errors;     // |theta_h(t_max) - theta_{h/2}(t_max)|
};

// Runs solve_Y at h, h/2, h/4, ...; order from successive error ratios.
ConvergenceStudy convergence_order_study(const DriveSpec& drive,
                                         const SolverConfig& cfg,
                                         int refinements);

// CSV exports (17 significant digits, '\n' newlines, fixed column order).
void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          int stride = 1);
void write_spectrum_csv(const MomentumSpectrum& spec, const std::string& path);

}  // namespace deltaion
