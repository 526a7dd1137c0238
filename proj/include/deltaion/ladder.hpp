#pragma once

// Laplace-domain route. The transform y(p) of the source amplitude Y(t)
// obeys, for eta = r sin(w t),
//
//   y(p) = (ir/2) [ y(p+iw)/D(p+iw) - y(p-iw)/D(p-iw) ] + r w/(w^2 + p^2)
//
// with D(q) = sqrt(1 - iq) - 1 and y -> 0 as Im(p) -> +-inf. Writing
// y_m = y(p + i m w) and w_m = y_m / D_m turns this into the three-term
// ladder
//
//   (ir/2) w_{m-1} + D_m w_m - (ir/2) w_{m+1} = f_m ,
//
// whose homogeneous minimal solutions (decaying as m -> +-inf) are obtained
// by backward recurrence / continued fractions. A nontrivial solution
// decaying both ways exists where the secular function
//
//   S(p) = D_0 + (ir/2) (g_0 - v_0) ,   v_0 = w_1/w_0 (+), g_0 = w_{-1}/w_0 (-)
//
// vanishes; that zero is the resonance pole p* of y, and Gamma = -2 Re p*
// is the exponential decay rate of the survival probability.
//
// Branch rule: sqrt is taken as e^{-i pi/4} sqrt(i z) (principal sqrt),
// which agrees with the principal branch of sqrt(1 - iq) for Re p > 0 and
// continues it analytically across the imaginary p-axis; the cuts emanate
// leftward from the branch points p = -i + i n w. For w > 1 and small
// Re p > 0 this reproduces sqrt(1-ip-w) = -i sqrt(w-1+ip).

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "deltaion/model.hpp"

namespace deltaion {

// Square root with the ladder branch (cut on the positive imaginary axis).
cplx ladder_sqrt(cplx z);

struct LadderProblem {
  cplx base_p{0.0, 0.0};
  double omega = 1.0;
  double r = 0.0;
  int depth = 32;  // truncation index +-N; adaptively doubled, cap 2^14

  static constexpr int kMaxDepth = 1 << 14;

  void validate() const;  // omega > 0, r >= 0, depth >= 8
};

// Row coefficients at rung m: D_m = sqrt(1 - i(p + imw)) - 1 under the
// branch rule, f_m = r w / (w^2 + (p + imw)^2). Throws a singular-row
// error when |1 - i(p+imw)| < 1e-12 (branch-point collision).
struct LadderRow {
  cplx D;
  cplx f;
};
LadderRow ladder_coefficients(const LadderProblem& prob, int m);

// Ratio w_{+-1}/w_0 of the homogeneous solution minimal as m -> +-inf,
// by backward recurrence from rung +-N with seed 0. Doubles N until the
// ratio moves < 1e-13; throws after N = 2^14 with the last two iterates
// in the message.
cplx minimal_ratio(const LadderProblem& prob, int direction);

// Secular function S(p); simple zero at the resonance pole.
cplx secular_function(const LadderProblem& prob);

// Inhomogeneous ladder solution y_m = D_m w_m for m in [-N, N]
// (index i = m + N), by a tridiagonal solve with minimal-solution closure.
std::vector<cplx> ladder_solve(const LadderProblem& prob);

struct PoleResult {
  cplx p_star{0.0, 0.0};
  double gamma = 0.0;        // -2 Re p*
  double stark_shift = 0.0;  // Im p* displacement from the r = 0 limit (0)
  cplx residue_amp{0.0, 0.0};
  int newton_iters = 0;
  double secular_residual = 0.0;
  bool resonance_regime = false;  // |w - 1/n| < 3 r^2 for some n
  bool converged = false;
  std::string message;
};

struct PoleOptions {
  double tol = 1e-10;          // |S(p*)| target
  int max_iters = 50;
  bool compute_residue = true;
  bool multi_seed = true;      // widen the seed set near resonances
};

// Damped Newton on the secular function, derivative by central difference
// with step 1e-7 max(1,|p|). Seeds from asymptotics when p_guess is not
// given. Non-convergence is reported in PoleResult (converged = false,
// iterate trail in message); gamma_vs_omega_scan treats that per point.
PoleResult find_decay_pole(double omega, double r,
                           std::optional<cplx> p_guess = std::nullopt,
                           const PoleOptions& opts = {});

struct ScanPoint {
  double omega = 0.0;
  double r = 0.0;
  PoleResult pole;
};

// Pole continuation over a sorted omega grid; previous p* seeds the next
// Newton, re-seeded from asymptotics at photon-interval boundaries.
// Per-point failures are recorded and the scan continues.
std::vector<ScanPoint> gamma_vs_omega_scan(const std::vector<double>& omegas,
                                           double r, bool continuation = true);

// Winding number of S around a circular contour (argument-principle
// diagnostic used by tests to certify a simple zero).
int secular_winding_number(const LadderProblem& prob, cplx center,
                           double radius, int samples = 2048);

}  // namespace deltaion
