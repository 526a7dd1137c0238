#pragma once

// Quadrature oracle for the memory kernel. Independent of the closed-form
// path in kernel.cpp: evaluates the defining integral directly,
//
//   M(s) = (i/pi) e^{-is} int_0^inf sqrt(v) e^{-isv}/(1+v) dv   (u^2 = v),
//
// by summing adaptive Gauss-Kronrod panels between consecutive half-period
// points v_n = n pi / s and accelerating the alternating panel series with
// Wynn's epsilon algorithm. Slow; meant for validation and golden files.

#include <complex>

#include "deltaion/model.hpp"

namespace deltaion {

struct OracleResult {
  cplx value{0.0, 0.0};
  double achieved_error = 0.0;  // estimate; <= requested tol when converged
  int panels_used = 0;
  bool converged = false;
};

// Throws NumericalError on s <= 0 or tol <= 0; reports (not throws)
// non-convergence through OracleResult.
OracleResult eval_M_oracle(double s, double tol);

}  // namespace deltaion
