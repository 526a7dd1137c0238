#pragma once

// Shared quadrature utilities: adaptive Gauss-Kronrod (7,15) for complex
// integrands, Gauss-Legendre nodes/weights on [a,b], and Wynn's epsilon
// algorithm for accelerating slowly convergent (oscillatory) panel sums.

#include <complex>
#include <functional>
#include <vector>

#include "deltaion/model.hpp"

namespace deltaion {

struct QuadResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = true;
};

// Adaptive GK(7,15) on [a,b] to absolute tolerance tol.
QuadResult integrate_gk(const std::function<cplx(double)>& f, double a,
                        double b, double tol, int max_depth = 30);

// n-point Gauss-Legendre rule on [a,b] (nodes ascending). Nodes via Newton
// iteration on P_n; deterministic.
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Wynn epsilon acceleration of a sequence of partial sums. Returns the
// highest-order even-column estimate and (optionally) the difference
// between the last two such estimates as a convergence indicator.
cplx wynn_epsilon(const std::vector<cplx>& partial_sums,
                  double* last_delta = nullptr);

}  // namespace deltaion
