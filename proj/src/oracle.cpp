#include "deltaion/oracle.hpp"

#include <cmath>

#include "deltaion/errors.hpp"
#include "deltaion/quadrature.hpp"

namespace deltaion {

OracleResult eval_M_oracle(double s, double tol) {
  if (!(s > 0.0) || !(tol > 0.0)) {
    throw NumericalError("kernel", "eval_M_oracle",
                         "requires s > 0 and tol > 0");
  }

  const auto integrand = [s](double v) {
    return std::sqrt(v) * std::exp(cplx(0.0, -s * v)) / cplx(1.0 + v, 0.0);
  };

  // Half-period panels; the per-panel sequence alternates in phase, so the
  // epsilon algorithm collapses the v^{-1/2} tail.
  const double period = M_PI / s;
  const int max_panels = 240;
  std::vector<cplx> partial;
  partial.reserve(max_panels);
  cplx total = 0.0;
  OracleResult out;

  cplx accel = 0.0;
  double delta = 0.0;
  for (int n = 0; n < max_panels; ++n) {
    const QuadResult panel =
        integrate_gk(integrand, n * period, (n + 1) * period, tol * 0.02);
    total += panel.value;
    partial.push_back(total);
    out.panels_used = n + 1;
    if (n >= 7 && n % 2 == 1) {
      accel = wynn_epsilon(partial, &delta);
      if (delta < 0.5 * tol) {
        out.converged = true;
        break;
      }
    }
  }
  if (!out.converged && !partial.empty()) {
    accel = wynn_epsilon(partial, &delta);
    out.converged = delta < tol;
  }
  out.achieved_error = delta;
  out.value = (cplx(0.0, 1.0) / M_PI) * std::exp(cplx(0.0, -s)) * accel;
  return out;
}

}  // namespace deltaion
