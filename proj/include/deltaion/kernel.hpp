#pragma once

// Memory kernel of the bound-amplitude integral equation:
//
//   M(s) = (2i/pi) int_0^inf u^2 e^{-is(1+u^2)}/(1+u^2) du
//        = (1/2) sqrt(i/pi) int_s^inf e^{-iu} u^{-3/2} du ,   s > 0.
//
// Both representations reduce in closed form to the complementary error
// function on the 45-degree ray:
//
//   M(s) = e^{i pi/4} e^{-is} / sqrt(pi s) - i erfc(e^{i pi/4} sqrt(s))
//
// with sqrt(i) = e^{i pi/4} (principal). erfc on that ray is evaluated by a
// Maclaurin series for small s and by the Legendre continued fraction of the
// incomplete gamma function Gamma(1/2, is) for large s; the two agree to
// ~1e-15 across a wide band around the default crossover.

#include <complex>

#include "deltaion/model.hpp"

namespace deltaion {

struct KernelEvaluator {
  double crossover_s = 2.0;       // series below, continued fraction above
  double target_abs_tol = 1e-12;  // absolute accuracy of eval_M

  // M(s) for s > 0; throws NumericalError("kernel","eval_M",...) on s <= 0.
  cplx eval_M(double s) const;

  // erfc(e^{i pi/4} sqrt(s)), exposed for tests of the two-branch agreement.
  cplx erfc_ray(double s) const;
};

// Default evaluator; the Volterra solver goes through this.
cplx eval_M(double s);

// Leading small-s term e^{i pi/4}/sqrt(pi s); M(s) - this -> -i as s -> 0+.
cplx kernel_singular_part(double s);

}  // namespace deltaion
