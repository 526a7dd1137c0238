#include "deltaion/kernel.hpp"

#include <cmath>

#include "deltaion/errors.hpp"

namespace deltaion {

namespace {

const cplx kEipi4 = std::polar(1.0, M_PI / 4.0);
const double kSqrtPi = std::sqrt(M_PI);

// erfc(q) with q = e^{i pi/4} sqrt(s) via the erf Maclaurin series,
// erf(q) = (2/sqrt(pi)) sum_n (-1)^n q^{2n+1} / (n! (2n+1)), q^2 = i s.
// Cancellation grows like e^s, so this branch is for small s only.
cplx erfc_ray_series(double s) {
  const cplx q2(0.0, s);
  cplx term = kEipi4 * std::sqrt(s);  // q
  cplx sum = term;
  for (int n = 1; n <= 220; ++n) {
    term *= -q2 / static_cast<double>(n);
    const cplx c = term / static_cast<double>(2 * n + 1);
    sum += c;
    if (std::abs(c) < 1e-18 * std::abs(sum)) break;
  }
  return 1.0 - (2.0 / kSqrtPi) * sum;
}

// erfc(e^{i pi/4} sqrt(s)) = Gamma(1/2, is)/sqrt(pi) via the Legendre
// continued fraction, evaluated with the modified Lentz algorithm:
//   Gamma(a,z) = e^{-z} z^a / (z+1-a - 1(1-a)/(z+3-a - 2(2-a)/(z+5-a - ...)))
cplx erfc_ray_cf(double s, int max_iters) {
  const cplx z(0.0, s);
  const double a = 0.5;
  const double tiny = 1e-300;
  cplx f = z + 1.0 - a;
  if (f == 0.0) f = tiny;
  cplx C = f;
  cplx D = 0.0;
  for (int i = 1; i < max_iters; ++i) {
    const double an = i * (a - i);
    const cplx bn = z + static_cast<double>(2 * i + 1) - a;
    D = bn + an * D;
    if (D == 0.0) D = tiny;
    C = bn + an / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    const cplx delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  // z^{1/2} = e^{i pi/4} sqrt(s) on this ray
  const cplx gamma_upper = std::exp(-z) * (kEipi4 * std::sqrt(s)) / f;
  return gamma_upper / kSqrtPi;
}

}  // namespace

cplx kernel_singular_part(double s) {
  return kEipi4 / std::sqrt(M_PI * s);
}

cplx KernelEvaluator::erfc_ray(double s) const {
  if (s <= crossover_s) return erfc_ray_series(s);
  return erfc_ray_cf(s, 400);
}

cplx KernelEvaluator::eval_M(double s) const {
  if (!(s > 0.0)) {
    throw NumericalError("kernel", "eval_M",
                         "domain error: requires s > 0, got s = " +
                             std::to_string(s));
  }
  const cplx phase = std::exp(cplx(0.0, -s));
  return kEipi4 * phase / std::sqrt(M_PI * s) - cplx(0.0, 1.0) * erfc_ray(s);
}

cplx eval_M(double s) {
  static const KernelEvaluator eval{};
  return eval.eval_M(s);
}

}  // namespace deltaion
