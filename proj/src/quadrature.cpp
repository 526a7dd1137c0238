#include "deltaion/quadrature.hpp"

#include <cmath>

namespace deltaion {

namespace {

// Gauss-Kronrod (7,15) abscissae/weights on [-1,1].
constexpr double kGkX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kGkWk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGkWg[4] = {0.129484966168870, 0.279705391489277,
                             0.381830050505119, 0.417959183673469};

struct PanelEstimate {
  cplx value;
  double error;
};

PanelEstimate gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx resk = kGkWk[7] * fc;
  cplx resg = kGkWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = hl * kGkX[j];
    const cplx f1 = f(c - x);
    const cplx f2 = f(c + x);
    resk += kGkWk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kGkWg[j / 2] * (f1 + f2);
  }
  return {resk * hl, std::abs(resk - resg) * std::abs(hl)};
}

void adapt(const std::function<cplx(double)>& f, double a, double b,
           double tol, int depth, int max_depth, QuadResult& acc) {
  const PanelEstimate e = gk15(f, a, b);
  if (e.error < tol || depth >= max_depth) {
    acc.value += e.value;
    acc.error_estimate += e.error;
    if (depth >= max_depth && e.error >= tol) acc.converged = false;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth + 1, max_depth, acc);
  adapt(f, m, b, 0.5 * tol, depth + 1, max_depth, acc);
}

}  // namespace

QuadResult integrate_gk(const std::function<cplx(double)>& f, double a,
                        double b, double tol, int max_depth) {
  QuadResult res;
  adapt(f, a, b, tol, 0, max_depth, res);
  return res;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    nodes[i] = xm - xl * x;
    nodes[n - 1 - i] = xm + xl * x;
    const double w = 2.0 * xl / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

cplx wynn_epsilon(const std::vector<cplx>& partial_sums, double* last_delta) {
  const std::size_t n = partial_sums.size();
  if (n == 0) return 0.0;
  if (n == 1) {
    if (last_delta) *last_delta = std::abs(partial_sums[0]);
    return partial_sums[0];
  }
  // eps[k][i]; column k+1 built from k and k-1. Even columns estimate.
  std::vector<cplx> prev2(n, 0.0);          // eps_{-1} = 0
  std::vector<cplx> prev1 = partial_sums;   // eps_0
  cplx best = partial_sums.back();
  cplx best_prev = n >= 2 ? partial_sums[n - 2] : best;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<cplx> cur(n - k);
    for (std::size_t i = 0; i + k < n; ++i) {
      const cplx d = prev1[i + 1] - prev1[i];
      cur[i] = (d == 0.0) ? prev2[i + 1] : prev2[i + 1] + 1.0 / d;
    }
    if (k % 2 == 0 && !cur.empty()) {
      best_prev = best;
      best = cur.back();
    }
    prev2 = std::move(prev1);
    prev1 = std::move(cur);
  }
  if (last_delta) *last_delta = std::abs(best - best_prev);
  return best;
}

}  // namespace deltaion
