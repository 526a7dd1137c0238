#include "deltaion/ladder.hpp"

#include <cmath>
#include <sstream>

#include "deltaion/asymptotics.hpp"
#include "deltaion/errors.hpp"

namespace deltaion {

namespace {
const cplx kI(0.0, 1.0);
const cplx kEmip4 = std::polar(1.0, -M_PI / 4.0);
}  // namespace

cplx ladder_sqrt(cplx z) {
  // principal sqrt rotated so the cut sits on the positive imaginary axis;
  // equals the principal branch for Re z > 0 and continues it analytically
  // across the negative real axis from below.
  return kEmip4 * std::sqrt(kI * z);
}

void LadderProblem::validate() const {
  if (!(omega > 0.0))
    throw ConfigError("ladder.omega: must be > 0");
  if (!(r >= 0.0)) throw ConfigError("ladder.r: must be >= 0");
  if (depth < 8) throw ConfigError("ladder.depth: must be >= 8");
}

LadderRow ladder_coefficients(const LadderProblem& prob, int m) {
  const cplx q = prob.base_p + cplx(0.0, m * prob.omega);
  const cplx zeta = 1.0 - kI * q;
  if (std::abs(zeta) < 1e-12) {
    throw NumericalError("spectral-ladder", "ladder_coefficients",
                         "singular row: branch-point collision at rung m=" +
                             std::to_string(m));
  }
  LadderRow row;
  row.D = ladder_sqrt(zeta) - 1.0;
  row.f = prob.r * prob.omega / (prob.omega * prob.omega + q * q);
  return row;
}

namespace {

// One backward-recurrence pass at truncation depth N.
// direction +1: v = w_1/w_0 of the solution minimal as m -> +inf, via
//   v_{m-1} = (ir/2) / ((ir/2) v_m - D_m), seeded v_N = 0.
// direction -1: g = w_{-1}/w_0 minimal as m -> -inf, via
//   g_{m+1} = (ir/2) / (D_m + (ir/2) g_m), seeded g_{-N} = 0.
cplx ratio_pass(const LadderProblem& prob, int direction, int N) {
  const cplx irh = 0.5 * kI * prob.r;
  cplx ratio = 0.0;
  if (direction > 0) {
    for (int m = N; m >= 1; --m) {
      const cplx D = ladder_coefficients(prob, m).D;
      ratio = irh / (irh * ratio - D);
    }
  } else {
    for (int m = -N; m <= -1; ++m) {
      const cplx D = ladder_coefficients(prob, m).D;
      ratio = irh / (D + irh * ratio);
    }
  }
  return ratio;
}

}  // namespace

cplx minimal_ratio(const LadderProblem& prob, int direction) {
  prob.validate();
  if (prob.r == 0.0) return 0.0;  // rungs decouple
  int N = std::max(prob.depth, 8);
  cplx prev = ratio_pass(prob, direction, N);
  while (2 * N <= LadderProblem::kMaxDepth) {
    N *= 2;
    const cplx cur = ratio_pass(prob, direction, N);
    if (std::abs(cur - prev) < 1e-13) return cur;
    prev = cur;
  }
  std::ostringstream msg;
  msg << "minimal ratio did not settle by N=" << LadderProblem::kMaxDepth
      << "; last iterates " << prev << " (direction " << direction << ")";
  throw NumericalError("spectral-ladder", "minimal_ratio", msg.str());
}

cplx secular_function(const LadderProblem& prob) {
  const cplx D0 = ladder_coefficients(prob, 0).D;
  if (prob.r == 0.0) return D0;
  const cplx v = minimal_ratio(prob, +1);
  const cplx g = minimal_ratio(prob, -1);
  return D0 + 0.5 * kI * prob.r * (g - v);
}

std::vector<cplx> ladder_solve(const LadderProblem& prob) {
  prob.validate();
  const int N = prob.depth;
  const int size = 2 * N + 1;
  const cplx irh = 0.5 * kI * prob.r;

  // tridiagonal rows: irh * w_{m-1} + D_m w_m - irh * w_{m+1} = f_m,
  // truncated with w_{+-(N+1)} = 0 (source decays like 1/(m w)^2).
  std::vector<cplx> D(size), f(size);
  for (int m = -N; m <= N; ++m) {
    const LadderRow row = ladder_coefficients(prob, m);
    D[m + N] = row.D;
    f[m + N] = row.f;
  }
  // Thomas algorithm
  std::vector<cplx> cp(size), dp(size);
  cp[0] = -irh / D[0];
  dp[0] = f[0] / D[0];
  for (int i = 1; i < size; ++i) {
    const cplx denom = D[i] + irh * cp[i - 1];  // sub-diagonal is +irh
    cp[i] = -irh / denom;
    dp[i] = (f[i] - irh * dp[i - 1]) / denom;
  }
  std::vector<cplx> w(size);
  w[size - 1] = dp[size - 1];
  for (int i = size - 2; i >= 0; --i) w[i] = dp[i] - cp[i] * w[i + 1];

  // back to y_m = D_m w_m
  for (int i = 0; i < size; ++i) w[i] *= D[i];
  return w;
}

namespace {

cplx secular_derivative(const LadderProblem& prob, cplx p) {
  LadderProblem q = prob;
  const double step = 1e-7 * std::max(1.0, std::abs(p));
  q.base_p = p + step;
  const cplx sp = secular_function(q);
  q.base_p = p - step;
  const cplx sm = secular_function(q);
  return (sp - sm) / (2.0 * step);
}

struct NewtonOutcome {
  cplx p;
  double residual;
  int iters;
  bool ok;
  std::string trail;
};

NewtonOutcome newton_on_secular(const LadderProblem& prob0, cplx p0,
                                double tol, int max_iters) {
  LadderProblem prob = prob0;
  NewtonOutcome out{p0, 0.0, 0, false, {}};
  std::ostringstream trail;
  cplx p = p0;
  prob.base_p = p;
  cplx s = secular_function(prob);
  for (int it = 1; it <= max_iters; ++it) {
    out.iters = it;
    const cplx ds = secular_derivative(prob, p);
    if (ds == 0.0) break;
    const cplx step = s / ds;
    // damping: halve on residual increase
    double lambda = 1.0;
    cplx p_next = p;
    cplx s_next = s;
    bool improved = false;
    for (int k = 0; k < 40; ++k) {
      const cplx cand = p - lambda * step;
      prob.base_p = cand;
      cplx s_cand;
      try {
        s_cand = secular_function(prob);
      } catch (const NumericalError&) {
        lambda *= 0.5;  // stepped onto a branch point; shrink
        continue;
      }
      if (std::abs(s_cand) < std::abs(s)) {
        p_next = cand;
        s_next = s_cand;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    trail << "it" << it << " p=" << p << " |S|=" << std::abs(s) << "; ";
    if (!improved) break;
    p = p_next;
    s = s_next;
    if (std::abs(s) < tol) {
      out.p = p;
      out.residual = std::abs(s);
      out.ok = true;
      return out;
    }
  }
  out.p = p;
  out.residual = std::abs(s);
  out.ok = std::abs(s) < tol;
  out.trail = trail.str();
  return out;
}

bool near_any_resonance(double omega, double r) {
  const double margin = 3.0 * r * r;
  for (int n = 1; n <= 64; ++n) {
    if (std::abs(omega - 1.0 / n) < margin) return true;
    if (1.0 / n < omega - margin) break;
  }
  return false;
}

}  // namespace

PoleResult find_decay_pole(double omega, double r, std::optional<cplx> p_guess,
                           const PoleOptions& opts) {
  PoleResult result;
  result.resonance_regime = near_any_resonance(omega, r);

  LadderProblem prob;
  prob.omega = omega;
  prob.r = r;
  prob.depth = 32;

  if (r == 0.0) {  // unperturbed bound state: S = D_0, zero at p = 0
    result.p_star = 0.0;
    result.gamma = 0.0;
    result.converged = true;
    result.residue_amp = 0.0;
    return result;
  }

  const GammaEstimate stair = gamma_staircase(omega, r);
  std::vector<cplx> seeds;
  if (p_guess) {
    seeds.push_back(*p_guess);
  } else {
    // r = 0 pole at p = 0, displaced by the asymptotic prediction
    seeds.push_back(cplx(-0.5 * stair.gamma, 0.0));
  }
  if (opts.multi_seed) {
    // near resonances the basin is small; try heights between the level and
    // its adjacent branch point, and the Stark-shifted estimate
    const double shift = stark_shift_estimate(r);
    seeds.push_back(cplx(-0.5 * stair.gamma, shift));
    if (result.resonance_regime) {
      const double a = omega - 1.0;  // one-photon branch point height
      for (double frac : {0.97, 0.8, 0.5}) {
        if (a > 0.0) seeds.push_back(cplx(-0.25 * r * r * r * r, frac * a));
        seeds.push_back(cplx(-0.5 * stair.gamma, frac * shift));
      }
    }
  }

  NewtonOutcome best{cplx(0.0, 0.0), 1e300, 0, false, {}};
  for (const cplx& seed : seeds) {
    NewtonOutcome out;
    try {
      out = newton_on_secular(prob, seed, opts.tol, opts.max_iters);
    } catch (const NumericalError&) {
      continue;
    }
    if (out.ok && out.p.real() > 1e-10) continue;  // growth side: reject
    const bool better = (out.ok && !best.ok) ||
                        (out.ok == best.ok && out.residual < best.residual);
    if (better) best = out;
    if (best.ok && !result.resonance_regime) break;
  }

  result.p_star = best.p;
  result.gamma = -2.0 * best.p.real();
  result.stark_shift = best.p.imag();
  result.newton_iters = best.iters;
  result.secular_residual = best.residual;
  result.converged = best.ok;
  if (!best.ok) {
    result.message = "Newton did not reach tol; trail: " + best.trail;
    return result;
  }

  if (opts.compute_residue) {
    // residue of y_0 at p*: linear fit of 1/y_0(p) on 4 probe points
    // around p*; slope sigma gives residue = 1/sigma.
    const double delta =
        std::max(1e-9, 1e-3 * std::max(result.gamma, std::abs(best.p) * 1e-2));
    LadderProblem pr = prob;
    pr.depth = 64;
    cplx num = 0.0, den = 0.0;
    const cplx dirs[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    for (const cplx& d : dirs) {
      pr.base_p = best.p + delta * d;
      const std::vector<cplx> y = ladder_solve(pr);
      const cplx y0 = y[pr.depth];
      if (y0 == 0.0) continue;
      const cplx inv = 1.0 / y0;
      num += inv * std::conj(delta * d);  // least squares through origin-ish
      den += std::norm(delta * d);
    }
    if (den != 0.0) {
      const cplx sigma = num / den;
      if (sigma != 0.0) result.residue_amp = 1.0 / sigma;
    }
  }
  return result;
}

std::vector<ScanPoint> gamma_vs_omega_scan(const std::vector<double>& omegas,
                                           double r, bool continuation) {
  std::vector<ScanPoint> points;
  points.reserve(omegas.size());
  std::optional<cplx> seed;
  int prev_interval = -1;
  for (const double omega : omegas) {
    ScanPoint pt;
    pt.omega = omega;
    pt.r = r;
    const int interval = photon_order(omega);
    if (interval != prev_interval) seed.reset();  // re-seed across 1/n
    prev_interval = interval;
    try {
      pt.pole = find_decay_pole(omega, r, continuation ? seed : std::nullopt);
    } catch (const NumericalError& e) {
      pt.pole.converged = false;
      pt.pole.message = e.what();
    }
    if (pt.pole.converged && continuation) {
      seed = pt.pole.p_star;
    } else if (!pt.pole.converged) {
      seed.reset();
    }
    points.push_back(pt);
  }
  return points;
}

int secular_winding_number(const LadderProblem& prob, cplx center,
                           double radius, int samples) {
  LadderProblem p = prob;
  double total = 0.0;
  double prev = 0.0;
  bool have_prev = false;
  for (int i = 0; i <= samples; ++i) {
    const double th = 2.0 * M_PI * i / samples;
    p.base_p = center + std::polar(radius, th);
    const cplx s = secular_function(p);
    const double arg = std::arg(s);
    if (have_prev) {
      double d = arg - prev;
      while (d > M_PI) d -= 2.0 * M_PI;
      while (d < -M_PI) d += 2.0 * M_PI;
      total += d;
    }
    prev = arg;
    have_prev = true;
  }
  return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

}  // namespace deltaion
