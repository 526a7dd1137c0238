#include "deltaion/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "deltaion/asymptotics.hpp"
#include "deltaion/convolution.hpp"
#include "deltaion/csv.hpp"
#include "deltaion/errors.hpp"
#include "deltaion/kernel.hpp"
#include "deltaion/quadrature.hpp"

namespace deltaion {

namespace {

const cplx kEipi4 = std::polar(1.0, M_PI / 4.0);
// kernel split 2i + M(s) = a s^{-1/2} + b s^{1/2} + G(s)
const cplx kA = kEipi4 / std::sqrt(M_PI);
const cplx kB = cplx(0.0, 1.0) * kEipi4 / std::sqrt(M_PI);
const cplx kG0(0.0, 1.0);  // G(0) = i (2i from the loop term, -i from M)

cplx smooth_remainder(double s) {
  return cplx(0.0, 2.0) + eval_M(s) - kA / std::sqrt(s) - kB * std::sqrt(s);
}

// Exact moments of s^{-1/2} and s^{1/2} against the linear hat functions on
// [s0, s1]; differences written via d1 = sqrt(s1) - sqrt(s0) = h/(q1+q0)
// to stay stable at large s0/h.
struct PanelMoments {
  double A_half, B_half;    // weight integrands (s-s0) s^{-1/2}, (s1-s) s^{-1/2}
  double A_three, B_three;  // same against s^{1/2}
};

PanelMoments fractional_moments(double s0, double s1) {
  const double q0 = std::sqrt(s0), q1 = std::sqrt(s1);
  const double d1 = (s1 - s0) / (q1 + q0);           // q1 - q0
  const double d3 = d1 * (s1 + q1 * q0 + s0);        // s1^{3/2} - s0^{3/2}
  const double d5 =
      d1 * (s1 * s1 + s1 * q1 * q0 + s1 * s0 + q1 * q0 * s0 + s0 * s0);
  PanelMoments m;
  m.A_half = (2.0 / 3.0) * d3 - 2.0 * s0 * d1;
  m.B_half = 2.0 * s1 * d1 - (2.0 / 3.0) * d3;
  m.A_three = (2.0 / 5.0) * d5 - (2.0 / 3.0) * s0 * d3;
  m.B_three = (2.0 / 3.0) * s1 * d3 - (2.0 / 5.0) * d5;
  return m;
}

struct Weights {
  // coefficient of Y_{j-d} from panel at distance d (left node)
  std::vector<double> wa_re, wa_im;
  // coefficient of Y_{j-d+1} from panel at distance d (right node)
  std::vector<double> wb_re, wb_im;
  // combined interior weight W_d = wa_d + wb_{d+1}, reversed and forward
  std::vector<double> w_re, w_im;
  std::vector<double> wf_re, wf_im;
};

Weights build_weights(int n, double h, int scheme_order) {
  Weights w;
  w.wa_re.assign(n + 2, 0.0);
  w.wa_im.assign(n + 2, 0.0);
  w.wb_re.assign(n + 2, 0.0);
  w.wb_im.assign(n + 2, 0.0);

  std::vector<cplx> G(n + 1);
  G[0] = kG0;
  for (int d = 1; d <= n; ++d) G[d] = smooth_remainder(d * h);

  for (int d = 1; d <= n; ++d) {
    const double s0 = (d - 1) * h, s1 = d * h;
    const PanelMoments m = fractional_moments(s0, s1);
    cplx wa, wb;
    if (scheme_order >= 2) {
      wa = (kA * m.A_half + kB * m.A_three) / h + 0.5 * h * G[d];
      wb = (kA * m.B_half + kB * m.B_three) / h + 0.5 * h * G[d - 1];
    } else {
      // rectangle: piecewise-constant Y at the right node of each panel;
      // full panel mass of the fractional parts, rectangle for G
      const double d1 = (s1 - s0) / (std::sqrt(s1) + std::sqrt(s0));
      const double d3 = d1 * (s1 + std::sqrt(s1 * s0) + s0);
      wa = 0.0;
      wb = kA * 2.0 * d1 + kB * (2.0 / 3.0) * d3 + h * G[d - 1];
    }
    w.wa_re[d] = wa.real();
    w.wa_im[d] = wa.imag();
    w.wb_re[d] = wb.real();
    w.wb_im[d] = wb.imag();
  }
  // combined interior weights, stored both by distance d (forward) and
  // reversed (wrev[(n+1) - d] = W_d) so every history product can run with
  // forward unit strides
  w.w_re.assign(n + 2, 0.0);
  w.w_im.assign(n + 2, 0.0);
  w.wf_re.assign(n + 2, 0.0);
  w.wf_im.assign(n + 2, 0.0);
  for (int d = 1; d <= n - 1; ++d) {
    const double re = w.wa_re[d] + w.wb_re[d + 1];
    const double im = w.wa_im[d] + w.wb_im[d + 1];
    w.w_re[n + 1 - d] = re;
    w.w_im[n + 1 - d] = im;
    w.wf_re[d] = re;
    w.wf_im[d] = im;
  }
  return w;
}

}  // namespace

void SolverConfig::validate(double omega) const {
  if (!(h > 0.0)) throw ConfigError("solver.h: must be > 0");
  if (!(t_max >= h)) throw ConfigError("solver.t_max: must be >= h");
  if (scheme_order != 1 && scheme_order != 2)
    throw ConfigError("solver.scheme_order: must be 1 or 2");
  if (!(h * omega < 0.2))
    throw ConfigError("solver.h: h*omega must be < 0.2 to resolve the drive");
}

std::size_t Trajectory::index_at(double t) const {
  if (times.empty() || t < -1e-12 || t > times.back() + 1e-9 * (h + 1.0))
    throw NumericalError("volterra", "index_at", "time outside trajectory");
  const auto idx = static_cast<std::size_t>(
      std::min<double>(std::floor(t / h + 1e-9),
                       static_cast<double>(times.size() - 1)));
  return idx;
}

Trajectory solve_Y(const DriveSpec& drive, const SolverConfig& cfg) {
  drive.validate();
  cfg.validate(drive.omega);

  const double h = cfg.h;
  const int n = static_cast<int>(std::ceil(cfg.t_max / h - 1e-9));

  Trajectory traj;
  traj.h = h;
  traj.omega = drive.omega;
  traj.times.resize(n + 1);
  traj.Y.resize(n + 1);
  traj.theta.resize(n + 1);
  traj.survival.resize(n + 1);

  const Weights w = build_weights(n, h, cfg.scheme_order);
  const cplx self(w.wb_re[1], w.wb_im[1]);

  // split re/im history for a vectorizable inner product
  std::vector<double> yre(n + 1, 0.0), yim(n + 1, 0.0);

  traj.times[0] = 0.0;
  const double eta0 = eval_eta(drive, 0.0);
  traj.Y[0] = cplx(eta0, 0.0);  // Y(0) = eta(0) (empty integral)
  yre[0] = traj.Y[0].real();
  yim[0] = traj.Y[0].imag();
  traj.theta[0] = cplx(1.0, 0.0);
  traj.survival[0] = 1.0;

  const double* wre = w.w_re.data();
  const double* wim = w.w_im.data();
  const int cap = n + 1;

  // The history sum S_j = sum_{d=1}^{j-1} W_d Y_{j-d} + wa_j Y_0 is split
  // per block of steps: contributions from history older than the block
  // are accumulated once per block (streaming Y and W once), the recent
  // in-block part runs stepwise.
  constexpr int kBlock = 128;
  std::vector<double> p_re(kBlock), p_im(kBlock);

  for (int j0 = 1; j0 <= n; j0 += kBlock) {
    const int nb = std::min(kBlock, n - j0 + 1);
    std::fill(p_re.begin(), p_re.begin() + nb, 0.0);
    std::fill(p_im.begin(), p_im.begin() + nb, 0.0);
    if (j0 > 1) {
      detail::convolve_block(w.wf_re.data(), w.wf_im.data(), yre.data(),
                             yim.data(), j0, 1, j0 - 1, nb, p_re.data(),
                             p_im.data());
    }
    for (int j = j0; j < j0 + nb; ++j) {
      const double t = j * h;
      traj.times[j] = t;

      double sre = p_re[j - j0], sim = p_im[j - j0];
      // recent part within the block, W_d = wrev[cap-d]
      detail::convolve_tail(wre, wim, yre.data(), yim.data(), cap - j, j0,
                            j - 1, sre, sim);
      // Y_0 enters through the first panel's left node only
      sre += w.wa_re[j] * yre[0] - w.wa_im[j] * yim[0];
      sim += w.wa_re[j] * yim[0] + w.wa_im[j] * yre[0];

      const double eta = eval_eta(drive, t);
      // implicit self-weight solved algebraically:
      // Y_j = eta (1 + S + self*Y_j)  =>  Y_j = eta (1 + S)/(1 - eta*self)
      const cplx rhs = eta * (1.0 + cplx(sre, sim));
      const cplx denom = 1.0 - eta * self;
      const cplx yj = rhs / denom;
      if (std::abs(yj) > 1e10) {
        throw NumericalError("volterra", "solve_Y",
                             "instability: |Y| exceeded 1e10 at node " +
                                 std::to_string(j));
      }
      traj.Y[j] = yj;
      yre[j] = yj.real();
      yim[j] = yj.imag();

      // theta(t) = 1 + 2i int_0^t Y: trapezoid is exact for the interpolant
      traj.theta[j] =
          traj.theta[j - 1] + cplx(0.0, 1.0) * h * (traj.Y[j - 1] + yj);
      traj.survival[j] = std::norm(traj.theta[j]);
    }
  }
  return traj;
}

void default_k_grid(const DriveSpec& drive, int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  const int n_ph = photon_order(drive.omega);
  const double above = std::max(n_ph * drive.omega - 1.0, 1.0);
  const double k_max = std::max(4.0, 3.0 * std::sqrt(above));
  gauss_legendre(n, 0.0, k_max, nodes, weights);
}

void build_adaptive_k_grid(const DriveSpec& drive, double t_snapshot,
                           std::vector<double>& nodes,
                           std::vector<double>& weights) {
  const int n_ph = photon_order(drive.omega);
  const double above = std::max(n_ph * drive.omega - 1.0, 1.0);
  const double k_max = std::max(4.0, 3.0 * std::sqrt(above));
  const double e_max = k_max * k_max;
  const double t = std::max(t_snapshot, 1.0);

  // linewidth estimate: decay rate when the drive is single-harmonic,
  // otherwise only the finite-time width pi/(2t)
  double gamma_est = 0.0;
  if (drive.is_single_harmonic() && drive.amplitude() > 0.0) {
    const GammaEstimate est = gamma_staircase(drive.omega, drive.amplitude());
    if (est.validity != Validity::invalid) gamma_est = est.gamma;
  }

  // Work in the energy variable e = k^2, where the lines sit at
  // e_j = j w - 1 with half-width ~max(Gamma/2, pi/2t) and the finite-time
  // tails oscillate with fixed period 2 pi / t.
  std::vector<double> cuts{0.0, e_max};
  for (int j = n_ph; j * drive.omega - 1.0 < e_max; ++j) {
    const double ej = j * drive.omega - 1.0;
    if (ej <= 0.0) continue;
    const double wd = std::max(0.5 * gamma_est, 0.5 * M_PI / t);
    // core: geometric panels resolving the line shape
    const double w_in = wd / 8.0;
    const double core = 8.0 * wd;
    for (double w = w_in; w < core; w *= 1.7) {
      if (ej - w > 0.0) cuts.push_back(ej - w);
      if (ej + w < e_max) cuts.push_back(ej + w);
    }
    // oscillation zone: one equal-phase panel per period 2 pi/t out to
    // where the aliased tail density falls below budget; only the primary
    // line carries enough mass to deserve the full reach, the higher
    // channels are r^2-suppressed per extra photon
    const double period = 2.0 * M_PI / t;
    const double damp = std::exp(-0.5 * gamma_est * t);
    double reach = 3.0;
    if (gamma_est > 0.0) {
      reach = std::sqrt(gamma_est * damp / (2.0 * M_PI * 2e-5));
      reach = std::min(reach, 6.0);
    }
    if (j > n_ph) reach = std::min(reach, 30.0 * period);
    for (double w = core; w < reach; w += period) {
      if (ej - w > 0.0) cuts.push_back(ej - w);
      if (ej + w < e_max) cuts.push_back(ej + w);
    }
    cuts.push_back(ej);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < 1e-13; }),
             cuts.end());

  nodes.clear();
  weights.clear();
  std::vector<double> xs, ws;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double ka = std::sqrt(cuts[i]);
    const double kb = std::sqrt(cuts[i + 1]);
    // split long background stretches; short line panels pass through
    const int sub =
        std::max(1, static_cast<int>(std::ceil((kb - ka) / (k_max / 24.0))));
    for (int s = 0; s < sub; ++s) {
      const double a1 = ka + (kb - ka) * s / sub;
      const double b1 = ka + (kb - ka) * (s + 1) / sub;
      gauss_legendre(12, a1, b1, xs, ws);
      nodes.insert(nodes.end(), xs.begin(), xs.end());
      weights.insert(weights.end(), ws.begin(), ws.end());
    }
  }
}

namespace {

// phi0(z) = (e^z - 1 - z)/z^2, phi1(z) = ((z-1)e^z + 1)/z^2 with series
// fallback near z = 0; panel-exact integration of e^{i Omega s} against the
// linear interpolant of Y.
void phi_pair(cplx z, cplx& phi0, cplx& phi1) {
  if (std::abs(z) < 0.25) {
    cplx p0 = 0.0, p1 = 0.0, zn = 1.0;
    double fact = 1.0;  // n!
    for (int k = 0; k <= 14; ++k) {
      // term for phi0: z^n/(n+2)!, phi1: z^n/(n!(n+2))
      const double np2 = (k + 1.0) * (k + 2.0);
      p0 += zn / (fact * np2);
      p1 += zn / (fact * (k + 2.0));
      zn *= z;
      fact *= (k + 1.0);
    }
    phi0 = p0;
    phi1 = p1;
    return;
  }
  const cplx ez = std::exp(z);
  phi0 = (ez - 1.0 - z) / (z * z);
  phi1 = ((z - 1.0) * ez + 1.0) / (z * z);
}

}  // namespace

namespace {

// int_0^{t_end} Y(s) e^{i(1+k^2)s} ds against the linear interpolant of Y
// on panels of `stride` grid steps (coarser panels are fine away from the
// spectral lines, where only smooth tails are integrated).
cplx theta_time_integral(const Trajectory& traj, double ak,
                         std::size_t n_end, std::size_t stride) {
  const double omega_k = 1.0 + ak * ak;
  const double hs = traj.h * stride;
  const cplx z(0.0, omega_k * hs);
  cplx phi0, phi1;
  phi_pair(z, phi0, phi1);
  const cplx step_phase = std::exp(z);
  cplx phase(1.0, 0.0);  // e^{i omega_k t_m}
  cplx acc(0.0, 0.0);
  std::size_t m = 0;
  for (; m + stride <= n_end; m += stride) {
    acc += phase * (phi0 * traj.Y[m] + phi1 * traj.Y[m + stride]);
    phase *= step_phase;
  }
  cplx total = acc * hs;
  if (m < n_end) {  // remainder panel, shortened
    const double hr = traj.h * (n_end - m);
    const cplx zr(0.0, omega_k * hr);
    cplx p0, p1;
    phi_pair(zr, p0, p1);
    total += std::exp(cplx(0.0, omega_k * m * traj.h)) *
             (p0 * traj.Y[m] + p1 * traj.Y[n_end]) * hr;
  }
  return total;
}

}  // namespace

MomentumSpectrum compute_spectrum(const Trajectory& traj,
                                  const std::vector<double>& k_grid,
                                  const std::vector<double>& k_weights,
                                  double t_snapshot) {
  if (t_snapshot < 0.0 || t_snapshot > traj.t_max() + 1e-9)
    throw NumericalError("volterra", "compute_spectrum",
                         "t_snapshot beyond trajectory range");
  MomentumSpectrum spec;
  spec.k_grid = k_grid;
  spec.gl_weights = k_weights;
  spec.t_snapshot = t_snapshot;
  spec.Theta.assign(k_grid.size(), cplx(0.0, 0.0));

  const std::size_t n_end = traj.index_at(t_snapshot);
  // Coarse panels for nodes far from every spectral line: Y varies on the
  // drive/binding scale, so 4 grid steps stay resolved. Early on the
  // spectrum is broad (no narrow feature), so everything is evaluated at
  // full resolution while that is still cheap.
  std::vector<std::size_t> stride(k_grid.size(), 1);
  const bool allow_coarse = n_end * k_grid.size() > (std::size_t)1 << 28;
  if (allow_coarse && traj.omega > 0.0 && t_snapshot > 0.0) {
    const double line_zone = std::max(0.05, 40.0 / t_snapshot);
    for (std::size_t ik = 0; ik < k_grid.size(); ++ik) {
      const double e = k_grid[ik] * k_grid[ik];
      double dist = 1e300;
      for (int j = 1; j * traj.omega - 1.0 < e + 1.0; ++j) {
        const double ej = j * traj.omega - 1.0;
        if (ej > 0.0) dist = std::min(dist, std::abs(e - ej));
      }
      if (dist > line_zone) stride[ik] = 4;
    }
  }

  for (std::size_t ik = 0; ik < k_grid.size(); ++ik) {
    const double ak = std::abs(k_grid[ik]);
    if (ak == 0.0) continue;  // prefactor 2|k| vanishes
    const cplx acc = theta_time_integral(traj, ak, n_end, stride[ik]);
    const cplx pref = 2.0 * ak / (std::sqrt(2.0 * M_PI) * cplx(1.0, -ak));
    spec.Theta[ik] = pref * acc;
  }
  return spec;
}

MomentumSpectrum compute_spectrum(const Trajectory& traj,
                                  const DriveSpec& drive, double t_snapshot,
                                  int n_nodes) {
  std::vector<double> nodes, weights;
  if (n_nodes > 0) {
    default_k_grid(drive, n_nodes, nodes, weights);
  } else {  // n_nodes <= 0: line-resolving composite grid
    build_adaptive_k_grid(drive, t_snapshot, nodes, weights);
  }
  return compute_spectrum(traj, nodes, weights, t_snapshot);
}

FractionResult ionized_fraction(const MomentumSpectrum& spectrum) {
  FractionResult res;
  double total = 0.0;
  for (std::size_t i = 0; i < spectrum.k_grid.size(); ++i)
    total += spectrum.gl_weights[i] * std::norm(spectrum.Theta[i]);
  total *= 2.0;  // |k| symmetry: full line = twice the half line
  res.value = total;
  if (!spectrum.k_grid.empty()) {
    const std::size_t last = spectrum.k_grid.size() - 1;
    res.tail_contribution =
        2.0 * spectrum.gl_weights[last] * std::norm(spectrum.Theta[last]);
    res.tail_warning =
        total > 0.0 && res.tail_contribution > 1e-6 * total;
  }
  return res;
}

std::vector<cplx> reconstruct_wavefunction(const Trajectory& traj,
                                           const MomentumSpectrum& spectrum,
                                           const std::vector<double>& y_grid,
                                           double t) {
  const std::size_t it = traj.index_at(t);
  const cplx theta = traj.theta[it];
  std::vector<cplx> psi(y_grid.size(), cplx(0.0, 0.0));
  const cplx bound_phase = std::exp(cplx(0.0, t));
  for (std::size_t iy = 0; iy < y_grid.size(); ++iy)
    psi[iy] = theta * BoundState::eval(y_grid[iy]) * bound_phase;
  // continuum part: Theta is even in k, so fold u(k,y)+u(-k,y)
  for (std::size_t ik = 0; ik < spectrum.k_grid.size(); ++ik) {
    const double k = spectrum.k_grid[ik];
    if (k == 0.0) continue;
    const cplx amp = spectrum.gl_weights[ik] * spectrum.Theta[ik] *
                     std::exp(cplx(0.0, -k * k * t));
    const ContinuumState up{k}, dn{-k};
    for (std::size_t iy = 0; iy < y_grid.size(); ++iy)
      psi[iy] += amp * (up.eval(y_grid[iy]) + dn.eval(y_grid[iy]));
  }
  return psi;
}

ConvergenceStudy convergence_order_study(const DriveSpec& drive,
                                         const SolverConfig& cfg,
                                         int refinements) {
  if (refinements < 3)
    throw ConfigError("convergence_order_study: refinements must be >= 3");
  ConvergenceStudy study;
  std::vector<cplx> theta_end;
  SolverConfig c = cfg;
  for (int i = 0; i < refinements; ++i) {
    const Trajectory traj = solve_Y(drive, c);
    theta_end.push_back(traj.theta.back());
    c.h *= 0.5;
  }
  for (std::size_t i = 0; i + 1 < theta_end.size(); ++i)
    study.errors.push_back(std::abs(theta_end[i] - theta_end[i + 1]));

  const bool all_zero = std::all_of(study.errors.begin(), study.errors.end(),
                                    [](double e) { return e == 0.0; });
  if (all_zero) {
    study.exact = true;
    study.order = std::numeric_limits<double>::infinity();
    return study;
  }
  double sum = 0.0;
  int cnt = 0;
  for (std::size_t i = 0; i + 1 < study.errors.size(); ++i) {
    if (study.errors[i + 1] <= 0.0 || study.errors[i] <= study.errors[i + 1]) {
      study.monotone = false;
      continue;
    }
    sum += std::log2(study.errors[i] / study.errors[i + 1]);
    ++cnt;
  }
  if (cnt == 0) {
    study.order = std::numeric_limits<double>::quiet_NaN();
    return study;
  }
  study.order = sum / cnt;
  const double nominal = cfg.scheme_order >= 2 ? 2.0 : 1.0;
  if (study.monotone && study.order < nominal - 0.3) {
    throw NumericalError("volterra", "convergence_order_study",
                         "empirical order " + std::to_string(study.order) +
                             " below nominal " + std::to_string(nominal) +
                             " - 0.3");
  }
  return study;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          int stride) {
  CsvWriter csv(path, {"t", "re_Y", "im_Y", "re_theta", "im_theta",
                       "survival"});
  for (std::size_t j = 0; j < traj.size(); j += stride) {
    csv.row_values({traj.times[j], traj.Y[j].real(), traj.Y[j].imag(),
                    traj.theta[j].real(), traj.theta[j].imag(),
                    traj.survival[j]});
  }
}

void write_spectrum_csv(const MomentumSpectrum& spec, const std::string& path) {
  CsvWriter csv(path, {"k", "re_Theta", "im_Theta", "density"});
  for (std::size_t i = 0; i < spec.k_grid.size(); ++i) {
    csv.row_values({spec.k_grid[i], spec.Theta[i].real(),
                    spec.Theta[i].imag(), std::norm(spec.Theta[i])});
  }
}

}  // namespace deltaion
