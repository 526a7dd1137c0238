#pragma once

// One-dimensional delta-well model under a periodic parametric drive.
//
// Unperturbed Hamiltonian H0 = -d^2/dy^2 - 2 delta(y) in units with
// p0 = omega0 = hbar = 2m = g/2 = 1. H0 has a single bound state
// u_b(y) = exp(-|y|) with energy -1 and a continuum u(k,y) with energy k^2.
// The drive multiplies the well strength by (1 + eta(t)) with eta a
// trigonometric polynomial in omega*t.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace deltaion {

using cplx = std::complex<double>;

// Dimensionless unit convention shared by every module. All interfaces
// exchange quantities in these units; nothing carries alternative units.
namespace units {
inline constexpr double p0 = 1.0;      // binding momentum
inline constexpr double omega0 = 1.0;  // binding frequency, |E_b| = hbar*omega0
inline constexpr double hbar = 1.0;
inline constexpr double two_m = 1.0;   // 2m
inline constexpr double g = 2.0;       // well strength, g/2 = 1
}  // namespace units

struct BoundState {
  static constexpr double binding_momentum = units::p0;
  static constexpr double energy = -1.0;

  // u_b(y) = sqrt(p0) e^{-p0 |y|}; with p0 = 1 the prefactor is 1.
  static double eval(double y) { return std::exp(-std::abs(y)); }
};

struct ContinuumState {
  double k = 0.0;  // signed real momentum, energy k^2

  double energy() const { return k * k; }

  // u(k,y) = (2 pi)^{-1/2} ( e^{iky} - (1 + i|k|)^{-1} e^{i|ky|} )
  cplx eval(double y) const {
    const double ak = std::abs(k);
    const cplx plane = std::exp(cplx(0.0, k * y));
    const cplx scat = std::exp(cplx(0.0, ak * std::abs(y))) / cplx(1.0, ak);
    return (plane - scat) / std::sqrt(2.0 * M_PI);
  }
};

// Periodic drive eta(t) = sum_j [ A_j sin(j w t) + B_j cos(j w t) ].
// Stored in coefficient form; the spectral route needs exact harmonic
// content, so drives are never represented as sampled arrays.
struct DriveSpec {
  struct Harmonic {
    double A = 0.0;
    double B = 0.0;
  };

  double omega = 1.0;
  std::vector<Harmonic> harmonics;  // index i holds j = i+1

  DriveSpec() = default;
  DriveSpec(double omega_, std::vector<Harmonic> h)
      : omega(omega_), harmonics(std::move(h)) {}

  // Single-harmonic sine drive eta = r sin(w t), the case the spectral
  // ladder handles.
  static DriveSpec single_harmonic(double omega_, double r) {
    return DriveSpec(omega_, {Harmonic{r, 0.0}});
  }

  std::size_t order() const { return harmonics.size(); }
  double period() const { return 2.0 * M_PI / omega; }

  bool is_single_harmonic() const {
    return harmonics.size() == 1 && harmonics[0].B == 0.0;
  }
  // r = A_1, defined for single-harmonic drives.
  double amplitude() const { return harmonics.empty() ? 0.0 : harmonics[0].A; }

  bool is_zero() const {
    for (const auto& h : harmonics)
      if (h.A != 0.0 || h.B != 0.0) return false;
    return true;
  }

  // Throws ConfigError unless n >= 1 and omega > 0 and all coefficients finite.
  void validate() const;

  std::string to_json() const;
  static DriveSpec from_json(const std::string& text);
};

// eta(t); total function of finite t.
double eval_eta(const DriveSpec& spec, double t);

// |<u_b | delta(y) | u(k,.)>|^2 = (1/2pi) k^2/(1+k^2). Even in k, monotone
// in |k|, bounded by 1/(2pi); vanishes at k = 0 (threshold suppression).
double bound_continuum_coupling(double k);

}  // namespace deltaion
