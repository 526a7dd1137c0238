#pragma once

// Closed-form small-r decay laws for the single-harmonic drive: the
// n-photon staircase, the golden-rule cross-check, the shifted-resonance
// r^3 law, and the dynamic Stark shift. Used as oracles for the spectral
// and time-domain routes and for fast figure generation.

#include <string>

namespace deltaion {

enum class Validity { interior, near_resonance, invalid };

struct GammaEstimate {
  double gamma = 0.0;
  int photon_order = 1;  // n = ceil(1/omega) on interval interiors
  Validity validity = Validity::interior;
};

std::string to_string(Validity v);

// Leading-order Gamma per photon interval omega in (1/n, 1/(n-1)):
//
//   n = 1:   sqrt(w-1) r^2 / w
//   n >= 2:  2^{-2n+2} sqrt(n w - 1) / prod_{m=1}^{n-1} (1 - sqrt(1-m w))^2
//            * r^{2n} / (n w)
//
// (the empty product at n = 1 is 1, which makes the general line reduce to
// the first). validity = near_resonance when |w - 1/j| < 3 r^2 for some
// j <= n. Throws on w <= 0.
GammaEstimate gamma_staircase(double omega, double r);

// First-order perturbation theory assembled from the bound-continuum matrix
// element at k = sqrt(w-1), the density of states 2 pi / k, and the drive
// amplitude. Must reproduce the n = 1 staircase line identically (asserted
// at runtime). Throws on omega <= 1 (below one-photon threshold).
double golden_rule_rate(double omega, double r);

// Gamma at the displaced resonance omega - 1 = r^2/sqrt(2):
// (2^{1/4}/8 - 2^{3/4}/16) r^3 ~ 0.043539 r^3.
double resonance_rate(double r);

// Dynamic Stark displacement of the resonance near omega = 1: r^2/sqrt(2).
double stark_shift_estimate(double r);

// Photon order n = min { n : n w > 1 }.
int photon_order(double omega);

}  // namespace deltaion
