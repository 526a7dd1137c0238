#include "deltaion/asymptotics.hpp"

#include <cmath>

#include "deltaion/errors.hpp"
#include "deltaion/model.hpp"

namespace deltaion {

std::string to_string(Validity v) {
  switch (v) {
    case Validity::interior: return "interior";
    case Validity::near_resonance: return "near_resonance";
    case Validity::invalid: return "invalid";
  }
  return "invalid";
}

int photon_order(double omega) {
  if (!(omega > 0.0))
    throw NumericalError("asymptotics", "photon_order", "requires omega > 0");
  int n = static_cast<int>(std::ceil(1.0 / omega));
  if (n * omega <= 1.0) ++n;  // exactly at threshold: the channel is closed
  return std::max(n, 1);
}

GammaEstimate gamma_staircase(double omega, double r) {
  if (!(omega > 0.0))
    throw NumericalError("asymptotics", "gamma_staircase",
                         "domain error: omega must be > 0");
  GammaEstimate est;
  if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(omega)) {
    est.validity = Validity::invalid;
    return est;
  }
  const int n = photon_order(omega);
  est.photon_order = n;

  double denom = 1.0;  // prod_{m=1}^{n-1} (1 - sqrt(1 - m w))^2, empty = 1
  for (int m = 1; m < n; ++m) {
    const double root = std::sqrt(1.0 - m * omega);
    denom *= (1.0 - root) * (1.0 - root);
  }
  const double above = n * omega - 1.0;  // > 0 by construction of n
  est.gamma = std::exp2(-2.0 * n + 2.0) * std::sqrt(above) / denom *
              std::pow(r, 2.0 * n) / (n * omega);

  const double margin = 3.0 * r * r;
  for (int j = 1; j <= n; ++j) {
    if (std::abs(omega - 1.0 / j) < margin) {
      est.validity = Validity::near_resonance;
      break;
    }
  }
  return est;
}

double golden_rule_rate(double omega, double r) {
  if (!(omega > 1.0))
    throw NumericalError("asymptotics", "golden_rule_rate",
                         "below one-photon threshold: requires omega > 1");
  const double k = std::sqrt(omega - 1.0);
  const double density_of_states = 2.0 * M_PI / k;
  const double rate = r * r * bound_continuum_coupling(k) * density_of_states;
  // must agree with the first staircase line identically
  const double reference = std::sqrt(omega - 1.0) * r * r / omega;
  if (std::abs(rate - reference) > 1e-12 * std::max(rate, 1e-300)) {
    throw NumericalError("asymptotics", "golden_rule_rate",
                         "internal inconsistency vs staircase line 1");
  }
  return rate;
}

double resonance_rate(double r) {
  // (2^{1/4}/8 - 2^{3/4}/16) r^3
  static const double coeff =
      std::pow(2.0, 0.25) / 8.0 - std::pow(2.0, 0.75) / 16.0;
  return coeff * r * r * r;
}

double stark_shift_estimate(double r) { return r * r / std::sqrt(2.0); }

}  // namespace deltaion
