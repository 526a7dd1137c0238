#include "deltaion/model.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "deltaion/errors.hpp"

namespace deltaion {

void DriveSpec::validate() const {
  if (!(omega > 0.0)) throw ConfigError("drive.omega: must be > 0");
  if (harmonics.empty()) throw ConfigError("drive.harmonics: need n >= 1");
  for (const auto& h : harmonics) {
    if (!std::isfinite(h.A) || !std::isfinite(h.B))
      throw ConfigError("drive.harmonics: coefficients must be finite");
  }
}

double eval_eta(const DriveSpec& spec, double t) {
  double eta = 0.0;
  for (std::size_t i = 0; i < spec.harmonics.size(); ++i) {
    const double jwt = (i + 1) * spec.omega * t;
    eta += spec.harmonics[i].A * std::sin(jwt) +
           spec.harmonics[i].B * std::cos(jwt);
  }
  return eta;
}

double bound_continuum_coupling(double k) {
  const double k2 = k * k;
  return k2 / (1.0 + k2) / (2.0 * M_PI);
}

std::string DriveSpec::to_json() const {
  nlohmann::ordered_json j;
  j["omega"] = omega;
  j["harmonics"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < harmonics.size(); ++i) {
    j["harmonics"].push_back({{"j", static_cast<int>(i + 1)},
                              {"A", harmonics[i].A},
                              {"B", harmonics[i].B}});
  }
  return j.dump();
}

DriveSpec DriveSpec::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("drive: invalid JSON: ") + e.what());
  }
  DriveSpec spec;
  if (!j.contains("omega") || !j["omega"].is_number())
    throw ConfigError("drive.omega: missing or not a number");
  spec.omega = j["omega"].get<double>();
  if (!j.contains("harmonics") || !j["harmonics"].is_array())
    throw ConfigError("drive.harmonics: missing or not an array");
  // j-indexed entries; fill a dense 1..n table.
  int n_max = 0;
  for (const auto& h : j["harmonics"]) {
    if (!h.contains("j") || !h["j"].is_number_integer())
      throw ConfigError("drive.harmonics[].j: missing integer index");
    const int idx = h["j"].get<int>();
    if (idx < 1) throw ConfigError("drive.harmonics[].j: must be >= 1");
    n_max = std::max(n_max, idx);
  }
  spec.harmonics.assign(n_max, Harmonic{});
  for (const auto& h : j["harmonics"]) {
    const int idx = h["j"].get<int>();
    Harmonic& slot = spec.harmonics[idx - 1];
    slot.A = h.value("A", 0.0);
    slot.B = h.value("B", 0.0);
  }
  spec.validate();
  return spec;
}

}  // namespace deltaion
