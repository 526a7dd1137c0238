#pragma once

// Run configuration: canonical JSON document, strictly parsed (unknown keys
// rejected with path-qualified messages); CLI flags overlay it afterwards.

#include <optional>
#include <string>
#include <vector>

#include "deltaion/volterra.hpp"

namespace deltaion {

enum class ScenarioId {
  survival_curves,
  gamma_sweep,
  threshold_50,
  ionization_vs_r,
  route_xval,
};

std::string to_string(ScenarioId id);
ScenarioId scenario_from_string(const std::string& s);

enum class OscillationUnit { period, inverse_omega };
enum class StarkCorrection { none, midpoint_r };

struct ScenarioSpec {
  ScenarioId id = ScenarioId::route_xval;
  std::vector<double> omegas;
  std::vector<double> rs;
  double t_max = 0.0;         // 0 = scenario default
  int oscillations = 700;     // threshold clock
  OscillationUnit oscillation_unit = OscillationUnit::period;
  StarkCorrection stark_correction = StarkCorrection::none;
  std::string output_dir;     // set from RunConfig.output_root/scenario name

  void validate() const;  // ranges non-empty (after defaulting), counts > 0
};

struct SpectralConfig {
  int depth_cap = 1 << 14;
  double newton_tol = 1e-10;
  int max_iters = 50;
};

struct RunConfig {
  ScenarioSpec scenario;
  SolverConfig solver;
  SpectralConfig spectral;
  std::string output_root = "out";
  bool plots = false;
  int workers = 0;  // 0 = DELTAION_WORKERS env or hardware default

  int effective_workers() const;
};

// Parse + validate a JSON configuration document. Defaults are applied
// deterministically; schema violations throw ConfigError naming the path
// (e.g. "solver.h: must be > 0").
RunConfig parse_config(const std::string& json_text);

// Canonical JSON for manifests; round-trips through parse_config.
std::string config_to_json(const RunConfig& cfg);

}  // namespace deltaion
