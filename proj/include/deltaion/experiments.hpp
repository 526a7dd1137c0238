#pragma once

// Scripted scenarios: survival curves, decay-rate sweeps, 50%-ionization
// thresholds, ionization vs amplitude, and the three-route cross
// validation. Each run writes its manifest first (so partial runs are
// attributable), then data/*.csv and optional plots/*.svg.

#include <string>
#include <vector>

#include "deltaion/config.hpp"
#include "deltaion/ladder.hpp"

namespace deltaion {

struct DatasetInfo {
  std::string directory;
  std::vector<std::string> files;  // paths relative to directory
  bool complete = true;            // false when some points failed
  std::vector<std::string> issues;
};

DatasetInfo run_survival_curves(const RunConfig& cfg);
DatasetInfo run_gamma_sweep(const RunConfig& cfg);
DatasetInfo run_threshold_50(const RunConfig& cfg);
DatasetInfo run_ionization_vs_r(const RunConfig& cfg);

struct XvalRow {
  double omega = 0.0;
  double r = 0.0;
  double gamma_timedomain = 0.0;  // slope fit; NaN when skipped
  double gamma_spectral = 0.0;
  double gamma_staircase = 0.0;
  double dev_td_spectral = 0.0;   // relative deviations
  double dev_spectral_stair = 0.0;
  bool near_resonance = false;
  bool complete = true;
  bool pass = true;
};

struct XvalReport {
  std::vector<XvalRow> rows;
  bool ok = true;
  DatasetInfo dataset;
};

// Bounds: 10% time-domain vs spectral; max(5%, 5 r^2) spectral vs staircase
// (staircase leg skipped at near-resonance points, where the asymptotic
// formula does not apply).
XvalReport run_route_xval(const RunConfig& cfg);

// Re-run a scenario from its stored manifest and diff the CSVs; returns
// true when every byte matches (the determinism contract).
bool verify_dataset(const std::string& manifest_path, std::string* report);

// Dispatch by cfg.scenario.id; returns overall success.
bool run_scenario(const RunConfig& cfg, std::string* summary);

}  // namespace deltaion
