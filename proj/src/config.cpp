#include "deltaion/config.hpp"

#include <cstdlib>
#include <thread>

#include <nlohmann/json.hpp>

#include "deltaion/errors.hpp"

namespace deltaion {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::survival_curves: return "survival_curves";
    case ScenarioId::gamma_sweep: return "gamma_sweep";
    case ScenarioId::threshold_50: return "threshold_50";
    case ScenarioId::ionization_vs_r: return "ionization_vs_r";
    case ScenarioId::route_xval: return "route_xval";
  }
  return "route_xval";
}

ScenarioId scenario_from_string(const std::string& s) {
  if (s == "survival_curves") return ScenarioId::survival_curves;
  if (s == "gamma_sweep") return ScenarioId::gamma_sweep;
  if (s == "threshold_50") return ScenarioId::threshold_50;
  if (s == "ionization_vs_r") return ScenarioId::ionization_vs_r;
  if (s == "route_xval") return ScenarioId::route_xval;
  throw ConfigError("scenario.id: unknown scenario '" + s + "'");
}

void ScenarioSpec::validate() const {
  if (omegas.empty()) throw ConfigError("scenario.omegas: must be non-empty");
  if (rs.empty()) throw ConfigError("scenario.rs: must be non-empty");
  for (double w : omegas)
    if (!(w > 0.0)) throw ConfigError("scenario.omegas: entries must be > 0");
  for (double r : rs)
    if (!(r >= 0.0)) throw ConfigError("scenario.rs: entries must be >= 0");
  if (oscillations <= 0)
    throw ConfigError("scenario.oscillations: must be > 0");
  if (t_max < 0.0) throw ConfigError("scenario.t_max: must be >= 0");
}

int RunConfig::effective_workers() const {
  if (workers > 0) return workers;
  if (const char* env = std::getenv("DELTAION_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 2;
}

namespace {

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> known) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) { ok = true; break; }
    if (!ok)
      throw ConfigError(path.empty()
                            ? "unknown key '" + it.key() + "'"
                            : path + ": unknown key '" + it.key() + "'");
  }
}

double get_number(const json& j, const char* key, const std::string& path,
                  double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw ConfigError(path + "." + key + ": must be a number");
  return j[key].get<double>();
}

int get_int(const json& j, const char* key, const std::string& path,
            int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer())
    throw ConfigError(path + "." + key + ": must be an integer");
  return j[key].get<int>();
}

std::vector<double> get_list(const json& j, const char* key,
                             const std::string& path) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array())
    throw ConfigError(path + "." + key + ": must be an array of numbers");
  for (const auto& v : j[key]) {
    if (!v.is_number())
      throw ConfigError(path + "." + key + ": must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// per-scenario defaults for ranges the user leaves out
void apply_scenario_defaults(ScenarioSpec& sc) {
  if (sc.omegas.empty()) {
    switch (sc.id) {
      case ScenarioId::survival_curves:
        sc.omegas = {0.8, 1.2, 1.6, 2.0};
        break;
      case ScenarioId::gamma_sweep: {
        for (int i = 0; i <= 160; ++i)
          sc.omegas.push_back(0.34 + i * (2.0 - 0.34) / 160.0);
        break;
      }
      case ScenarioId::threshold_50: {
        for (int i = 0; i <= 40; ++i)
          sc.omegas.push_back(0.3 + i * (2.0 - 0.3) / 40.0);
        break;
      }
      case ScenarioId::ionization_vs_r:
        sc.omegas = {1.5};
        break;
      case ScenarioId::route_xval:
        sc.omegas = {2.0, 1.5, 0.75};
        break;
    }
  }
  if (sc.rs.empty()) {
    switch (sc.id) {
      case ScenarioId::survival_curves:
        sc.rs = {0.1, 0.3, 0.5};
        break;
      case ScenarioId::gamma_sweep:
        sc.rs = {0.01};
        break;
      case ScenarioId::threshold_50:
        sc.rs = {0.0};  // unused: thresholds are solved for r
        break;
      case ScenarioId::ionization_vs_r: {
        for (int i = 0; i <= 12; ++i) sc.rs.push_back(0.05 * i);
        break;
      }
      case ScenarioId::route_xval:
        sc.rs = {0.1, 0.2, 0.1};  // paired with omegas
        break;
    }
  }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j, "", {"scenario", "solver", "spectral", "output",
                         "workers"});

  RunConfig cfg;

  if (j.contains("scenario")) {
    const json& s = j["scenario"];
    if (!s.is_object()) throw ConfigError("scenario: must be an object");
    reject_unknown(s, "scenario",
                   {"id", "omegas", "rs", "t_max", "oscillations",
                    "oscillation_unit", "stark_correction"});
    if (s.contains("id")) {
      if (!s["id"].is_string())
        throw ConfigError("scenario.id: must be a string");
      cfg.scenario.id = scenario_from_string(s["id"].get<std::string>());
    }
    cfg.scenario.omegas = get_list(s, "omegas", "scenario");
    cfg.scenario.rs = get_list(s, "rs", "scenario");
    cfg.scenario.t_max = get_number(s, "t_max", "scenario", 0.0);
    cfg.scenario.oscillations = get_int(s, "oscillations", "scenario", 700);
    if (s.contains("oscillation_unit")) {
      const std::string u = s["oscillation_unit"].get<std::string>();
      if (u == "period")
        cfg.scenario.oscillation_unit = OscillationUnit::period;
      else if (u == "inverse_omega")
        cfg.scenario.oscillation_unit = OscillationUnit::inverse_omega;
      else
        throw ConfigError(
            "scenario.oscillation_unit: must be 'period' or 'inverse_omega'");
    }
    if (s.contains("stark_correction")) {
      const std::string u = s["stark_correction"].get<std::string>();
      if (u == "none")
        cfg.scenario.stark_correction = StarkCorrection::none;
      else if (u == "midpoint_r")
        cfg.scenario.stark_correction = StarkCorrection::midpoint_r;
      else
        throw ConfigError(
            "scenario.stark_correction: must be 'none' or 'midpoint_r'");
    }
  }
  apply_scenario_defaults(cfg.scenario);
  cfg.scenario.validate();

  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (!s.is_object()) throw ConfigError("solver: must be an object");
    reject_unknown(s, "solver",
                   {"h", "t_max", "scheme_order", "norm_check_interval"});
    cfg.solver.h = get_number(s, "h", "solver", cfg.solver.h);
    if (!(cfg.solver.h > 0.0)) throw ConfigError("solver.h: must be > 0");
    cfg.solver.t_max = get_number(s, "t_max", "solver", cfg.solver.t_max);
    cfg.solver.scheme_order =
        get_int(s, "scheme_order", "solver", cfg.solver.scheme_order);
    if (cfg.solver.scheme_order != 1 && cfg.solver.scheme_order != 2)
      throw ConfigError("solver.scheme_order: must be 1 or 2");
    cfg.solver.norm_check_interval = get_int(s, "norm_check_interval",
                                             "solver", 0);
    if (cfg.solver.norm_check_interval < 0)
      throw ConfigError("solver.norm_check_interval: must be >= 0");
  }

  if (j.contains("spectral")) {
    const json& s = j["spectral"];
    if (!s.is_object()) throw ConfigError("spectral: must be an object");
    reject_unknown(s, "spectral", {"depth_cap", "newton_tol", "max_iters"});
    cfg.spectral.depth_cap =
        get_int(s, "depth_cap", "spectral", cfg.spectral.depth_cap);
    if (cfg.spectral.depth_cap < 8 || cfg.spectral.depth_cap > (1 << 14))
      throw ConfigError("spectral.depth_cap: must be in [8, 16384]");
    cfg.spectral.newton_tol =
        get_number(s, "newton_tol", "spectral", cfg.spectral.newton_tol);
    if (!(cfg.spectral.newton_tol > 0.0))
      throw ConfigError("spectral.newton_tol: must be > 0");
    cfg.spectral.max_iters =
        get_int(s, "max_iters", "spectral", cfg.spectral.max_iters);
    if (cfg.spectral.max_iters < 1)
      throw ConfigError("spectral.max_iters: must be >= 1");
  }

  if (j.contains("output")) {
    const json& s = j["output"];
    if (!s.is_object()) throw ConfigError("output: must be an object");
    reject_unknown(s, "output", {"root", "plots"});
    if (s.contains("root")) {
      if (!s["root"].is_string())
        throw ConfigError("output.root: must be a string");
      cfg.output_root = s["root"].get<std::string>();
    }
    if (s.contains("plots")) {
      if (!s["plots"].is_boolean())
        throw ConfigError("output.plots: must be a boolean");
      cfg.plots = s["plots"].get<bool>();
    }
  }

  cfg.workers = get_int(j, "workers", "config", 0);
  if (cfg.workers < 0) throw ConfigError("workers: must be >= 0");

  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["scenario"]["id"] = to_string(cfg.scenario.id);
  j["scenario"]["omegas"] = cfg.scenario.omegas;
  j["scenario"]["rs"] = cfg.scenario.rs;
  j["scenario"]["t_max"] = cfg.scenario.t_max;
  j["scenario"]["oscillations"] = cfg.scenario.oscillations;
  j["scenario"]["oscillation_unit"] =
      cfg.scenario.oscillation_unit == OscillationUnit::period
          ? "period"
          : "inverse_omega";
  j["scenario"]["stark_correction"] =
      cfg.scenario.stark_correction == StarkCorrection::none ? "none"
                                                             : "midpoint_r";
  j["solver"]["h"] = cfg.solver.h;
  j["solver"]["t_max"] = cfg.solver.t_max;
  j["solver"]["scheme_order"] = cfg.solver.scheme_order;
  j["solver"]["norm_check_interval"] = cfg.solver.norm_check_interval;
  j["spectral"]["depth_cap"] = cfg.spectral.depth_cap;
  j["spectral"]["newton_tol"] = cfg.spectral.newton_tol;
  j["spectral"]["max_iters"] = cfg.spectral.max_iters;
  j["output"]["root"] = cfg.output_root;
  j["output"]["plots"] = cfg.plots;
  j["workers"] = cfg.workers;
  return j.dump(2);
}

}  // namespace deltaion
