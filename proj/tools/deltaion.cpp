// deltaion: ionization dynamics of the driven delta-well model.
//
// Subcommands run the scripted scenarios (survival, sweep, threshold,
// fraction, xval) plus a kernel-table utility. A JSON config is canonical;
// the flags overlay it. Exit codes: 0 success, 2 validation error,
// 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "deltaion/config.hpp"
#include "deltaion/csv.hpp"
#include "deltaion/errors.hpp"
#include "deltaion/experiments.hpp"
#include "deltaion/kernel.hpp"
#include "deltaion/oracle.hpp"

using namespace deltaion;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliOverrides {
  std::string config_path;
  std::string out_dir;
  std::vector<double> omegas;
  std::vector<double> rs;
  double t_max = -1.0;
  int workers = -1;
  bool plots = false;
  bool verify = false;
};

RunConfig assemble_config(ScenarioId id, const CliOverrides& ov) {
  RunConfig cfg;
  if (!ov.config_path.empty()) {
    cfg = parse_config(read_file(ov.config_path));
  } else {
    std::string minimal = "{\"scenario\":{\"id\":\"" + to_string(id) + "\"}}";
    cfg = parse_config(minimal);
  }
  cfg.scenario.id = id;  // subcommand wins over config id
  if (!ov.omegas.empty()) cfg.scenario.omegas = ov.omegas;
  if (!ov.rs.empty()) cfg.scenario.rs = ov.rs;
  if (ov.t_max >= 0.0) cfg.scenario.t_max = ov.t_max;
  if (!ov.out_dir.empty()) cfg.output_root = ov.out_dir;
  if (ov.workers >= 0) cfg.workers = ov.workers;
  if (ov.plots) cfg.plots = true;
  // re-apply defaulting for ranges the overrides may have cleared
  cfg = parse_config(config_to_json(cfg));
  cfg.scenario.id = id;
  cfg.scenario.validate();
  return cfg;
}

int run_with_verify(ScenarioId id, const CliOverrides& ov) {
  const RunConfig cfg = assemble_config(id, ov);
  if (ov.verify) {
    const std::filesystem::path manifest =
        std::filesystem::path(cfg.output_root) / to_string(id) /
        "manifest.json";
    std::string rep;
    const bool same = verify_dataset(manifest.string(), &rep);
    std::cout << rep;
    std::cout << (same ? "verify: identical\n" : "verify: DIFFERS\n");
    return same ? 0 : 3;
  }
  std::string summary;
  const bool ok = run_scenario(cfg, &summary);
  std::cout << summary;
  return ok ? 0 : 3;
}

int run_kernel_table(const std::string& out_path, double s_lo, double s_hi,
                     int n, bool check_oracle, double tol) {
  if (!(s_lo > 0.0) || !(s_hi > s_lo) || n < 2)
    throw ConfigError("kernel-table: need 0 < s_lo < s_hi and n >= 2");
  CsvWriter csv(out_path, check_oracle
                              ? std::vector<std::string>{"s", "re_M", "im_M",
                                                         "re_M_oracle",
                                                         "im_M_oracle",
                                                         "abs_diff"}
                              : std::vector<std::string>{"s", "re_M", "im_M"});
  for (int i = 0; i < n; ++i) {
    const double s =
        s_lo * std::pow(s_hi / s_lo, static_cast<double>(i) / (n - 1));
    const cplx m = eval_M(s);
    if (check_oracle) {
      const OracleResult o = eval_M_oracle(s, tol);
      if (!o.converged)
        throw NumericalError("kernel", "eval_M_oracle",
                             "oracle did not converge at s = " +
                                 format_double(s));
      csv.row_values({s, m.real(), m.imag(), o.value.real(), o.value.imag(),
                      std::abs(m - o.value)});
    } else {
      csv.row_values({s, m.real(), m.imag()});
    }
  }
  std::cout << "kernel-table: wrote " << n << " rows to " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deltaion: driven delta-well ionization dynamics"};
  app.require_subcommand(1);

  CliOverrides ov;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", ov.config_path, "JSON configuration file");
    sub->add_option("--out", ov.out_dir, "output root directory");
    sub->add_option("--omega", ov.omegas, "drive frequency list override");
    sub->add_option("--r", ov.rs, "drive amplitude list override");
    sub->add_option("--tmax", ov.t_max, "time horizon override");
    sub->add_option("--workers", ov.workers, "worker thread count");
    sub->add_flag("--plots", ov.plots, "emit SVG plots");
    sub->add_flag("--verify", ov.verify,
                  "recompute from the stored manifest and diff");
  };

  CLI::App* survival = app.add_subcommand(
      "survival", "survival probability curves (time-domain route)");
  add_common(survival);
  CLI::App* sweep = app.add_subcommand(
      "sweep", "decay-rate sweep over omega (spectral route)");
  add_common(sweep);
  CLI::App* threshold = app.add_subcommand(
      "threshold", "50% ionization threshold amplitudes");
  add_common(threshold);
  CLI::App* fraction = app.add_subcommand(
      "fraction", "ionized fraction vs amplitude at fixed time");
  add_common(fraction);
  CLI::App* xval = app.add_subcommand(
      "xval", "three-route cross validation table");
  add_common(xval);

  CLI::App* ktab = app.add_subcommand(
      "kernel-table", "memory kernel M(s) on a log grid (golden-file format)");
  std::string ktab_out = "kernel_table.csv";
  double s_lo = 1e-4, s_hi = 1e3, ktab_tol = 1e-10;
  int ktab_n = 50;
  bool ktab_check = false;
  ktab->add_option("--out", ktab_out, "output CSV path");
  ktab->add_option("--s-lo", s_lo, "lower end of the log grid");
  ktab->add_option("--s-hi", s_hi, "upper end of the log grid");
  ktab->add_option("-n,--points", ktab_n, "number of points");
  ktab->add_flag("--check-oracle", ktab_check,
                 "also evaluate the quadrature oracle and diff");
  ktab->add_option("--tol", ktab_tol, "oracle tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (survival->parsed())
      return run_with_verify(ScenarioId::survival_curves, ov);
    if (sweep->parsed()) return run_with_verify(ScenarioId::gamma_sweep, ov);
    if (threshold->parsed())
      return run_with_verify(ScenarioId::threshold_50, ov);
    if (fraction->parsed())
      return run_with_verify(ScenarioId::ionization_vs_r, ov);
    if (xval->parsed()) return run_with_verify(ScenarioId::route_xval, ov);
    if (ktab->parsed())
      return run_kernel_table(ktab_out, s_lo, s_hi, ktab_n, ktab_check,
                              ktab_tol);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
