#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <ppsmeter.h>

#include "scanlib/config.hpp"
#include "scanlib/format.hpp"
#include "scanlib/runner.hpp"
#include "scanlib/table.hpp"

namespace {

struct common_options {
  std::string config_path;
  std::string out;
  std::string format;
  std::string plot_script;
  std::optional<double> g;
  std::optional<double> delta;
  std::optional<long> theta_steps;
  std::optional<long> phi_steps;
};

void add_common(CLI::App* sub, common_options& opts) {
  sub->add_option("--config", opts.config_path,
                  "JSON run configuration (generic/qubit models require it)");
  sub->add_option("--out", opts.out, "output path (default: stdout)");
  sub->add_option("--format", opts.format, "csv | json (default: csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--emit-plot-script", opts.plot_script,
                  "write a gnuplot script referencing the CSV (--out required)");
  sub->add_option("--g", opts.g, "coupling strength override");
  sub->add_option("--delta", opts.delta, "pointer width override");
  sub->add_option("--theta-steps", opts.theta_steps,
                  "polar nodes on [0, pi] (inclusive)");
  sub->add_option("--phi-steps", opts.phi_steps,
                  "azimuthal nodes on [0, 2*pi) (periodic)");
}

scanlib::run_config load_config(const common_options& opts) {
  scanlib::run_config cfg = opts.config_path.empty()
                                ? scanlib::run_config{}
                                : scanlib::parse_config_file(opts.config_path);
  if (opts.g) cfg.g = *opts.g;
  if (opts.delta) {
    if (!(*opts.delta > 0.0))
      throw scanlib::config_error("config error at --delta: must be > 0");
    cfg.delta = *opts.delta;
  }
  if (opts.theta_steps) {
    if (*opts.theta_steps < 2)
      throw scanlib::config_error("config error at --theta-steps: must be >= 2");
    cfg.theta_steps = *opts.theta_steps;
  }
  if (opts.phi_steps) {
    if (*opts.phi_steps < 1)
      throw scanlib::config_error("config error at --phi-steps: must be >= 1");
    cfg.phi_steps = *opts.phi_steps;
  }
  if (!opts.out.empty()) cfg.out = opts.out;
  if (!opts.format.empty()) cfg.format = opts.format;
  return cfg;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const scanlib::scan_table& table, const scanlib::run_config& cfg,
          const std::string& plot_script, size_t axis_count) {
  const bool csv = cfg.format != "json";
  if (cfg.out.empty()) {
    if (csv)
      table.write_csv(std::cout);
    else
      table.write_json(std::cout, utc_timestamp());
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file)
      throw std::runtime_error("cannot open output file: " + cfg.out);
    if (csv)
      table.write_csv(file);
    else
      table.write_json(file, utc_timestamp());
  }
  if (!plot_script.empty()) {
    if (!csv || cfg.out.empty())
      throw scanlib::config_error(
          "config error at --emit-plot-script: requires --format csv and --out");
    std::ofstream file(plot_script, std::ios::binary);
    if (!file)
      throw std::runtime_error("cannot open plot script file: " + plot_script);
    scanlib::write_plot_script(file, cfg.out, table, axis_count);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ppsmeter: exact pointer statistics for pre/postselected quantum "
      "measurements (readouts, angle/coupling scans, extremum refinement, "
      "brute-force cross-checks)"};
  app.set_version_flag("--version", ppsm_version());
  app.require_subcommand(0, 1);

  common_options readout_opts, sg_scan_opts, metrics_opts, maxg_opts,
      extrema_opts, oracle_opts, refine_opts;

  CLI::App* readout_cmd = app.add_subcommand(
      "readout", "exact single-point readout (P, dp, dq, sd_p, sd_q)");
  add_common(readout_cmd, readout_opts);
  std::optional<double> readout_theta, readout_phi;
  readout_cmd->add_option("--theta", readout_theta,
                          "preselection polar angle, radians");
  readout_cmd->add_option("--phi", readout_phi,
                          "preselection azimuth, radians");

  CLI::App* sg_scan_cmd = app.add_subcommand(
      "sg-scan", "readout grid over the preselection sphere");
  add_common(sg_scan_cmd, sg_scan_opts);

  CLI::App* metrics_cmd = app.add_subcommand(
      "metrics-scan", "SNR/sensitivity factor grid over the sphere");
  add_common(metrics_cmd, metrics_opts);

  CLI::App* maxg_cmd = app.add_subcommand(
      "sg-max-vs-g", "closed-form maximal shifts across a coupling range");
  add_common(maxg_cmd, maxg_opts);
  std::optional<double> g_from, g_to;
  std::optional<long> g_steps;
  std::string g_spacing;
  maxg_cmd->add_option("--g-from", g_from, "range start (> 0)");
  maxg_cmd->add_option("--g-to", g_to, "range end");
  maxg_cmd->add_option("--g-steps", g_steps, "number of couplings (>= 2)");
  maxg_cmd->add_option("--spacing", g_spacing, "log | linear (default: log)")
      ->check(CLI::IsMember({"log", "linear"}));

  CLI::App* extrema_cmd = app.add_subcommand(
      "qubit-extrema", "closed-form extremal shifts over all pre/postselections");
  add_common(extrema_cmd, extrema_opts);
  std::optional<double> a1, a2;
  extrema_cmd->add_option("--a1", a1, "first eigenvalue (default 1)");
  extrema_cmd->add_option("--a2", a2, "second eigenvalue (default -1)");

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle-check", "randomized analytic vs brute-force comparison");
  add_common(oracle_cmd, oracle_opts);
  long instances = 500;
  unsigned long long seed = 12345;
  double tol = 1e-8;
  oracle_cmd->add_option("--instances", instances, "instance count (default 500)");
  oracle_cmd->add_option("--seed", seed, "RNG seed (default 12345)");
  oracle_cmd->add_option("--tol", tol, "relative tolerance (default 1e-8)");

  CLI::App* refine_cmd = app.add_subcommand(
      "refine", "grid-seeded simplex maximization of a registered objective");
  add_common(refine_cmd, refine_opts);
  std::string objective_name;
  std::vector<double> start_values;
  std::optional<double> refine_a1, refine_a2;
  refine_cmd
      ->add_option("--objective", objective_name,
                   "sg.dp sg.dq sg.p sg.{ip,iz,ep,ez}{1,2} qubit.dp qubit.dq "
                   "qubit.ip1")
      ->required();
  refine_cmd
      ->add_option("--start", start_values,
                   "comma-separated start angles, radians (default: seed grid)")
      ->delimiter(',');
  refine_cmd->add_option("--a1", refine_a1, "qubit objectives: first eigenvalue");
  refine_cmd->add_option("--a2", refine_a2, "qubit objectives: second eigenvalue");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(readout_cmd)) {
      scanlib::run_config cfg = load_config(readout_opts);
      if (readout_theta) cfg.theta = *readout_theta;
      if (readout_phi) cfg.phi = *readout_phi;
      emit(scanlib::readout_row(cfg), cfg, readout_opts.plot_script, 0);
      return 0;
    }
    if (app.got_subcommand(sg_scan_cmd)) {
      const scanlib::run_config cfg = load_config(sg_scan_opts);
      emit(scanlib::sg_scan_readout(cfg), cfg, sg_scan_opts.plot_script, 2);
      return 0;
    }
    if (app.got_subcommand(metrics_cmd)) {
      const scanlib::run_config cfg = load_config(metrics_opts);
      emit(scanlib::sg_scan_metrics(cfg), cfg, metrics_opts.plot_script, 2);
      return 0;
    }
    if (app.got_subcommand(maxg_cmd)) {
      scanlib::run_config cfg = load_config(maxg_opts);
      if (g_from || g_to || g_steps || !g_spacing.empty()) {
        scanlib::g_range_spec range =
            cfg.g_range.value_or(scanlib::g_range_spec{});
        if (g_from) range.from = *g_from;
        if (g_to) range.to = *g_to;
        if (g_steps) range.steps = *g_steps;
        if (!g_spacing.empty()) range.log_spacing = g_spacing == "log";
        if (!(range.from > 0.0))
          throw scanlib::config_error("config error at --g-from: must be > 0");
        if (!(range.to > range.from))
          throw scanlib::config_error("config error at --g-to: must exceed --g-from");
        if (range.steps < 2)
          throw scanlib::config_error("config error at --g-steps: must be >= 2");
        cfg.g_range = range;
      }
      emit(scanlib::sg_max_vs_g(cfg), cfg, maxg_opts.plot_script, 1);
      return 0;
    }
    if (app.got_subcommand(extrema_cmd)) {
      scanlib::run_config cfg = load_config(extrema_opts);
      if (a1) cfg.a1 = *a1;
      if (a2) cfg.a2 = *a2;
      emit(scanlib::qubit_extrema_row(cfg), cfg, extrema_opts.plot_script, 0);
      return 0;
    }
    if (app.got_subcommand(oracle_cmd)) {
      const scanlib::run_config cfg = load_config(oracle_opts);
      const auto summary = scanlib::oracle_check(instances, seed, tol);
      emit(summary.table, cfg, oracle_opts.plot_script, 1);
      std::cerr << "oracle-check: " << summary.instances << " instances, worst "
                << scanlib::format_double(summary.worst_err) << ", "
                << summary.failures << " over tolerance "
                << scanlib::format_double(tol) << "\n";
      if (summary.failures > 0) return 3;
      return 0;
    }
    if (app.got_subcommand(refine_cmd)) {
      scanlib::run_config cfg = load_config(refine_opts);
      if (refine_a1) cfg.a1 = *refine_a1;
      if (refine_a2) cfg.a2 = *refine_a2;
      const auto outcome = scanlib::refine(objective_name, cfg, start_values);
      emit(scanlib::refine_table(outcome, cfg), cfg, refine_opts.plot_script,
           0);
      if (!outcome.converged) {
        std::cerr << "refine: no convergence within the evaluation budget; "
                     "best value "
                  << scanlib::format_double(outcome.value) << "\n";
        return 4;
      }
      return 0;
    }
    std::cout << app.help();
    return 2;
  } catch (const scanlib::config_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
