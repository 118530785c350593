#include "scanlib/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <ppsmeter.h>

#include "scanlib/format.hpp"
#include "scanlib/objectives.hpp"
#include "scanlib/simplex.hpp"

namespace scanlib {

namespace {

constexpr double pi = std::numbers::pi;
const double nan_value = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void compute_failed(const std::string& op, ppsm_status status) {
  throw std::runtime_error(op + " failed: " +
                           std::string(ppsm_status_name(status)) + " (" +
                           ppsm_last_error_message() + ")");
}

double need_g(const run_config& cfg, const char* op) {
  if (!cfg.g)
    throw config_error(std::string("config error at $.g: required for ") + op);
  return *cfg.g;
}

void add_common_metadata(scan_table& table, const run_config& cfg,
                         bool with_g) {
  table.add_metadata("tool", "ppsmeter");
  table.add_metadata("version", ppsm_version());
  table.add_metadata("model", model_name(cfg.model));
  table.add_metadata("delta", format_double(cfg.delta));
  if (with_g && cfg.g) table.add_metadata("g", format_double(*cfg.g));
}

} // namespace

void parallel_rows(size_t n, const std::function<void(size_t)>& fn) {
  size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PPSMETER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) threads = static_cast<size_t>(v);
  }
  threads = std::min({threads, size_t{256}, std::max(n, size_t{1})});
  if (threads <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (size_t i = t; i < n; i += threads) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> theta_axis(long steps) {
  std::vector<double> axis(static_cast<size_t>(steps));
  for (long i = 0; i < steps; ++i)
    axis[static_cast<size_t>(i)] =
        pi * static_cast<double>(i) / static_cast<double>(steps - 1);
  return axis;
}

std::vector<double> phi_axis(long steps) {
  std::vector<double> axis(static_cast<size_t>(steps));
  for (long j = 0; j < steps; ++j)
    axis[static_cast<size_t>(j)] =
        2.0 * pi * static_cast<double>(j) / static_cast<double>(steps);
  return axis;
}

namespace {

scan_table sg_scan_impl(const run_config& cfg, bool metrics) {
  const double g = need_g(cfg, metrics ? "metrics-scan" : "sg-scan");
  const auto thetas = theta_axis(cfg.theta_steps);
  const auto phis = phi_axis(cfg.phi_steps);

  std::vector<std::string> columns = {"theta", "phi"};
  if (metrics) {
    for (const char* c : {"ip_1", "iz_1", "ip_2", "iz_2", "ep_1", "ez_1",
                          "ep_2", "ez_2"})
      columns.push_back(c);
  } else {
    for (const char* c : {"probability", "dp", "dq", "sd_p", "sd_q"})
      columns.push_back(c);
  }
  scan_table table(columns);
  add_common_metadata(table, cfg, true);
  table.add_metadata("theta_steps", format_long(cfg.theta_steps));
  table.add_metadata("phi_steps", format_long(cfg.phi_steps));

  const size_t n_phi = phis.size();
  table.resize_rows(thetas.size() * n_phi);
  parallel_rows(table.row_count(), [&](size_t row) {
    const double theta = thetas[row / n_phi];
    const double phi = phis[row % n_phi];
    std::vector<double> values(columns.size(), nan_value);
    values[0] = theta;
    values[1] = phi;
    std::string error;
    if (metrics) {
      double snr[4], ms[4];
      ppsm_status s = ppsm_sg_snr_improvements(theta, phi, cfg.delta, g, snr);
      if (s == PPSM_OK) s = ppsm_sg_ms_enhancements(theta, phi, cfg.delta, g, ms);
      if (s == PPSM_OK) {
        for (int k = 0; k < 4; ++k) values[2 + static_cast<size_t>(k)] = snr[k];
        for (int k = 0; k < 4; ++k) values[6 + static_cast<size_t>(k)] = ms[k];
      } else {
        error = ppsm_status_name(s);
      }
    } else {
      ppsm_readout r;
      const ppsm_status s = ppsm_sg_readout(theta, phi, cfg.delta, g, &r);
      if (s == PPSM_OK) {
        values[2] = r.probability;
        values[3] = r.dp;
        values[4] = r.dq;
        values[5] = r.sd_p;
        values[6] = r.sd_q;
      } else {
        error = ppsm_status_name(s);
      }
    }
    table.set_row(row, values, std::move(error));
  });
  return table;
}

} // namespace

scan_table sg_scan_readout(const run_config& cfg) {
  return sg_scan_impl(cfg, false);
}

scan_table sg_scan_metrics(const run_config& cfg) {
  return sg_scan_impl(cfg, true);
}

scan_table sg_max_vs_g(const run_config& cfg) {
  if (!cfg.g_range)
    throw config_error("config error at $.g_range: required for sg-max-vs-g");
  const g_range_spec range = *cfg.g_range;

  std::vector<double> gs(static_cast<size_t>(range.steps));
  for (long i = 0; i < range.steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(range.steps - 1);
    gs[static_cast<size_t>(i)] =
        range.log_spacing
            ? range.from * std::pow(range.to / range.from, t)
            : range.from + (range.to - range.from) * t;
  }

  scan_table table({"g", "dp_max", "theta_p", "phi_p", "dz_max", "theta_z",
                    "phi_z", "p_max"});
  add_common_metadata(table, cfg, false);
  table.add_metadata("g_from", format_double(range.from));
  table.add_metadata("g_to", format_double(range.to));
  table.add_metadata("g_steps", format_long(range.steps));
  table.add_metadata("g_spacing", range.log_spacing ? "log" : "linear");

  table.resize_rows(gs.size());
  parallel_rows(gs.size(), [&](size_t row) {
    const double g = gs[row];
    std::vector<double> values(table.column_count(), nan_value);
    values[0] = g;
    std::string error;
    ppsm_sg_max mom, pos;
    ppsm_status s = ppsm_sg_momentum_max(cfg.delta, g, &mom);
    if (s == PPSM_OK) s = ppsm_sg_position_max(cfg.delta, g, &pos);
    if (s == PPSM_OK) {
      values[1] = mom.dp_max;
      values[2] = mom.theta_opt;
      values[3] = mom.phi_opt;
      values[4] = pos.dz_max;
      values[5] = pos.theta_opt;
      values[6] = pos.phi_opt;
      values[7] = mom.p_max;
    } else {
      error = ppsm_status_name(s);
    }
    table.set_row(row, values, std::move(error));
  });
  return table;
}

scan_table readout_row(const run_config& cfg) {
  const double g = need_g(cfg, "readout");
  scan_table table({"probability", "dp", "dq", "sd_p", "sd_q"});
  add_common_metadata(table, cfg, true);

  ppsm_readout r;
  ppsm_status s = PPSM_OK;
  switch (cfg.model) {
    case model_kind::generic: {
      std::ostringstream eig;
      for (size_t i = 0; i < cfg.eigenvalues.size(); ++i)
        eig << (i ? " " : "") << format_double(cfg.eigenvalues[i]);
      table.add_metadata("eigenvalues", eig.str());
      std::vector<double> alpha, beta;
      for (const auto& c : cfg.alpha) {
        alpha.push_back(c.real());
        alpha.push_back(c.imag());
      }
      for (const auto& c : cfg.beta) {
        beta.push_back(c.real());
        beta.push_back(c.imag());
      }
      ppsm_system* sys = nullptr;
      s = ppsm_system_create(cfg.eigenvalues.data(), cfg.eigenvalues.size(),
                             alpha.data(), beta.data(), cfg.delta, &sys);
      if (s == PPSM_OK) {
        s = ppsm_readout_exact(sys, g, &r);
        ppsm_system_destroy(sys);
      }
      break;
    }
    case model_kind::qubit:
      table.add_metadata("a1", format_double(cfg.a1));
      table.add_metadata("a2", format_double(cfg.a2));
      table.add_metadata("pre", format_double(cfg.theta1) + " " +
                                    format_double(cfg.phi1));
      table.add_metadata("post", format_double(cfg.theta2) + " " +
                                     format_double(cfg.phi2));
      s = ppsm_qubit_readout(cfg.a1, cfg.a2, cfg.theta1, cfg.phi1, cfg.theta2,
                             cfg.phi2, cfg.delta, g, &r);
      break;
    case model_kind::stern_gerlach:
      table.add_metadata("theta", format_double(cfg.theta));
      table.add_metadata("phi", format_double(cfg.phi));
      s = ppsm_sg_readout(cfg.theta, cfg.phi, cfg.delta, g, &r);
      break;
  }
  if (s != PPSM_OK) compute_failed("readout", s);
  table.add_row({r.probability, r.dp, r.dq, r.sd_p, r.sd_q});
  return table;
}

scan_table qubit_extrema_row(const run_config& cfg) {
  const double g = need_g(cfg, "qubit-extrema");
  ppsm_qubit_extremes e;
  const ppsm_status s = ppsm_qubit_shift_extremes(cfg.a1, cfg.a2, cfg.delta, g, &e);
  if (s != PPSM_OK) compute_failed("qubit-extrema", s);

  scan_table table({"dp_min", "dp_max", "dq_min", "dq_max", "t_opt_min",
                    "t_opt_max", "phi0_for_p", "phi0_for_q_min",
                    "phi0_for_q_max", "big_m", "big_w"});
  table.add_metadata("tool", "ppsmeter");
  table.add_metadata("version", ppsm_version());
  table.add_metadata("model", "qubit");
  table.add_metadata("a1", format_double(cfg.a1));
  table.add_metadata("a2", format_double(cfg.a2));
  table.add_metadata("delta", format_double(cfg.delta));
  table.add_metadata("g", format_double(g));
  table.add_row({e.dp_min, e.dp_max, e.dq_min, e.dq_max, e.t_opt_min,
                 e.t_opt_max, e.phi0_for_p, e.phi0_for_q_min,
                 e.phi0_for_q_max, e.big_m, e.big_w});
  return table;
}

oracle_check_summary oracle_check(long instances, unsigned long long seed,
                                  double tol) {
  if (instances < 1)
    throw config_error("config error at $.instances: must be >= 1");
  if (!(tol > 0.0))
    throw config_error("config error at $.tol: must be > 0");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim_dist(2, 5);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double log_g_lo = std::log(1e-3), log_g_hi = std::log(5.0);

  oracle_check_summary summary{
      instances, 0, 0.0,
      scan_table({"instance", "dim", "g", "err_p", "err_dp", "err_dq",
                  "err_sd_p", "err_sd_q", "max_err"})};
  summary.table.add_metadata("tool", "ppsmeter");
  summary.table.add_metadata("version", ppsm_version());
  summary.table.add_metadata("seed", format_long(static_cast<long>(seed)));
  summary.table.add_metadata("tol", format_double(tol));

  auto rel_err = [](double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::abs(a));
  };

  for (long k = 0; k < instances; ++k) {
    ppsm_readout analytic{}, brute{};
    double g = 0.0;
    int dim = 0;
    for (;;) { // redraw until the postselection is well conditioned
      dim = dim_dist(rng);
      std::vector<double> a(static_cast<size_t>(dim));
      double amax = 0.0;
      do {
        amax = 0.0;
        for (auto& v : a) {
          v = 2.0 * uni(rng) - 1.0;
          amax = std::max(amax, std::abs(v));
        }
      } while (amax < 0.2);
      size_t arg = 0;
      for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i]) > std::abs(a[arg])) arg = i;
      for (auto& v : a) v /= std::abs(a[arg]);
      if (uni(rng) < 0.2) { // duplicate the extreme eigenvalue
        size_t other = (arg + 1) % a.size();
        a[other] = a[arg];
      }
      g = std::exp(log_g_lo + (log_g_hi - log_g_lo) * uni(rng));

      auto random_state = [&] {
        std::vector<double> v(2 * static_cast<size_t>(dim));
        double norm2 = 0.0;
        for (auto& x : v) {
          x = gauss(rng);
          norm2 += x * x;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& x : v) x *= inv;
        return v;
      };
      const auto alpha = random_state();
      const auto beta = random_state();

      ppsm_system* sys = nullptr;
      ppsm_status s = ppsm_system_create(a.data(), a.size(), alpha.data(),
                                         beta.data(), 1.0, &sys);
      if (s != PPSM_OK) compute_failed("oracle-check setup", s);
      s = ppsm_readout_exact(sys, g, &analytic);
      if (s != PPSM_OK || analytic.probability < 1e-4) {
        ppsm_system_destroy(sys);
        if (s != PPSM_OK && s != PPSM_ERROR_VANISHING_POSTSELECTION)
          compute_failed("oracle-check analytic readout", s);
        continue;
      }
      s = ppsm_oracle_readout(sys, g, nullptr, &brute);
      ppsm_system_destroy(sys);
      if (s != PPSM_OK) compute_failed("oracle-check brute force", s);
      break;
    }

    const double errs[5] = {rel_err(analytic.probability, brute.probability),
                            rel_err(analytic.dp, brute.dp),
                            rel_err(analytic.dq, brute.dq),
                            rel_err(analytic.sd_p, brute.sd_p),
                            rel_err(analytic.sd_q, brute.sd_q)};
    const double worst = *std::max_element(errs, errs + 5);
    summary.worst_err = std::max(summary.worst_err, worst);
    if (worst > tol) ++summary.failures;
    summary.table.add_row({static_cast<double>(k), static_cast<double>(dim),
                           g, errs[0], errs[1], errs[2], errs[3], errs[4],
                           worst},
                          worst > tol ? "ToleranceExceeded" : "");
  }
  return summary;
}

refine_outcome refine(const std::string& objective_name, const run_config& cfg,
                      const std::vector<double>& start) {
  const objective obj = make_objective(objective_name, cfg);
  const size_t arity = obj.params.size();
  if (!start.empty() && start.size() != arity)
    throw config_error("config error at $.start: expected " +
                       std::to_string(arity) + " coordinates for " +
                       objective_name);

  refine_outcome outcome;
  outcome.objective = objective_name;
  outcome.params = obj.params;

  double seed_step = 0.0;
  if (start.empty()) {
    const double step_deg = arity == 2 ? 1.0 : 9.0;
    seed_step = step_deg * pi / 180.0;
    std::vector<std::vector<double>> axes(arity);
    for (size_t d = 0; d < arity; ++d) {
      const bool azimuth = obj.params[d].rfind("phi", 0) == 0;
      const long steps = azimuth ? std::lround(360.0 / step_deg)
                                 : std::lround(180.0 / step_deg) + 1;
      axes[d] = azimuth ? phi_axis(steps) : theta_axis(steps);
    }
    std::vector<size_t> idx(arity, 0);
    std::vector<double> x(arity);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> best_x(arity, 0.0);
    for (;;) {
      for (size_t d = 0; d < arity; ++d) x[d] = axes[d][idx[d]];
      const double v = obj.value(x);
      if (v > best) {
        best = v;
        best_x = x;
      }
      bool rolled_over = true;
      for (size_t d = arity; d-- > 0;) {
        if (++idx[d] < axes[d].size()) {
          rolled_over = false;
          break;
        }
        idx[d] = 0;
      }
      if (rolled_over) break;
    }
    outcome.start = best_x;
    outcome.grid_value = best;
  } else {
    outcome.start = start;
    outcome.grid_value = obj.value(start);
  }

  simplex_options options;
  options.initial_step = std::max(options.initial_step, 0.5 * seed_step);
  const simplex_result res =
      maximize(obj.value, outcome.start, obj.lo, obj.hi, options);

  outcome.argmax = res.x;
  for (size_t d = 0; d < arity; ++d) {
    if (obj.params[d].rfind("phi", 0) == 0) {
      double w = std::fmod(outcome.argmax[d], 2.0 * pi);
      if (w < 0.0) w += 2.0 * pi;
      outcome.argmax[d] = w;
    }
  }
  outcome.value = res.value;
  outcome.evaluations = res.evaluations;
  outcome.converged = res.converged;
  outcome.flat_objective = res.flat_objective;
  outcome.closed_form = obj.closed_form ? obj.closed_form() : nan_value;
  return outcome;
}

scan_table refine_table(const refine_outcome& outcome, const run_config& cfg) {
  std::vector<std::string> columns;
  for (const auto& p : outcome.params) columns.push_back("start_" + p);
  for (const auto& p : outcome.params) columns.push_back(p);
  for (const char* c : {"value", "grid_value", "closed_form", "evaluations",
                        "converged", "flat_objective"})
    columns.push_back(c);

  scan_table table(columns);
  add_common_metadata(table, cfg, true);
  table.add_metadata("objective", outcome.objective);

  std::vector<double> row;
  for (double v : outcome.start) row.push_back(v);
  for (double v : outcome.argmax) row.push_back(v);
  row.push_back(outcome.value);
  row.push_back(outcome.grid_value);
  row.push_back(outcome.closed_form);
  row.push_back(static_cast<double>(outcome.evaluations));
  row.push_back(outcome.converged ? 1.0 : 0.0);
  row.push_back(outcome.flat_objective ? 1.0 : 0.0);
  table.add_row(row, outcome.converged ? "" : "NoConvergence");
  return table;
}

void write_plot_script(std::ostream& os, const std::string& csv_path,
                       const scan_table& table, size_t axis_count) {
  os << "# gnuplot companion script (ppsmeter " << ppsm_version() << ")\n";
  os << "set datafile separator \",\"\n";
  os << "set datafile commentschars \"#\"\n";
  os << "set key autotitle columnhead outside\n";
  os << "set xlabel \"" << table.columns()[0] << "\"\n";
  os << "plot ";
  bool first = true;
  for (size_t c = axis_count; c < table.column_count(); ++c) {
    if (!first) os << ", \\\n     ";
    os << "\"" << csv_path << "\" using 1:" << (c + 1) << " with lines";
    first = false;
  }
  os << "\n";
}

} // namespace scanlib
