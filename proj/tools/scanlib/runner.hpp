#ifndef SCANLIB_RUNNER_HPP
#define SCANLIB_RUNNER_HPP

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "scanlib/config.hpp"
#include "scanlib/table.hpp"

namespace scanlib {

// Evaluate fn(0..n-1) over a work pool; PPSMETER_THREADS caps the pool size
// (default: hardware concurrency).  Each index is visited exactly once;
// callers write into preallocated slots, so results are order-independent.
void parallel_rows(size_t n, const std::function<void(size_t)>& fn);

// Angle grids: theta spans [0, pi] inclusive with `steps` nodes; phi is
// periodic, phi_j = 2*pi*j/steps for j = 0..steps-1.
std::vector<double> theta_axis(long steps);
std::vector<double> phi_axis(long steps);

// theta-major readout grid over the Stern-Gerlach preselection sphere.
// Columns: theta, phi, probability, dp, dq, sd_p, sd_q.  Rows that fail
// (e.g. vanishing postselection) carry the status name in the error column.
scan_table sg_scan_readout(const run_config& cfg);

// Same grid, metric columns: ip_1, iz_1, ip_2, iz_2, ep_1, ez_1, ep_2, ez_2.
scan_table sg_scan_metrics(const run_config& cfg);

// One row per coupling in cfg.g_range: g, dp_max, theta_p, phi_p, dz_max,
// theta_z, phi_z, p_max.
scan_table sg_max_vs_g(const run_config& cfg);

// Single-row exact readout for whichever model the config describes.
scan_table readout_row(const run_config& cfg);

// Single-row table of the closed-form qubit extremes.
scan_table qubit_extrema_row(const run_config& cfg);

// Randomized analytic-vs-brute-force comparison.  Each instance draws
// d in 2..5, a spectrum with max|a| = 1 (a duplicated eigenvalue in ~20% of
// cases), Haar-like random unit pre/postselections, and g log-uniform in
// [1e-3, 5] at delta = 1; instances whose postselection probability falls
// below 1e-4 are redrawn so the quadrature comparison stays well
// conditioned.  Differences are |analytic - oracle| / max(1, |analytic|).
struct oracle_check_summary {
  long instances = 0;
  long failures = 0;       // rows whose max_err exceeds tol
  double worst_err = 0.0;
  scan_table table;
};
oracle_check_summary oracle_check(long instances, unsigned long long seed,
                                  double tol);

// Grid-seeded simplex refinement of a registered objective.  With an empty
// start the seed grid is 1 degree for 2-angle objectives and 9 degrees for
// 4-angle ones; the reported grid_value is the best seed-grid value.
struct refine_outcome {
  std::string objective;
  std::vector<std::string> params;
  std::vector<double> start;
  std::vector<double> argmax;
  double value = 0.0;
  double grid_value = 0.0;
  double closed_form = 0.0; // NaN when the objective has none
  long evaluations = 0;
  bool converged = false;
  bool flat_objective = false;
};
refine_outcome refine(const std::string& objective_name, const run_config& cfg,
                      const std::vector<double>& start = {});
scan_table refine_table(const refine_outcome& outcome, const run_config& cfg);

// gnuplot-compatible companion script: plots each value column of `table`
// against its first column from `csv_path`.
void write_plot_script(std::ostream& os, const std::string& csv_path,
                       const scan_table& table, size_t axis_count);

} // namespace scanlib

#endif
