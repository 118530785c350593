#ifndef SCANLIB_CONFIG_HPP
#define SCANLIB_CONFIG_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace scanlib {

// Raised for any malformed configuration; the message names the offending
// field as a JSON path (e.g. "$.pre.theta").
class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class model_kind { generic, qubit, stern_gerlach };

struct g_range_spec {
  double from = 0.0;
  double to = 0.0;
  long steps = 0;
  bool log_spacing = true;
};

// Parsed and validated run description.  Angles are radians here regardless
// of the `unit` declared in the file ("rad" default, "deg" accepted).
struct run_config {
  model_kind model = model_kind::stern_gerlach;

  // model == generic
  std::vector<double> eigenvalues;
  std::vector<std::complex<double>> alpha, beta;

  // model == qubit: spectrum and Bloch angles of pre/postselection
  double a1 = 1.0, a2 = -1.0;
  double theta1 = 0.0, phi1 = 0.0, theta2 = 0.0, phi2 = 0.0;

  // model == stern_gerlach: preselection angles for single-point readout
  double theta = 0.0, phi = 0.0;

  double delta = 1.0;
  std::optional<double> g;
  std::optional<g_range_spec> g_range;

  long theta_steps = 181; // inclusive nodes on [0, pi]
  long phi_steps = 360;   // periodic nodes on [0, 2*pi)

  double grid_half_width = 0.0; // 0 = oracle default
  long grid_points = 0;         // 0 = oracle default

  std::string out;             // empty = stdout
  std::string format = "csv";  // "csv" | "json"
};

// Parse from a JSON document / file; throws config_error with a field path
// on any violation.  No computation is attempted before validation passes.
run_config parse_config_text(const std::string& text);
run_config parse_config_file(const std::string& path);

const char* model_name(model_kind model);

} // namespace scanlib

#endif
