#include "scanlib/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace scanlib {

namespace {

using nlohmann::json;
constexpr double pi = std::numbers::pi;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw config_error("config error at " + path + ": " + what);
}

const json* find(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double need_finite_number(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(path, "must be finite");
  return v;
}

long need_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<long>();
}

std::string need_string(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) bad(path + "." + it.key(), "unknown field");
}

// Angle validation happens in the declared unit so diagnostics match the
// file; the returned value is radians.
struct angle_unit {
  bool degrees = false;
  double to_rad(double v) const { return degrees ? v * pi / 180.0 : v; }
  double full() const { return degrees ? 360.0 : 2.0 * pi; }
  double half() const { return degrees ? 180.0 : pi; }
  const char* name() const { return degrees ? "deg" : "rad"; }
};

double need_polar(const json& j, const std::string& path, angle_unit unit) {
  const double v = need_finite_number(j, path);
  if (v < 0.0 || v > unit.half())
    bad(path, std::string("polar angle must lie in [0, ") +
                  (unit.degrees ? "180] deg" : "pi] rad"));
  return unit.to_rad(v);
}

double need_azimuth(const json& j, const std::string& path, angle_unit unit) {
  const double v = need_finite_number(j, path);
  if (v < 0.0 || v >= unit.full())
    bad(path, std::string("azimuth must lie in [0, ") +
                  (unit.degrees ? "360) deg" : "2*pi) rad"));
  return unit.to_rad(v);
}

std::vector<std::complex<double>> need_amplitudes(const json& j,
                                                  const std::string& path,
                                                  size_t dim) {
  if (!j.is_array()) bad(path, "expected an array of [re, im] pairs");
  if (j.size() != dim)
    bad(path, "length must match eigenvalues (" + std::to_string(dim) + ")");
  std::vector<std::complex<double>> out;
  out.reserve(dim);
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& e = j[i];
    if (!e.is_array() || e.size() != 2) bad(p, "expected [re, im]");
    out.emplace_back(need_finite_number(e[0], p + "[0]"),
                     need_finite_number(e[1], p + "[1]"));
  }
  double norm2 = 0.0;
  for (const auto& c : out) norm2 += std::norm(c);
  if (std::abs(norm2 - 1.0) > 1e-10)
    bad(path, "amplitudes must have unit norm (|.|^2 sums to " +
                  std::to_string(norm2) + ")");
  return out;
}

void parse_bloch_pair(const json& j, const std::string& path, angle_unit unit,
                      double& theta, double& phi) {
  if (!j.is_object()) bad(path, "expected an object {theta, phi}");
  reject_unknown_keys(j, {"theta", "phi"}, path);
  const json* t = find(j, "theta");
  const json* p = find(j, "phi");
  if (!t) bad(path + ".theta", "required");
  if (!p) bad(path + ".phi", "required");
  theta = need_polar(*t, path + ".theta", unit);
  phi = need_azimuth(*p, path + ".phi", unit);
}

} // namespace

const char* model_name(model_kind model) {
  switch (model) {
    case model_kind::generic: return "generic";
    case model_kind::qubit: return "qubit";
    case model_kind::stern_gerlach: return "stern-gerlach";
  }
  return "unknown";
}

run_config parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config error at $: not valid JSON (") +
                       e.what() + ")");
  }
  if (!j.is_object()) bad("$", "expected a JSON object");

  const json* jm = find(j, "model");
  if (!jm) bad("$.model", "required (generic | qubit | stern-gerlach)");
  const std::string model = need_string(*jm, "$.model");

  run_config cfg;
  std::set<std::string> allowed = {"model",      "delta",       "g",
                                   "g_range",    "unit",        "theta_steps",
                                   "phi_steps",  "grid",        "out",
                                   "format"};
  if (model == "generic") {
    cfg.model = model_kind::generic;
    allowed.insert({"eigenvalues", "alpha", "beta"});
  } else if (model == "qubit") {
    cfg.model = model_kind::qubit;
    allowed.insert({"a1", "a2", "pre", "post"});
  } else if (model == "stern-gerlach") {
    cfg.model = model_kind::stern_gerlach;
    allowed.insert({"theta", "phi"});
  } else {
    bad("$.model", "must be one of generic | qubit | stern-gerlach");
  }
  reject_unknown_keys(j, allowed, "$");

  angle_unit unit;
  if (const json* ju = find(j, "unit")) {
    const std::string u = need_string(*ju, "$.unit");
    if (u == "deg")
      unit.degrees = true;
    else if (u != "rad")
      bad("$.unit", "must be \"rad\" or \"deg\"");
  }

  if (const json* jd = find(j, "delta")) {
    cfg.delta = need_finite_number(*jd, "$.delta");
    if (cfg.delta <= 0.0) bad("$.delta", "must be > 0");
  }

  if (const json* jg = find(j, "g"))
    cfg.g = need_finite_number(*jg, "$.g");

  if (const json* jr = find(j, "g_range")) {
    if (!jr->is_object()) bad("$.g_range", "expected {from, to, steps, spacing}");
    reject_unknown_keys(*jr, {"from", "to", "steps", "spacing"}, "$.g_range");
    g_range_spec range;
    const json* jf = find(*jr, "from");
    const json* jt = find(*jr, "to");
    const json* js = find(*jr, "steps");
    if (!jf) bad("$.g_range.from", "required");
    if (!jt) bad("$.g_range.to", "required");
    if (!js) bad("$.g_range.steps", "required");
    range.from = need_finite_number(*jf, "$.g_range.from");
    range.to = need_finite_number(*jt, "$.g_range.to");
    range.steps = need_integer(*js, "$.g_range.steps");
    if (range.from <= 0.0) bad("$.g_range.from", "must be > 0");
    if (range.to <= range.from) bad("$.g_range.to", "must exceed from");
    if (range.steps < 2) bad("$.g_range.steps", "must be >= 2");
    if (const json* jsp = find(*jr, "spacing")) {
      const std::string sp = need_string(*jsp, "$.g_range.spacing");
      if (sp == "linear")
        range.log_spacing = false;
      else if (sp != "log")
        bad("$.g_range.spacing", "must be \"log\" or \"linear\"");
    }
    cfg.g_range = range;
  }

  if (const json* jt = find(j, "theta_steps")) {
    cfg.theta_steps = need_integer(*jt, "$.theta_steps");
    if (cfg.theta_steps < 2) bad("$.theta_steps", "must be >= 2");
  }
  if (const json* jp = find(j, "phi_steps")) {
    cfg.phi_steps = need_integer(*jp, "$.phi_steps");
    if (cfg.phi_steps < 1) bad("$.phi_steps", "must be >= 1");
  }

  if (const json* jgr = find(j, "grid")) {
    if (!jgr->is_object()) bad("$.grid", "expected {half_width_sigmas, points}");
    reject_unknown_keys(*jgr, {"half_width_sigmas", "points"}, "$.grid");
    if (const json* jh = find(*jgr, "half_width_sigmas")) {
      cfg.grid_half_width = need_finite_number(*jh, "$.grid.half_width_sigmas");
      if (cfg.grid_half_width < 8.0)
        bad("$.grid.half_width_sigmas", "must be >= 8");
    }
    if (const json* jp = find(*jgr, "points")) {
      cfg.grid_points = need_integer(*jp, "$.grid.points");
      if (cfg.grid_points < 1025 || cfg.grid_points % 2 == 0)
        bad("$.grid.points", "must be odd and >= 1025");
    }
  }

  if (const json* jo = find(j, "out")) cfg.out = need_string(*jo, "$.out");
  if (const json* jf = find(j, "format")) {
    cfg.format = need_string(*jf, "$.format");
    if (cfg.format != "csv" && cfg.format != "json")
      bad("$.format", "must be \"csv\" or \"json\"");
  }

  switch (cfg.model) {
    case model_kind::generic: {
      const json* je = find(j, "eigenvalues");
      if (!je) bad("$.eigenvalues", "required for model generic");
      if (!je->is_array() || je->size() < 2)
        bad("$.eigenvalues", "expected an array of >= 2 numbers");
      for (size_t i = 0; i < je->size(); ++i)
        cfg.eigenvalues.push_back(need_finite_number(
            (*je)[i], "$.eigenvalues[" + std::to_string(i) + "]"));
      const json* ja = find(j, "alpha");
      const json* jb = find(j, "beta");
      if (!ja) bad("$.alpha", "required for model generic");
      if (!jb) bad("$.beta", "required for model generic");
      cfg.alpha = need_amplitudes(*ja, "$.alpha", cfg.eigenvalues.size());
      cfg.beta = need_amplitudes(*jb, "$.beta", cfg.eigenvalues.size());
      break;
    }
    case model_kind::qubit: {
      if (const json* ja = find(j, "a1"))
        cfg.a1 = need_finite_number(*ja, "$.a1");
      if (const json* ja = find(j, "a2"))
        cfg.a2 = need_finite_number(*ja, "$.a2");
      const json* jpre = find(j, "pre");
      const json* jpost = find(j, "post");
      if (!jpre) bad("$.pre", "required for model qubit");
      if (!jpost) bad("$.post", "required for model qubit");
      parse_bloch_pair(*jpre, "$.pre", unit, cfg.theta1, cfg.phi1);
      parse_bloch_pair(*jpost, "$.post", unit, cfg.theta2, cfg.phi2);
      break;
    }
    case model_kind::stern_gerlach: {
      if (const json* jt = find(j, "theta"))
        cfg.theta = need_polar(*jt, "$.theta", unit);
      if (const json* jp = find(j, "phi"))
        cfg.phi = need_azimuth(*jp, "$.phi", unit);
      break;
    }
  }
  return cfg;
}

run_config parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("config error at $: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

} // namespace scanlib
