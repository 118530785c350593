#include "scanlib/objectives.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <ppsmeter.h>

namespace scanlib {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double wrap_azimuth(double phi) {
  double w = std::fmod(phi, 2.0 * pi);
  if (w < 0.0) w += 2.0 * pi;
  return w;
}

double need_g(const run_config& cfg) {
  if (!cfg.g) throw config_error("config error at $.g: required for refine");
  return *cfg.g;
}

objective sg_objective(const std::string& name, const run_config& cfg) {
  const double delta = cfg.delta;
  const double g = need_g(cfg);
  objective obj;
  obj.name = name;
  obj.params = {"theta", "phi"};
  obj.lo = {0.0, 0.0};
  obj.hi = {pi, 2.0 * pi};

  const std::string field = name.substr(3); // after "sg."
  if (field == "dp" || field == "dq" || field == "p") {
    const int which = field == "dp" ? 0 : field == "dq" ? 1 : 2;
    obj.value = [delta, g, which](const std::vector<double>& x) {
      ppsm_readout r;
      if (ppsm_sg_readout(x[0], wrap_azimuth(x[1]), delta, g, &r) != PPSM_OK)
        return neg_inf;
      return which == 0 ? r.dp : which == 1 ? r.dq : r.probability;
    };
    if (field == "dp") {
      obj.closed_form = [delta, g] {
        ppsm_sg_max m;
        if (ppsm_sg_momentum_max(delta, g, &m) != PPSM_OK) return neg_inf;
        return m.dp_max;
      };
    } else if (field == "dq") {
      obj.closed_form = [delta, g] {
        ppsm_sg_max m;
        if (ppsm_sg_position_max(delta, g, &m) != PPSM_OK) return neg_inf;
        return m.dz_max;
      };
    } else {
      // K = 1 + sin(theta) cos(phi) e^{-2 D^2 g^2} peaks at theta = pi/2,
      // phi = 0, so max P = (1 + e^{-2 D^2 g^2}) / 2.
      obj.closed_form = [delta, g] {
        return 0.5 * (1.0 + std::exp(-2.0 * delta * delta * g * g));
      };
    }
    return obj;
  }

  int index = -1;
  bool ms = false;
  if (field == "ip1") index = 0;
  else if (field == "iz1") index = 1;
  else if (field == "ip2") index = 2;
  else if (field == "iz2") index = 3;
  else if (field == "ep1") { index = 0; ms = true; }
  else if (field == "ez1") { index = 1; ms = true; }
  else if (field == "ep2") { index = 2; ms = true; }
  else if (field == "ez2") { index = 3; ms = true; }
  if (index < 0)
    throw config_error("config error at $.objective: unknown name sg." + field);

  obj.value = [delta, g, index, ms](const std::vector<double>& x) {
    double out[4];
    const ppsm_status s =
        ms ? ppsm_sg_ms_enhancements(x[0], wrap_azimuth(x[1]), delta, g, out)
           : ppsm_sg_snr_improvements(x[0], wrap_azimuth(x[1]), delta, g, out);
    return s == PPSM_OK ? out[index] : neg_inf;
  };
  return obj;
}

objective qubit_objective(const std::string& name, const run_config& cfg) {
  const double delta = cfg.delta;
  const double g = need_g(cfg);
  const double a1 = cfg.a1, a2 = cfg.a2;
  objective obj;
  obj.name = name;
  obj.params = {"theta1", "phi1", "theta2", "phi2"};
  obj.lo = {0.0, 0.0, 0.0, 0.0};
  obj.hi = {pi, 2.0 * pi, pi, 2.0 * pi};

  const std::string field = name.substr(6); // after "qubit."
  if (field == "dp" || field == "dq") {
    const bool momentum = field == "dp";
    obj.value = [=](const std::vector<double>& x) {
      ppsm_readout r;
      if (ppsm_qubit_readout(a1, a2, x[0], wrap_azimuth(x[1]), x[2],
                             wrap_azimuth(x[3]), delta, g, &r) != PPSM_OK)
        return neg_inf;
      return momentum ? r.dp : r.dq;
    };
    obj.closed_form = [=] {
      ppsm_qubit_extremes e;
      if (ppsm_qubit_shift_extremes(a1, a2, delta, g, &e) != PPSM_OK) return neg_inf;
      return momentum ? e.dp_max : e.dq_max;
    };
    return obj;
  }
  if (field == "ip1") {
    obj.value = [=](const std::vector<double>& x) {
      ppsm_system* sys = nullptr;
      if (ppsm_system_create_qubit(a1, a2, x[0], wrap_azimuth(x[1]), x[2],
                                   wrap_azimuth(x[3]), delta, &sys) != PPSM_OK)
        return neg_inf;
      ppsm_snr_figures r;
      const ppsm_status s = ppsm_snr_report(sys, g, 1, &r);
      ppsm_system_destroy(sys);
      return s == PPSM_OK ? r.ip_1 : neg_inf;
    };
    return obj;
  }
  throw config_error("config error at $.objective: unknown name qubit." + field);
}

} // namespace

objective make_objective(const std::string& name, const run_config& cfg) {
  if (name.rfind("sg.", 0) == 0) return sg_objective(name, cfg);
  if (name.rfind("qubit.", 0) == 0) return qubit_objective(name, cfg);
  throw config_error("config error at $.objective: unknown name " + name);
}

std::vector<std::string> objective_names() {
  return {"sg.dp",   "sg.dq",   "sg.p",    "sg.ip1",  "sg.iz1",
          "sg.ip2",  "sg.iz2",  "sg.ep1",  "sg.ez1",  "sg.ep2",
          "sg.ez2",  "qubit.dp", "qubit.dq", "qubit.ip1"};
}

} // namespace scanlib
