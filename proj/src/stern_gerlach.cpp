#include "ppsm/stern_gerlach.hpp"

#include <cmath>
#include <numbers>

#include "ppsm/qubit.hpp"

namespace ppsm::sg {

namespace {

constexpr double pi = std::numbers::pi;

void check(const config& cfg, bool need_positive_g) {
  (void)qubit::make_angles(cfg.theta, cfg.phi);
  (void)make_pointer(cfg.delta);
  if (!std::isfinite(cfg.g) || cfg.g < 0.0 || (need_positive_g && cfg.g == 0.0))
    fail(errc::invalid_argument, "coupling g must be positive");
}

double clamped_sqrt(double radicand, const char* what) {
  if (!std::isfinite(radicand) || radicand < -realness_tol)
    fail(errc::numerical_failure, std::string(what) + " variance is negative");
  return std::sqrt(std::max(radicand, 0.0));
}

} // namespace

readout sg_readout(const config& cfg) {
  check(cfg, false);
  const double dd = cfg.delta * cfg.delta;
  const double g = cfg.g;
  const double e = std::exp(-2.0 * dd * g * g);
  const double s = std::sin(cfg.theta), c = std::cos(cfg.theta);
  const double k = 1.0 + s * std::cos(cfg.phi) * e;
  if (k <= eps_probability)
    fail(errc::vanishing_postselection, "postselection probability vanishes");

  readout r;
  r.probability = std::min(0.5 * k, 1.0);
  r.dp = g * c / k;
  r.dq = 2.0 * g * dd * s * std::sin(cfg.phi) * e / k;
  r.sd_p = clamped_sqrt(
      0.25 / dd + g * g * (s * s + s * std::cos(cfg.phi) * e) / (k * k), "momentum");
  r.sd_q = clamped_sqrt(
      dd - 4.0 * g * g * dd * dd * (s * std::cos(cfg.phi) + s * s * e) * e / (k * k),
      "position");
  return r;
}

sg_max momentum_max(double delta, double g) {
  check(config{0.0, 0.0, delta, g}, true);
  const double x = 4.0 * delta * delta * g * g;
  const double e = std::exp(-0.5 * x);
  const double w2 = -std::expm1(-x); // 1 - e^2
  sg_max out;
  out.dp_max = g / std::sqrt(w2);
  out.theta_opt = std::asin(e);
  out.phi_opt = pi;
  out.p_max = 0.5 * w2;
  return out;
}

sg_max position_max(double delta, double g) {
  check(config{0.0, 0.0, delta, g}, true);
  const double x = 4.0 * delta * delta * g * g;
  const double e = std::exp(-0.5 * x);
  const double w2 = -std::expm1(-x);
  sg_max out;
  out.dz_max = 2.0 * g * delta * delta * e / std::sqrt(w2);
  out.theta_opt = 0.5 * pi;
  out.phi_opt = pi - std::acos(e); // in [pi/2, pi)
  out.p_max = 0.5 * w2;
  return out;
}

} // namespace ppsm::sg
