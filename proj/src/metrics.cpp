#include "ppsm/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ppsm/core_pps.hpp"

namespace ppsm::metrics {

namespace {

constexpr double pi = std::numbers::pi;

void check_trials(long n) {
  if (n < 1) fail(errc::invalid_argument, "trial count must be at least 1");
}

struct sg_terms {
  double k, e;
  double s_p; // sin^2(th) + sin(th) cos(phi) e
  double t_z; // sin(th) cos(phi) e + sin^2(th) e^2
};

sg_terms sg_factors(const sg::config& cfg) {
  const double dd = cfg.delta * cfg.delta;
  sg_terms t;
  t.e = std::exp(-2.0 * dd * cfg.g * cfg.g);
  const double s = std::sin(cfg.theta);
  t.k = 1.0 + s * std::cos(cfg.phi) * t.e;
  if (t.k <= eps_probability)
    fail(errc::vanishing_postselection, "postselection probability vanishes");
  t.s_p = s * s + s * std::cos(cfg.phi) * t.e;
  t.t_z = s * std::cos(cfg.phi) * t.e + s * s * t.e * t.e;
  return t;
}

double positive_sqrt(double radicand, const char* what) {
  if (!std::isfinite(radicand) || radicand <= 0.0)
    fail(errc::numerical_failure, std::string(what) + " radicand is not positive");
  return std::sqrt(radicand);
}

} // namespace

double max_abs_eigenvalue(const observable& obs) {
  double best = obs.a[0];
  for (double a : obs.a) {
    if (std::abs(a) > std::abs(best) ||
        (std::abs(a) == std::abs(best) && a > best))
      best = a;
  }
  return best;
}

snr_report_t snr_report(const observable& obs, const pps_pair& pps,
                        gaussian_pointer pointer, double g, long n) {
  check_trials(n);
  if (!std::isfinite(g) || g == 0.0)
    fail(errc::invalid_argument, "SNR figures need a nonzero coupling");

  const readout r = postselect_readout(obs, pps, pointer, g);
  const double a_max = max_abs_eigenvalue(obs);
  const double dp0 = pointer.sd_p();
  const double strongest = std::abs(a_max * g);
  const double rootn = std::sqrt(static_cast<double>(n));
  const double rootnp = std::sqrt(static_cast<double>(n) * r.probability);
  const double rootp = std::sqrt(r.probability);

  snr_report_t out;
  out.n = n;
  out.r0 = rootn * std::abs(no_postselect_shift(obs, pps.alpha, g)) / dp0;
  out.r0_max = rootn * strongest / dp0;
  out.rp = rootnp * std::abs(r.dp) / r.sd_p;
  out.ip_1 = dp0 * rootp * std::abs(r.dp) / (r.sd_p * strongest);
  out.ip_2 = dp0 * std::abs(r.dp) / (r.sd_p * strongest);
  if (r.sd_q <= 0.0)
    fail(errc::degenerate_spread, "position spread collapsed; position SNR undefined");
  out.rq = rootnp * std::abs(r.dq) / r.sd_q;
  out.iq_1 = dp0 * rootp * std::abs(r.dq) / (r.sd_q * strongest);
  out.iq_2 = dp0 * std::abs(r.dq) / (r.sd_q * strongest);
  return out;
}

ms_report_t ms_report(const observable& obs, const pps_pair& pps,
                      gaussian_pointer pointer, double g, long n,
                      double dp_dg, double dq_dg) {
  check_trials(n);
  if (!std::isfinite(dp_dg) || !std::isfinite(dq_dg))
    fail(errc::invalid_argument, "shift derivatives must be finite");
  if (dp_dg == 0.0 && dq_dg == 0.0)
    fail(errc::insensitive_pointer, "pointer does not respond to the coupling");

  const readout r = postselect_readout(obs, pps, pointer, g);
  const double a_max = std::abs(max_abs_eigenvalue(obs));
  const double dp0 = pointer.sd_p();
  const double rootn = std::sqrt(static_cast<double>(n));
  const double rootnp = std::sqrt(static_cast<double>(n) * r.probability);
  const double rootp = std::sqrt(r.probability);
  const double inf = std::numeric_limits<double>::infinity();

  ms_report_t out;
  out.n = n;
  out.dg_opt = dp0 / (a_max * rootn);
  out.dg_p = dp_dg == 0.0 ? inf : r.sd_p / (std::abs(dp_dg) * rootnp);
  out.dg_q = dq_dg == 0.0 ? inf : r.sd_q / (std::abs(dq_dg) * rootnp);
  out.ep_1 = dp0 * std::abs(dp_dg) * rootp / (a_max * r.sd_p);
  out.ep_2 = dp0 * std::abs(dp_dg) / (a_max * r.sd_p);
  if (dq_dg != 0.0 && r.sd_q <= 0.0)
    fail(errc::degenerate_spread, "position spread collapsed; position sensitivity undefined");
  out.eq_1 = dq_dg == 0.0 ? 0.0 : dp0 * std::abs(dq_dg) * rootp / (a_max * r.sd_q);
  out.eq_2 = dq_dg == 0.0 ? 0.0 : dp0 * std::abs(dq_dg) / (a_max * r.sd_q);
  return out;
}

double relative_system_error(double shift, double delta_sys) {
  if (!std::isfinite(shift) || !std::isfinite(delta_sys) || delta_sys < 0.0)
    fail(errc::invalid_argument, "shift and systematic uncertainty must be finite, delta_sys >= 0");
  if (shift == 0.0)
    fail(errc::insensitive_pointer, "relative systematic error undefined for a vanishing shift");
  return delta_sys / std::abs(shift);
}

improvements sg_snr_improvements(const sg::config& cfg) {
  const readout probe = sg_readout(cfg); // validates angles/delta/g >= 0
  (void)probe;
  if (cfg.g <= 0.0) fail(errc::invalid_argument, "SNR figures need g > 0");
  const sg_terms t = sg_factors(cfg);
  const double dd = cfg.delta * cfg.delta;
  const double gg = cfg.g * cfg.g;
  const double s = std::sin(cfg.theta);
  const double cp = std::abs(std::cos(cfg.theta));
  const double cz = std::abs(s * std::sin(cfg.phi) * t.e);

  improvements out;
  out.ip_1 = cp * std::sqrt(t.k) /
             positive_sqrt(2.0 * t.k * t.k + 8.0 * dd * gg * t.s_p, "type-I momentum SNR");
  out.iz_1 = cz * std::sqrt(t.k) /
             positive_sqrt(2.0 * t.k * t.k - 8.0 * dd * gg * t.t_z, "type-I position SNR");
  out.ip_2 = cp / positive_sqrt(t.k * t.k + 4.0 * dd * gg * t.s_p, "type-II momentum SNR");
  out.iz_2 = cz / positive_sqrt(t.k * t.k - 4.0 * dd * gg * t.t_z, "type-II position SNR");
  return out;
}

enhancements sg_ms_enhancements(const sg::config& cfg) {
  const improvements base = sg_snr_improvements(cfg);
  const sg_terms t = sg_factors(cfg);
  const double y = cfg.delta * cfg.delta * cfg.g * cfg.g;
  const double pref_p = std::abs(1.0 + 4.0 * y - 4.0 * y / t.k);
  const double pref_z = std::abs(1.0 - 4.0 * y / t.k);
  return {pref_p * base.ip_1, pref_z * base.iz_1, pref_p * base.ip_2,
          pref_z * base.iz_2};
}

type2_max sg_snr_type2_max(double delta, double g) {
  (void)make_pointer(delta);
  if (!std::isfinite(g) || g <= 0.0)
    fail(errc::invalid_argument, "coupling g must be positive");
  if (g * delta > 0.05)
    fail(errc::out_of_regime, "small-coupling maximum formula requires g*delta <= 0.05");

  type2_max out;
  out.i_max = std::sqrt(std::sqrt(3.0) / 6.0) / (g * delta);
  out.theta_star = std::asin(1.0 - 2.0 * std::sqrt(3.0) * delta * delta * g * g);
  out.phi_star = pi;

  // Exact maximum: the phi = pi slice is optimal for every theta (the
  // denominator grows monotonically with cos(phi)), and the slice is
  // symmetric about theta = pi/2.  Fine scan plus golden-section polish.
  auto value = [&](double theta) {
    return sg_snr_improvements({theta, pi, delta, g}).ip_2;
  };
  const long steps = 20000;
  double best_theta = 0.0, best = 0.0;
  for (long i = 1; i < steps; ++i) {
    const double theta = 0.5 * pi * static_cast<double>(i) / static_cast<double>(steps);
    const double v = value(theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }
  const double step = 0.5 * pi / static_cast<double>(steps);
  double lo = std::max(best_theta - step, 0.0), hi = std::min(best_theta + step, 0.5 * pi);
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = value(x1), f2 = value(x2);
  while (hi - lo > 1e-13) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = value(x1);
    }
  }
  out.scan_max = std::max({best, f1, f2});
  return out;
}

} // namespace ppsm::metrics
