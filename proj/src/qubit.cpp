#include "ppsm/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ppsm/core_pps.hpp"

namespace ppsm::qubit {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double angle_slack = 1e-9; // roundoff from degree conversions

void check_spectrum(double a1, double a2) {
  if (!std::isfinite(a1) || !std::isfinite(a2))
    fail(errc::invalid_argument, "eigenvalues must be finite");
}

struct shared_factors {
  double gap;  // |a1 - a2|
  double e;    // e^{-g^2 D^2 gap^2 / 2}
  double m, w; // 1 +- e
  double root; // sqrt(1 - e^2)
};

shared_factors factors(double a1, double a2, gaussian_pointer pointer, double g) {
  check_spectrum(a1, a2);
  if (!std::isfinite(g) || g <= 0.0)
    fail(errc::invalid_argument, "extremes require finite g > 0");
  const double gap = std::abs(a1 - a2);
  if (gap <= degeneracy_tol)
    fail(errc::degenerate_observable, "extremes require two distinct eigenvalues");
  const double x = 0.5 * g * g * pointer.delta * pointer.delta * gap * gap;
  shared_factors f;
  f.gap = gap;
  f.e = std::exp(-x);
  f.m = 1.0 + f.e;
  f.w = -std::expm1(-x);
  f.root = std::sqrt(-std::expm1(-2.0 * x));
  return f;
}

} // namespace

bloch_angles make_angles(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi))
    fail(errc::invalid_argument, "Bloch angles must be finite");
  if (theta < -angle_slack || theta > pi + angle_slack)
    fail(errc::invalid_argument, "theta must lie in [0, pi]");
  if (phi < -angle_slack || phi >= 2.0 * pi + angle_slack)
    fail(errc::invalid_argument, "phi must lie in [0, 2 pi)");
  bloch_angles a;
  a.theta = std::clamp(theta, 0.0, pi);
  a.phi = std::clamp(phi, 0.0, 2.0 * pi);
  return a;
}

pps_pair to_pps(bloch_angles pre, bloch_angles post) {
  auto state = [](bloch_angles b) {
    return std::vector<cplx>{std::cos(0.5 * b.theta),
                             std::polar(std::sin(0.5 * b.theta), b.phi)};
  };
  return pps_pair{state(pre), state(post)};
}

readout closed_form_readout(double a1, double a2, bloch_angles pre,
                            bloch_angles post, gaussian_pointer pointer,
                            double g) {
  check_spectrum(a1, a2);
  if (!std::isfinite(g)) fail(errc::invalid_argument, "coupling g must be finite");

  const double dd = pointer.delta * pointer.delta;
  const double gap = a1 - a2;
  const double e = std::exp(-0.5 * g * g * dd * gap * gap);
  const double c1 = std::cos(pre.theta), c2 = std::cos(post.theta);
  const double s1 = std::sin(pre.theta), s2 = std::sin(post.theta);
  const double phi0 = pre.phi - post.phi;

  const double nn = 1.0 + c1 * c2 + s1 * s2 * std::cos(phi0) * e;
  if (nn <= eps_probability)
    fail(errc::vanishing_postselection, "postselection probability vanishes");

  readout r;
  r.probability = std::min(0.5 * nn, 1.0);
  r.dp = 0.5 * (a1 + a2) * g + 0.5 * g * gap * (c1 + c2) / nn;
  r.dq = g * dd * gap * s1 * s2 * std::sin(phi0) * e / nn;

  // Spreads via the generic double-sum path on the same amplitudes.
  const readout full =
      postselect_readout(make_observable({a1, a2}), to_pps(pre, post), pointer, g);
  r.sd_p = full.sd_p;
  r.sd_q = full.sd_q;
  return r;
}

momentum_extremes momentum_shift_extremes(double a1, double a2,
                                          gaussian_pointer pointer, double g) {
  const shared_factors f = factors(a1, a2, pointer, g);
  const double mid = 0.5 * (a1 + a2) * g;
  const double half = 0.5 * f.gap * g / f.root;
  momentum_extremes out;
  out.dp_min = mid - half;
  out.dp_max = mid + half;
  out.t_opt_max = std::sqrt(f.w / f.m);
  out.t_opt_min = -out.t_opt_max;
  out.phi0 = pi;
  out.m = f.m;
  out.w = f.w;
  return out;
}

position_extremes position_shift_extremes(double a1, double a2,
                                          gaussian_pointer pointer, double g) {
  const shared_factors f = factors(a1, a2, pointer, g);
  position_extremes out;
  out.dq_max = g * pointer.delta * pointer.delta * f.gap * f.e / f.root;
  out.dq_min = -out.dq_max;
  out.phi0_max = pi - std::acos(f.e);
  out.phi0_min = pi + std::acos(f.e);
  out.m = f.m;
  out.w = f.w;
  return out;
}

} // namespace ppsm::qubit
