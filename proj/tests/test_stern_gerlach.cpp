// Stern-Gerlach beam closed forms: fixed equatorial postselection, spectrum
// (+1, -1).  Checks the readout against the generic amplitude route, the
// sphere maxima with their attaining angles, and the invariants tying
// probability cost to shift gain.
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ppsm/core_pps.hpp"
#include "ppsm/qubit.hpp"
#include "ppsm/stern_gerlach.hpp"
#include "ppsm/types.hpp"

using ppsm::errc;
using ppsm::make_observable;
using ppsm::make_pointer;
using ppsm::readout;
using ppsm::sg::config;
using ppsm::sg::momentum_max;
using ppsm::sg::position_max;
using ppsm::sg::sg_max;
using ppsm::sg::sg_readout;

namespace {

constexpr double kPi = std::numbers::pi;

doctest::Approx rel(double expected, double rtol = 1e-12) {
  return doctest::Approx(expected).epsilon(rtol);
}

template <typename Fn>
errc thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const ppsm::error& e) {
    return e.code();
  }
  return errc::ok;
}

bool close_abs_rel(double actual, double expected, double tol) {
  return std::abs(actual - expected) <= tol * std::max(1.0, std::abs(expected));
}

readout generic_route(const config& cfg) {
  const ppsm::pps_pair pps =
      ppsm::qubit::to_pps(ppsm::qubit::make_angles(cfg.theta, cfg.phi),
                          ppsm::qubit::make_angles(0.5 * kPi, 0.0));
  return ppsm::postselect_readout(make_observable({1.0, -1.0}), pps,
                                  make_pointer(cfg.delta), cfg.g);
}

} // namespace

TEST_CASE("beam readout agrees with the amplitude route") {
  std::mt19937_64 rng(83492791);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  int kept = 0;
  while (kept < 30) {
    config cfg;
    cfg.theta = kPi * uni(rng);
    cfg.phi = 2.0 * kPi * uni(rng);
    cfg.delta = 0.5 + 1.5 * uni(rng);
    cfg.g = std::exp(std::log(1e-3) + (std::log(3.0) - std::log(1e-3)) * uni(rng));

    errc ec_closed = errc::ok, ec_generic = errc::ok;
    readout closed, generic;
    try {
      closed = sg_readout(cfg);
    } catch (const ppsm::error& e) {
      ec_closed = e.code();
    }
    try {
      generic = generic_route(cfg);
    } catch (const ppsm::error& e) {
      ec_generic = e.code();
    }
    CHECK(ec_closed == ec_generic);
    if (ec_closed != errc::ok) continue;
    ++kept;
    CHECK(close_abs_rel(closed.probability, generic.probability, 1e-12));
    CHECK(close_abs_rel(closed.dp, generic.dp, 1e-12));
    CHECK(close_abs_rel(closed.dq, generic.dq, 1e-12));
    CHECK(close_abs_rel(closed.sd_p, generic.sd_p, 1e-12));
    CHECK(close_abs_rel(closed.sd_q, generic.sd_q, 1e-12));
  }
}

TEST_CASE("orthogonal preselection point") {
  // theta = pi/2, phi = pi aims the beam exactly opposite the postselection;
  // only the finite-coupling decoherence factor keeps the probability alive.
  const readout r = sg_readout({0.5 * kPi, kPi, 1.0, 0.5});
  CHECK(r.probability == rel(0.5 * -std::expm1(-0.5), 1e-14));
  CHECK(std::abs(r.dp) <= 1e-13);
  CHECK(std::abs(r.dq) <= 1e-13);
  const double k = -std::expm1(-0.5);
  CHECK(r.sd_p == rel(std::sqrt(0.25 + 0.25 / k), 1e-13));
}

TEST_CASE("sphere maxima: frozen values and attaining preselections") {
  const double g = 0.01;
  const double e = std::exp(-2.0 * g * g); // Delta = 1
  const sg_max mp = momentum_max(1.0, g);
  const sg_max mz = position_max(1.0, g);

  CHECK(mp.dp_max == rel(0.50005000083325002, 1e-13));
  CHECK(mp.theta_opt == rel(88.854122606542731 * kPi / 180.0, 1e-13));
  CHECK(std::sin(mp.theta_opt) == rel(e, 1e-14));
  CHECK(mp.phi_opt == kPi);
  CHECK(mp.p_max == rel(0.5 * -std::expm1(-4.0 * g * g), 1e-14));

  CHECK(mz.dz_max == rel(0.99990000166683346, 1e-13));
  CHECK(mz.theta_opt == rel(0.5 * kPi, 1e-15));
  CHECK(mz.phi_opt == rel(kPi - std::acos(e), 1e-13));
  CHECK(mz.p_max == rel(mp.p_max, 1e-15));

  // Running the readout at the reported optima reproduces the maxima and the
  // shared probability.
  const readout at_p = sg_readout({mp.theta_opt, mp.phi_opt, 1.0, g});
  CHECK(at_p.dp == rel(mp.dp_max));
  CHECK(at_p.probability == rel(mp.p_max));

  const readout at_z = sg_readout({mz.theta_opt, mz.phi_opt, 1.0, g});
  CHECK(at_z.dq == rel(mz.dz_max));
  CHECK(at_z.probability == rel(mz.p_max));
}

TEST_CASE("probability cost times squared shift gain is pinned") {
  // p_max * dp_max^2 = g^2 / 2 for every coupling and pointer width.
  for (double g : {0.005, 0.01, 0.1, 1.0, 3.0}) {
    const sg_max m1 = momentum_max(1.0, g);
    CHECK(m1.p_max * m1.dp_max * m1.dp_max == rel(0.5 * g * g, 1e-13));
    const sg_max m2 = momentum_max(1.7, g);
    CHECK(m2.p_max * m2.dp_max * m2.dp_max == rel(0.5 * g * g, 1e-13));
  }
}

TEST_CASE("sphere maxima match the two-level extremes") {
  // The beam maxima over preselections attain the full pre+post extremes of
  // the (+1, -1) observable.
  const ppsm::gaussian_pointer pointer = make_pointer(1.0);
  for (double g : {0.01, 0.3, 2.0}) {
    const sg_max mp = momentum_max(1.0, g);
    const sg_max mz = position_max(1.0, g);
    const auto qp = ppsm::qubit::momentum_shift_extremes(1.0, -1.0, pointer, g);
    const auto qz = ppsm::qubit::position_shift_extremes(1.0, -1.0, pointer, g);
    CHECK(mp.dp_max == rel(qp.dp_max, 1e-13));
    CHECK(mz.dz_max == rel(qz.dq_max, 1e-13));
  }
}

TEST_CASE("weak-coupling saturation of the shift ceiling") {
  // 2 Delta dp_max lands in [1, 1 + 3 (g Delta)^2] as g Delta -> 0, and the
  // probability approaches 2 Delta^2 g^2 from below.
  for (double delta : {1.0, 2.0}) {
    for (double gd : {0.002, 0.005, 0.01, 0.02, 0.05}) {
      const double g = gd / delta;
      const sg_max m = momentum_max(delta, g);
      const double scaled = m.dp_max * 2.0 * delta;
      CHECK(scaled >= 1.0);
      CHECK(scaled <= 1.0 + 3.0 * gd * gd);
    }
    for (double gd : {0.002, 0.005, 0.01}) {
      const double g = gd / delta;
      const sg_max m = momentum_max(delta, g);
      const double ratio = m.p_max / (2.0 * delta * delta * g * g);
      CHECK(ratio >= 0.99);
      CHECK(ratio <= 1.0 + 1e-15);
    }
  }
}

TEST_CASE("strong coupling pins the shift to the spectrum edge") {
  const sg_max m10 = momentum_max(1.0, 10.0);
  CHECK(m10.dp_max / 10.0 >= 1.0);
  CHECK(m10.dp_max / 10.0 <= 1.0 + 1e-12);
  const sg_max z10 = position_max(1.0, 10.0);
  CHECK(z10.dz_max < 1e-12);

  // The decoherence factor underflows: the ceiling is exact.
  const sg_max m100 = momentum_max(1.0, 100.0);
  CHECK(m100.dp_max == 100.0);
}

TEST_CASE("zero coupling is a plain Gaussian except at the orthogonal corner") {
  CHECK(thrown_code([] { sg_readout({0.5 * kPi, kPi, 1.0, 0.0}); }) ==
        errc::vanishing_postselection);

  const readout r = sg_readout({0.3, 1.0, 1.0, 0.0});
  CHECK(r.dp == 0.0);
  CHECK(r.dq == 0.0);
  CHECK(r.sd_p == rel(0.5, 1e-15));
  CHECK(r.sd_q == rel(1.0, 1e-15));
  CHECK(r.probability == rel(0.5 * (1.0 + std::sin(0.3) * std::cos(1.0)), 1e-15));
}

TEST_CASE("argument validation") {
  CHECK(thrown_code([] { sg_readout({-0.1, 0.0, 1.0, 0.01}); }) ==
        errc::invalid_argument);
  CHECK(thrown_code([] { sg_readout({0.5, 7.0, 1.0, 0.01}); }) ==
        errc::invalid_argument);
  CHECK(thrown_code([] { sg_readout({0.5, 0.0, 0.0, 0.01}); }) ==
        errc::invalid_argument);
  CHECK(thrown_code([] { sg_readout({0.5, 0.0, -1.0, 0.01}); }) ==
        errc::invalid_argument);
  CHECK(thrown_code([] { sg_readout({0.5, 0.0, 1.0, -0.1}); }) ==
        errc::invalid_argument);
  CHECK(thrown_code([] { sg_readout({0.5, 0.0, 1.0, std::nan("")}); }) ==
        errc::invalid_argument);

  // The sphere maxima need strictly positive coupling.
  CHECK(thrown_code([] { momentum_max(1.0, 0.0); }) == errc::invalid_argument);
  CHECK(thrown_code([] { position_max(1.0, 0.0); }) == errc::invalid_argument);
  CHECK(thrown_code([] { momentum_max(0.0, 0.01); }) == errc::invalid_argument);
}
