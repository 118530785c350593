// Brute-force grid integration: agreement with the analytic double sums,
// grid admission checks, Parseval consistency, and coupling derivatives.
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "ppsm/core_pps.hpp"
#include "ppsm/oracle.hpp"
#include "ppsm/qubit.hpp"
#include "ppsm/types.hpp"

using ppsm::cplx;
using ppsm::errc;
using ppsm::gaussian_pointer;
using ppsm::make_observable;
using ppsm::make_pointer;
using ppsm::make_pps;
using ppsm::observable;
using ppsm::pps_pair;
using ppsm::readout;
using ppsm::oracle::grid_spec;

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;
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

pps_pair quarterphase() {
  return make_pps({cplx(kSqrtHalf, 0.0), cplx(0.0, kSqrtHalf)},
                  {cplx(kSqrtHalf, 0.0), cplx(kSqrtHalf, 0.0)});
}

double field_err(double oracle, double analytic) {
  return std::abs(oracle - analytic) / std::max(1.0, std::abs(analytic));
}

double worst_field_err(const readout& a, const readout& b) {
  return std::max({field_err(a.probability, b.probability),
                   field_err(a.dp, b.dp), field_err(a.dq, b.dq),
                   field_err(a.sd_p, b.sd_p), field_err(a.sd_q, b.sd_q)});
}

std::vector<cplx> random_unit_state(std::mt19937_64& rng, size_t dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> v(dim);
  double norm2 = 0.0;
  for (auto& z : v) {
    z = cplx(gauss(rng), gauss(rng));
    norm2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : v) z *= inv;
  return v;
}

} // namespace

TEST_CASE("zero coupling reproduces the undisturbed pointer") {
  const observable obs = make_observable({1.0, -1.0});
  const gaussian_pointer pointer = make_pointer(1.0);
  const readout r = ppsm::oracle::oracle_readout(obs, quarterphase(), pointer, 0.0);
  CHECK(r.probability == rel(0.5, 1e-13)); // |sum gamma|^2
  CHECK(std::abs(r.dp) <= 1e-12);
  CHECK(std::abs(r.dq) <= 1e-12);
  CHECK(r.sd_p == rel(0.5));
  CHECK(r.sd_q == rel(1.0));
}

TEST_CASE("an eigenstate phase ramp shifts the momentum by exactly g") {
  const observable obs = make_observable({1.0, -1.0});
  const pps_pair pps = make_pps({cplx(1.0, 0.0), cplx(0.0, 0.0)},
                                {cplx(1.0, 0.0), cplx(0.0, 0.0)});
  const readout r =
      ppsm::oracle::oracle_readout(obs, pps, make_pointer(1.0), 0.3);
  CHECK(r.probability == rel(1.0, 1e-13));
  CHECK(r.dp == rel(0.3));
  CHECK(std::abs(r.dq) <= 1e-12);
  CHECK(r.sd_p == rel(0.5));
  CHECK(r.sd_q == rel(1.0));
}

TEST_CASE("grid integration matches the closed forms at reference points") {
  const observable obs = make_observable({1.0, -1.0});
  const gaussian_pointer pointer = make_pointer(1.0);

  SUBCASE("quarter-phase pair at g = 0.01") {
    const double g = 0.01, e = std::exp(-2.0 * g * g);
    const readout r = ppsm::oracle::oracle_readout(obs, quarterphase(), pointer, g);
    CHECK(r.probability == rel(0.5, 1e-13));
    CHECK(std::abs(r.dp) <= 1e-13);
    CHECK(r.dq == rel(0.02 * e));
    CHECK(r.sd_p == rel(std::sqrt(0.25 + g * g)));
    CHECK(r.sd_q == rel(std::sqrt(1.0 - 0.02 * e * 0.02 * e)));
  }

  SUBCASE("orthogonal pair at g = 0.5") {
    const pps_pair pps = make_pps({cplx(kSqrtHalf, 0.0), cplx(kSqrtHalf, 0.0)},
                                  {cplx(kSqrtHalf, 0.0), cplx(-kSqrtHalf, 0.0)});
    const double g = 0.5, e = std::exp(-0.5);
    const double prob = 0.5 * -std::expm1(-0.5);
    const readout r = ppsm::oracle::oracle_readout(obs, pps, pointer, g);
    CHECK(r.probability == rel(prob));
    CHECK(std::abs(r.dp) <= 1e-13);
    CHECK(std::abs(r.dq) <= 1e-13);
    CHECK(r.sd_p == rel(std::sqrt(0.25 + g * g * 0.5 / prob)));
    CHECK(r.sd_q == rel(std::sqrt(1.0 + 2.0 * g * g * e / prob)));
  }

  SUBCASE("degenerate three-level spectrum at strong coupling") {
    const observable obs3 = make_observable({1.0, 1.0, -1.0});
    const pps_pair pps = make_pps(
        {cplx(kSqrtHalf, 0.0), cplx(0.5, 0.0), cplx(0.5, 0.0)},
        {cplx(kSqrtHalf, 0.0), cplx(-0.5, 0.0), cplx(0.5, 0.0)});
    const readout brute = ppsm::oracle::oracle_readout(obs3, pps, pointer, 2.0);
    const readout exact = ppsm::postselect_readout(obs3, pps, pointer, 2.0);
    CHECK(worst_field_err(brute, exact) <= 1e-11);
  }
}

TEST_CASE("grid and analytic routes agree on random systems") {
  std::mt19937_64 rng(1618033988);
  std::uniform_int_distribution<int> dim_dist(2, 4);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const gaussian_pointer pointer = make_pointer(1.0);

  int kept = 0;
  while (kept < 20) {
    const size_t dim = static_cast<size_t>(dim_dist(rng));
    std::vector<double> a(dim);
    for (auto& v : a) v = 2.0 * uni(rng) - 1.0;
    a[0] = 1.0;
    const observable obs = make_observable(a);
    const pps_pair pps =
        make_pps(random_unit_state(rng, dim), random_unit_state(rng, dim));
    const double g = std::exp(std::log(1e-3) +
                              (std::log(5.0) - std::log(1e-3)) * uni(rng));

    readout exact;
    try {
      exact = ppsm::postselect_readout(obs, pps, pointer, g);
    } catch (const ppsm::error&) {
      continue;
    }
    if (exact.probability < 1e-4) continue; // keep the quadrature comparison conditioned
    ++kept;
    const readout brute = ppsm::oracle::oracle_readout(obs, pps, pointer, g);
    CHECK(worst_field_err(brute, exact) <= 1e-10);
  }
}

TEST_CASE("a coarse admissible grid still resolves small couplings") {
  const observable obs = make_observable({1.0, -1.0});
  const gaussian_pointer pointer = make_pointer(1.0);
  const grid_spec coarse{8.0, 1025};
  const readout brute =
      ppsm::oracle::oracle_readout(obs, quarterphase(), pointer, 0.01, coarse);
  const readout exact =
      ppsm::postselect_readout(obs, quarterphase(), pointer, 0.01);
  CHECK(worst_field_err(brute, exact) <= 5e-13);
}

TEST_CASE("under-resolved phase oscillations are rejected, not mangled") {
  const observable obs = make_observable({1.0, -1.0});
  const pps_pair pps = make_pps({cplx(1.0, 0.0), cplx(0.0, 0.0)},
                                {cplx(1.0, 0.0), cplx(0.0, 0.0)});
  const gaussian_pointer pointer = make_pointer(1.0);
  const grid_spec coarse{8.0, 1025};

  // Admission threshold for this grid: |g| a_max < pi/4 * 1025 / 16 ~= 50.3.
  CHECK(thrown_code([&] {
          ppsm::oracle::oracle_readout(obs, pps, pointer, 100.0, coarse);
        }) == errc::grid_too_coarse);

  const readout ok = ppsm::oracle::oracle_readout(obs, pps, pointer, 40.0, coarse);
  CHECK(ok.dp == rel(40.0, 1e-10));

  // The default grid admits the same coupling comfortably.
  const readout fine = ppsm::oracle::oracle_readout(obs, pps, pointer, 100.0);
  CHECK(fine.dp == rel(100.0, 1e-10));

  CHECK(thrown_code([&] {
          ppsm::oracle::oracle_readout(obs, pps, pointer, 1.0, grid_spec{8.0, 1024});
        }) == errc::invalid_argument);
  CHECK(thrown_code([&] {
          ppsm::oracle::oracle_readout(obs, pps, pointer, 1.0, grid_spec{8.0, 513});
        }) == errc::invalid_argument);
  CHECK(thrown_code([&] {
          ppsm::oracle::oracle_readout(obs, pps, pointer, 1.0, grid_spec{4.0, 2049});
        }) == errc::invalid_argument);
}

TEST_CASE("position and momentum norms agree (Parseval)") {
  const observable obs = make_observable({1.0, -1.0});
  const gaussian_pointer pointer = make_pointer(1.0);
  CHECK(ppsm::oracle::parseval_residual(obs, quarterphase(), pointer, 0.5) <= 1e-12);
  const pps_pair pps = make_pps({cplx(kSqrtHalf, 0.0), cplx(kSqrtHalf, 0.0)},
                                {cplx(kSqrtHalf, 0.0), cplx(-kSqrtHalf, 0.0)});
  CHECK(ppsm::oracle::parseval_residual(obs, pps, pointer, 2.0) <= 1e-12);
}

TEST_CASE("numerical coupling derivatives match the closed-form ones") {
  // Spin-1/2 beam geometry: preselection (0.9, 2.2), postselection
  // (|0> + |1>)/sqrt(2), spectrum (+1, -1).
  const observable obs = make_observable({1.0, -1.0});
  const pps_pair pps = ppsm::qubit::to_pps(ppsm::qubit::make_angles(0.9, 2.2),
                                           ppsm::qubit::make_angles(0.5 * kPi, 0.0));
  const gaussian_pointer pointer = make_pointer(1.0);
  const double g = 0.01;

  // d(dp)/dg = (dp/g) (1 + 4 D^2 g^2 - 4 D^2 g^2 / K) and
  // d(dq)/dg = (dq/g) (1 - 4 D^2 g^2 / K) with K = 1 + sin(th) cos(phi) E.
  const readout r = ppsm::postselect_readout(obs, pps, pointer, g);
  const double y = g * g;
  const double k = 1.0 + std::sin(0.9) * std::cos(2.2) * std::exp(-2.0 * y);
  const double dp_dg = (r.dp / g) * (1.0 + 4.0 * y - 4.0 * y / k);
  const double dq_dg = (r.dq / g) * (1.0 - 4.0 * y / k);

  const ppsm::oracle::g_derivative d =
      ppsm::oracle::oracle_g_derivative(obs, pps, pointer, g);
  CHECK(std::abs(d.dp_dg - dp_dg) <= 1e-6 * std::max(1.0, std::abs(dp_dg)));
  CHECK(std::abs(d.dq_dg - dq_dg) <= 1e-6 * std::max(1.0, std::abs(dq_dg)));

  SUBCASE("forward difference at g = 0 recovers the first-order slopes") {
    const cplx aw = ppsm::weak_value(obs, pps);
    const ppsm::oracle::g_derivative d0 =
        ppsm::oracle::oracle_g_derivative(obs, pps, pointer, 0.0);
    CHECK(std::abs(d0.dp_dg - aw.real()) <= 1e-4);
    CHECK(std::abs(d0.dq_dg + 2.0 * aw.imag()) <= 1e-4);
  }

  SUBCASE("negative couplings are refused") {
    CHECK(thrown_code([&] {
            ppsm::oracle::oracle_g_derivative(obs, pps, pointer, -0.01);
          }) == errc::invalid_argument);
  }
}
