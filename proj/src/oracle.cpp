#include "ppsm/oracle.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "ppsm/kahan.hpp"

namespace ppsm::oracle {

namespace {

// FFTW planning is not thread-safe (execution is).
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct sampled_state {
  std::vector<double> q;       // nodes, size N (odd)
  std::vector<cplx> psi;       // Phi'(q_j)
  std::vector<cplx> dpsi;      // d_q Phi'(q_j), spectral
  double dq = 0.0;
  double momentum_norm = 0.0;  // sum_k |c_k|^2 dq / M (Parseval partner)
};

void validate_grid(const grid_spec& grid) {
  if (!(grid.half_width_sigmas >= 8.0) || !std::isfinite(grid.half_width_sigmas))
    fail(errc::invalid_argument, "grid half width must be at least 8 pointer widths");
  if (grid.points < 1025 || grid.points % 2 == 0)
    fail(errc::invalid_argument, "grid needs an odd number of points, at least 1025");
}

sampled_state sample(const observable& obs, const pps_pair& pps,
                     gaussian_pointer pointer, double g, const grid_spec& grid) {
  if (obs.dim() != pps.dim())
    fail(errc::invalid_argument, "observable and state dimensions differ");
  if (!std::isfinite(g)) fail(errc::invalid_argument, "coupling g must be finite");
  validate_grid(grid);

  const double delta = pointer.delta;
  const double half = grid.half_width_sigmas * delta;
  const long n = grid.points;

  double amax = 0.0;
  for (double a : obs.a) amax = std::max(amax, std::abs(a));
  // Keep the e^{i g a q} oscillation below a quarter of the grid Nyquist rate.
  const double nyquist_budget =
      0.25 * std::numbers::pi * static_cast<double>(n) / (2.0 * grid.half_width_sigmas * delta);
  if (std::abs(g) * amax >= nyquist_budget)
    fail(errc::grid_too_coarse, "grid cannot resolve the coupling phase oscillation");

  sampled_state st;
  st.dq = 2.0 * half / static_cast<double>(n - 1);
  st.q.resize(static_cast<size_t>(n));
  st.psi.resize(static_cast<size_t>(n));
  const std::vector<cplx> gam = gamma_weights(pps);
  const double amp = std::pow(2.0 * std::numbers::pi * delta * delta, -0.25);
  for (long j = 0; j < n; ++j) {
    const double q = -half + st.dq * static_cast<double>(j);
    st.q[static_cast<size_t>(j)] = q;
    const double envelope = amp * std::exp(-q * q / (4.0 * delta * delta));
    kahan_csum v;
    for (size_t m = 0; m < obs.dim(); ++m)
      v.add(gam[m] * std::polar(envelope, g * obs.a[m] * q));
    st.psi[static_cast<size_t>(j)] = v.value();
  }

  // Spectral derivative on the periodic M = n-1 subgrid (the last node
  // repeats the first; the wavefunction is ~0 at both).
  const long m = n - 1;
  std::vector<cplx> work(st.psi.begin(), st.psi.begin() + m);
  {
    std::unique_lock lock(plan_mutex());
    fftw_plan fwd = fftw_plan_dft_1d(static_cast<int>(m),
                                     reinterpret_cast<fftw_complex*>(work.data()),
                                     reinterpret_cast<fftw_complex*>(work.data()),
                                     FFTW_FORWARD, FFTW_ESTIMATE);
    lock.unlock();
    fftw_execute(fwd);
    lock.lock();
    fftw_destroy_plan(fwd);
  }

  kahan_sum pnorm;
  for (const cplx& c : work) pnorm.add(std::norm(c));
  st.momentum_norm = pnorm.value() * st.dq / static_cast<double>(m);

  const double dk = 2.0 * std::numbers::pi / (st.dq * static_cast<double>(m));
  for (long j = 0; j < m; ++j) {
    long jj = (2 * j < m) ? j : j - m;
    if (2 * j == m) jj = 0; // drop the unmatched Nyquist mode
    work[static_cast<size_t>(j)] *= cplx(0.0, dk * static_cast<double>(jj));
  }
  {
    std::unique_lock lock(plan_mutex());
    fftw_plan bwd = fftw_plan_dft_1d(static_cast<int>(m),
                                     reinterpret_cast<fftw_complex*>(work.data()),
                                     reinterpret_cast<fftw_complex*>(work.data()),
                                     FFTW_BACKWARD, FFTW_ESTIMATE);
    lock.unlock();
    fftw_execute(bwd);
    lock.lock();
    fftw_destroy_plan(bwd);
  }
  st.dpsi.resize(static_cast<size_t>(n));
  for (long j = 0; j < m; ++j)
    st.dpsi[static_cast<size_t>(j)] = work[static_cast<size_t>(j)] / static_cast<double>(m);
  st.dpsi[static_cast<size_t>(m)] = st.dpsi[0];
  return st;
}

double trapezoid(const sampled_state& st, auto&& integrand) {
  kahan_sum s;
  const size_t n = st.psi.size();
  for (size_t j = 0; j < n; ++j) {
    const double w = (j == 0 || j == n - 1) ? 0.5 * st.dq : st.dq;
    s.add(w * integrand(j));
  }
  return s.value();
}

} // namespace

readout oracle_readout(const observable& obs, const pps_pair& pps,
                       gaussian_pointer pointer, double g, grid_spec grid) {
  const sampled_state st = sample(obs, pps, pointer, g, grid);

  const double prob = trapezoid(st, [&](size_t j) { return std::norm(st.psi[j]); });
  if (!std::isfinite(prob)) fail(errc::numerical_failure, "probability integral is not finite");
  if (prob <= eps_probability)
    fail(errc::vanishing_postselection, "postselection probability vanishes");

  readout r;
  r.probability = std::min(prob, 1.0);
  r.dq = trapezoid(st, [&](size_t j) { return st.q[j] * std::norm(st.psi[j]); }) / prob;
  const double q2 = trapezoid(st, [&](size_t j) { return st.q[j] * st.q[j] * std::norm(st.psi[j]); }) / prob;
  r.dp = trapezoid(st, [&](size_t j) { return (std::conj(st.psi[j]) * st.dpsi[j]).imag(); }) / prob;
  const double p2 = trapezoid(st, [&](size_t j) { return std::norm(st.dpsi[j]); }) / prob;

  const double var_p = p2 - r.dp * r.dp;
  const double var_q = q2 - r.dq * r.dq;
  if (!std::isfinite(var_p) || !std::isfinite(var_q) || var_p < -realness_tol || var_q < -realness_tol)
    fail(errc::numerical_failure, "pointer variance integral failed");
  r.sd_p = std::sqrt(std::max(var_p, 0.0));
  r.sd_q = std::sqrt(std::max(var_q, 0.0));
  return r;
}

g_derivative oracle_g_derivative(const observable& obs, const pps_pair& pps,
                                 gaussian_pointer pointer, double g,
                                 grid_spec grid) {
  if (!std::isfinite(g) || g < 0.0)
    fail(errc::invalid_argument, "derivative requires finite g >= 0");
  auto shifts = [&](double gg) {
    const readout r = oracle_readout(obs, pps, pointer, gg, grid);
    return std::pair{r.dp, r.dq};
  };
  if (g == 0.0) {
    const double h = 1e-6;
    const auto [p0, q0] = shifts(0.0);
    const auto [p1, q1] = shifts(h);
    return {(p1 - p0) / h, (q1 - q0) / h};
  }
  const double h = std::max(1e-6, 1e-4 * g);
  auto central = [&](double hh) {
    const auto [pp, qp] = shifts(g + hh);
    const auto [pm, qm] = shifts(g - hh);
    return std::pair{(pp - pm) / (2.0 * hh), (qp - qm) / (2.0 * hh)};
  };
  const auto [cp, cq] = central(h);
  const auto [fp, fq] = central(0.5 * h);
  return {(4.0 * fp - cp) / 3.0, (4.0 * fq - cq) / 3.0};
}

double parseval_residual(const observable& obs, const pps_pair& pps,
                         gaussian_pointer pointer, double g, grid_spec grid) {
  const sampled_state st = sample(obs, pps, pointer, g, grid);
  const double pos = trapezoid(st, [&](size_t j) { return std::norm(st.psi[j]); });
  if (pos <= 0.0) fail(errc::vanishing_postselection, "postselection probability vanishes");
  return std::abs(pos - st.momentum_norm) / pos;
}

} // namespace ppsm::oracle
