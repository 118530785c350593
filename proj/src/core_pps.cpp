#include "ppsm/core_pps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppsm/kahan.hpp"

namespace ppsm {

namespace {

void check_dims(const observable& obs, const pps_pair& pps) {
  if (obs.dim() != pps.dim())
    fail(errc::invalid_argument, "observable and state dimensions differ");
}

// Imaginary residue allowed on a nominally real sum.
double real_part(cplx z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    fail(errc::numerical_failure, std::string(what) + " is not finite");
  if (std::abs(z.imag()) > realness_tol * std::max(1.0, std::abs(z.real())))
    fail(errc::numerical_failure, std::string(what) + " has a non-real residue");
  return z.real();
}

double checked_variance(double second_moment, double mean, const char* what) {
  double var = second_moment - mean * mean;
  if (!std::isfinite(var)) fail(errc::numerical_failure, std::string(what) + " variance is not finite");
  if (var < 0.0) {
    if (var < -realness_tol) fail(errc::numerical_failure, std::string(what) + " variance is negative");
    var = 0.0;
  }
  return var;
}

} // namespace

moment_sums pps_moment_sums(const observable& obs, const pps_pair& pps,
                            gaussian_pointer pointer, double g) {
  check_dims(obs, pps);
  const size_t d = obs.dim();
  const double dd = pointer.delta * pointer.delta;
  const std::vector<cplx> gam = gamma_weights(pps);

  kahan_csum norm, p1, q1, p2, q2;
  for (size_t m = 0; m < d; ++m) {
    for (size_t n = 0; n < d; ++n) {
      const double diff = obs.a[m] - obs.a[n];
      const double sum = obs.a[m] + obs.a[n];
      const cplx w = gam[m] * std::conj(gam[n]) * std::exp(-0.5 * dd * g * g * diff * diff);
      norm.add(w);
      p1.add(0.5 * g * sum * w);
      q1.add(cplx(0.0, 1.0) * g * dd * diff * w);
      p2.add(0.25 * g * g * sum * sum * w);
      q2.add(-g * g * dd * dd * diff * diff * w);
    }
  }
  return {norm.value(), p1.value(), q1.value(), p2.value(), q2.value()};
}

readout postselect_readout(const observable& obs, const pps_pair& pps,
                           gaussian_pointer pointer, double g) {
  if (!std::isfinite(g)) fail(errc::invalid_argument, "coupling g must be finite");
  if (g < 0.0) {
    observable flipped = obs;
    for (double& x : flipped.a) x = -x;
    return postselect_readout(flipped, pps, pointer, -g);
  }

  const moment_sums s = pps_moment_sums(obs, pps, pointer, g);
  double prob = real_part(s.norm, "postselection probability");
  if (prob <= eps_probability)
    fail(errc::vanishing_postselection, "postselection probability vanishes");
  if (prob > 1.0) {
    if (prob > 1.0 + realness_tol)
      fail(errc::numerical_failure, "postselection probability exceeds 1");
    prob = 1.0;
  }

  const double dd = pointer.delta * pointer.delta;
  readout r;
  r.probability = prob;
  r.dp = real_part(s.p1, "momentum shift") / prob;
  r.dq = real_part(s.q1, "position shift") / prob;
  const double p2 = real_part(s.p2, "momentum second moment") / prob + 0.25 / dd;
  const double q2 = real_part(s.q2, "position second moment") / prob + dd;
  r.sd_p = std::sqrt(checked_variance(p2, r.dp, "momentum"));
  r.sd_q = std::sqrt(checked_variance(q2, r.dq, "position"));
  if (r.sd_p <= 0.0) fail(errc::numerical_failure, "momentum spread collapsed to zero");
  return r;
}

cplx weak_value(const observable& obs, const pps_pair& pps) {
  check_dims(obs, pps);
  const std::vector<cplx> gam = gamma_weights(pps);
  kahan_csum overlap, first;
  for (size_t m = 0; m < obs.dim(); ++m) {
    overlap.add(gam[m]);
    first.add(gam[m] * obs.a[m]);
  }
  if (std::abs(overlap.value()) <= eps_probability)
    fail(errc::orthogonal_pps, "pre- and postselected states are orthogonal");
  return first.value() / overlap.value();
}

weak_shifts weak_limit_readout(const observable& obs, const pps_pair& pps,
                               gaussian_pointer pointer, double g) {
  if (!std::isfinite(g)) fail(errc::invalid_argument, "coupling g must be finite");
  const cplx aw = weak_value(obs, pps);
  return {g * aw.real(), -2.0 * g * pointer.delta * pointer.delta * aw.imag()};
}

std::vector<double> weak_validity_margins(const observable& obs,
                                          const pps_pair& pps,
                                          gaussian_pointer pointer, double g,
                                          int n_max) {
  check_dims(obs, pps);
  if (!std::isfinite(g)) fail(errc::invalid_argument, "coupling g must be finite");
  if (n_max < 2) fail(errc::invalid_argument, "n_max must be at least 2");

  const std::vector<cplx> gam = gamma_weights(pps);
  kahan_csum overlap;
  for (const cplx& gm : gam) overlap.add(gm);
  const double denom = std::abs(overlap.value());
  if (denom <= eps_probability)
    fail(errc::orthogonal_pps, "pre- and postselected states are orthogonal");

  // Expansion scale g*q evaluated at the pointer width q = delta; a_m^n
  // built incrementally.
  const double gd = std::abs(g) * pointer.delta;
  std::vector<double> margins(static_cast<size_t>(n_max) - 1, 0.0);
  std::vector<double> an(obs.a);
  double scale = gd;
  for (int n = 2; n <= n_max; ++n) {
    scale *= gd;
    kahan_csum moment;
    for (size_t m = 0; m < obs.dim(); ++m) {
      an[m] *= obs.a[m];
      moment.add(gam[m] * an[m]);
    }
    margins[static_cast<size_t>(n) - 2] = scale * std::abs(moment.value()) / denom;
  }
  return margins;
}

double strong_limit_shift(const observable& obs, const pps_pair& pps, double g) {
  check_dims(obs, pps);
  if (!std::isfinite(g)) fail(errc::invalid_argument, "coupling g must be finite");

  const std::vector<cplx> gam = gamma_weights(pps);
  std::vector<size_t> order(obs.dim());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t i, size_t j) { return obs.a[i] < obs.a[j]; });

  kahan_sum num, den;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    kahan_csum cls;
    while (j < order.size() && obs.a[order[j]] - obs.a[order[i]] <= degeneracy_tol) {
      cls.add(gam[order[j]]);
      ++j;
    }
    const double w = std::norm(cls.value());
    num.add(w * obs.a[order[i]]);
    den.add(w);
    i = j;
  }
  if (den.value() <= eps_probability)
    fail(errc::vanishing_postselection, "postselection probability vanishes in the strong limit");
  return g * num.value() / den.value();
}

double no_postselect_shift(const observable& obs, const std::vector<cplx>& alpha,
                           double g) {
  if (obs.dim() != alpha.size())
    fail(errc::invalid_argument, "observable and state dimensions differ");
  if (!std::isfinite(g)) fail(errc::invalid_argument, "coupling g must be finite");
  kahan_sum norm, mean;
  for (size_t m = 0; m < obs.dim(); ++m) {
    const double w = std::norm(alpha[m]);
    norm.add(w);
    mean.add(w * obs.a[m]);
  }
  if (std::abs(norm.value() - 1.0) > realness_tol)
    fail(errc::invalid_argument, "preselected state is not unit norm");
  return g * mean.value();
}

} // namespace ppsm
