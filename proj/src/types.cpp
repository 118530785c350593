#include "ppsm/types.hpp"

#include <algorithm>
#include <cmath>

#include "ppsm/kahan.hpp"

namespace ppsm {

const char* errc_name(errc c) {
  switch (c) {
    case errc::ok: return "Ok";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::degenerate_observable: return "DegenerateObservable";
    case errc::vanishing_postselection: return "VanishingPostselection";
    case errc::orthogonal_pps: return "OrthogonalPPS";
    case errc::numerical_failure: return "NumericalFailure";
    case errc::grid_too_coarse: return "GridTooCoarse";
    case errc::out_of_regime: return "OutOfRegime";
    case errc::insensitive_pointer: return "InsensitivePointer";
    case errc::degenerate_spread: return "DegenerateSpread";
    case errc::no_convergence: return "NoConvergence";
  }
  return "Unknown";
}

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

bool all_finite(const std::vector<cplx>& v) {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double norm2(const std::vector<cplx>& v) {
  kahan_sum s;
  for (const cplx& z : v) s.add(std::norm(z));
  return s.value();
}

} // namespace

observable make_observable(std::vector<double> a) {
  if (a.size() < 2) fail(errc::invalid_argument, "observable needs at least two eigenvalues");
  if (!all_finite(a)) fail(errc::invalid_argument, "observable eigenvalues must be finite");
  if (std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; }))
    fail(errc::degenerate_observable, "observable must have a nonzero eigenvalue");
  return observable{std::move(a)};
}

pps_pair make_pps(std::vector<cplx> alpha, std::vector<cplx> beta) {
  if (alpha.empty() || alpha.size() != beta.size())
    fail(errc::invalid_argument, "pre/postselection amplitude lists must have equal nonzero length");
  if (!all_finite(alpha) || !all_finite(beta))
    fail(errc::invalid_argument, "pre/postselection amplitudes must be finite");
  if (std::abs(norm2(alpha) - 1.0) > realness_tol)
    fail(errc::invalid_argument, "preselected state is not unit norm");
  if (std::abs(norm2(beta) - 1.0) > realness_tol)
    fail(errc::invalid_argument, "postselected state is not unit norm");
  return pps_pair{std::move(alpha), std::move(beta)};
}

gaussian_pointer make_pointer(double delta) {
  if (!std::isfinite(delta) || delta <= 0.0)
    fail(errc::invalid_argument, "pointer width delta must be finite and positive");
  return gaussian_pointer{delta};
}

normalized_observable normalize_observable(std::vector<double> raw, double g) {
  if (raw.empty()) fail(errc::invalid_argument, "spectrum is empty");
  if (!all_finite(raw) || !std::isfinite(g))
    fail(errc::invalid_argument, "spectrum and coupling must be finite");
  double scale = 0.0;
  for (double x : raw) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) fail(errc::degenerate_observable, "spectrum is identically zero");
  for (double& x : raw) x /= scale;
  return normalized_observable{std::move(raw), g * scale};
}

std::vector<cplx> gamma_weights(const pps_pair& pps) {
  std::vector<cplx> g(pps.dim());
  for (size_t m = 0; m < pps.dim(); ++m) g[m] = pps.alpha[m] * std::conj(pps.beta[m]);
  return g;
}

} // namespace ppsm
