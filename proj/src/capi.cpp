#include "ppsmeter.h"

#include <exception>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "ppsm/core_pps.hpp"
#include "ppsm/metrics.hpp"
#include "ppsm/oracle.hpp"
#include "ppsm/qubit.hpp"
#include "ppsm/stern_gerlach.hpp"
#include "ppsm/types.hpp"

#if defined(_WIN32)
#define PPSM_EXPORT __declspec(dllexport)
#else
#define PPSM_EXPORT __attribute__((visibility("default")))
#endif

struct ppsm_system {
  ppsm::observable obs;
  ppsm::pps_pair pps;
  ppsm::gaussian_pointer pointer;
};

namespace {

thread_local std::string g_last_error;

ppsm_status to_status(ppsm::errc code) {
  using ppsm::errc;
  switch (code) {
    case errc::ok: return PPSM_OK;
    case errc::invalid_argument: return PPSM_ERROR_INVALID_ARGUMENT;
    case errc::degenerate_observable: return PPSM_ERROR_DEGENERATE_OBSERVABLE;
    case errc::vanishing_postselection: return PPSM_ERROR_VANISHING_POSTSELECTION;
    case errc::orthogonal_pps: return PPSM_ERROR_ORTHOGONAL_PPS;
    case errc::numerical_failure: return PPSM_ERROR_NUMERICAL_FAILURE;
    case errc::grid_too_coarse: return PPSM_ERROR_GRID_TOO_COARSE;
    case errc::out_of_regime: return PPSM_ERROR_OUT_OF_REGIME;
    case errc::insensitive_pointer: return PPSM_ERROR_INSENSITIVE_POINTER;
    case errc::degenerate_spread: return PPSM_ERROR_DEGENERATE_SPREAD;
    case errc::no_convergence: return PPSM_ERROR_NO_CONVERGENCE;
  }
  return PPSM_ERROR_NUMERICAL_FAILURE;
}

template <typename Fn>
ppsm_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return PPSM_OK;
  } catch (const ppsm::error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PPSM_ERROR_NUMERICAL_FAILURE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PPSM_ERROR_NUMERICAL_FAILURE;
  }
}

void require(bool ok, const char* message) {
  if (!ok) ppsm::fail(ppsm::errc::invalid_argument, message);
}

std::vector<ppsm::cplx> unpack(const double* interleaved, size_t dim) {
  std::vector<ppsm::cplx> v(dim);
  for (size_t i = 0; i < dim; ++i)
    v[i] = ppsm::cplx(interleaved[2 * i], interleaved[2 * i + 1]);
  return v;
}

ppsm_readout convert(const ppsm::readout& r) {
  return {r.probability, r.dp, r.dq, r.sd_p, r.sd_q};
}

ppsm::oracle::grid_spec convert_grid(const ppsm_grid_spec* grid) {
  ppsm::oracle::grid_spec out;
  if (grid != nullptr) {
    if (grid->half_width_sigmas != 0.0)
      out.half_width_sigmas = grid->half_width_sigmas;
    if (grid->points != 0) out.points = grid->points;
  }
  return out;
}

const ppsm_system& deref(const ppsm_system* sys) {
  require(sys != nullptr, "system handle is null");
  return *sys;
}

} // namespace

extern "C" {

PPSM_EXPORT const char* ppsm_version(void) { return "0.1.0"; }

PPSM_EXPORT const char* ppsm_status_name(ppsm_status status) {
  if (status < PPSM_OK || status > PPSM_ERROR_NO_CONVERGENCE) return "Unknown";
  return ppsm::errc_name(static_cast<ppsm::errc>(status));
}

PPSM_EXPORT const char* ppsm_last_error_message(void) {
  return g_last_error.c_str();
}

PPSM_EXPORT ppsm_status ppsm_normalize_observable(double* eigenvalues,
                                                  size_t dim, double* g) {
  return guarded([&] {
    require(eigenvalues != nullptr && g != nullptr, "null argument");
    auto norm = ppsm::normalize_observable(
        std::vector<double>(eigenvalues, eigenvalues + dim), *g);
    for (size_t i = 0; i < dim; ++i) eigenvalues[i] = norm.a[i];
    *g = norm.g;
  });
}

PPSM_EXPORT ppsm_status ppsm_system_create(const double* eigenvalues,
                                           size_t dim, const double* alpha,
                                           const double* beta, double delta,
                                           ppsm_system** out) {
  return guarded([&] {
    require(eigenvalues != nullptr && alpha != nullptr && beta != nullptr &&
                out != nullptr,
            "null argument");
    auto obs = ppsm::make_observable(
        std::vector<double>(eigenvalues, eigenvalues + dim));
    auto pps = ppsm::make_pps(unpack(alpha, dim), unpack(beta, dim));
    auto pointer = ppsm::make_pointer(delta);
    *out = new ppsm_system{std::move(obs), std::move(pps), pointer};
  });
}

PPSM_EXPORT ppsm_status ppsm_system_create_qubit(double a1, double a2,
                                                 double theta1, double phi1,
                                                 double theta2, double phi2,
                                                 double delta,
                                                 ppsm_system** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    auto obs = ppsm::make_observable({a1, a2});
    auto pps = ppsm::qubit::to_pps(ppsm::qubit::make_angles(theta1, phi1),
                                   ppsm::qubit::make_angles(theta2, phi2));
    auto pointer = ppsm::make_pointer(delta);
    *out = new ppsm_system{std::move(obs), std::move(pps), pointer};
  });
}

PPSM_EXPORT void ppsm_system_destroy(ppsm_system* sys) { delete sys; }

PPSM_EXPORT size_t ppsm_system_dim(const ppsm_system* sys) {
  return sys == nullptr ? 0 : sys->obs.dim();
}

PPSM_EXPORT ppsm_status ppsm_gamma_weights(const ppsm_system* sys,
                                           double* out) {
  return guarded([&] {
    const ppsm_system& s = deref(sys);
    require(out != nullptr, "null argument");
    auto gamma = ppsm::gamma_weights(s.pps);
    for (size_t i = 0; i < gamma.size(); ++i) {
      out[2 * i] = gamma[i].real();
      out[2 * i + 1] = gamma[i].imag();
    }
  });
}

PPSM_EXPORT ppsm_status ppsm_readout_exact(const ppsm_system* sys, double g,
                                           ppsm_readout* out) {
  return guarded([&] {
    const ppsm_system& s = deref(sys);
    require(out != nullptr, "null argument");
    *out = convert(ppsm::postselect_readout(s.obs, s.pps, s.pointer, g));
  });
}

PPSM_EXPORT ppsm_status ppsm_weak_value(const ppsm_system* sys, double* re,
                                        double* im) {
  return guarded([&] {
    const ppsm_system& s = deref(sys);
    require(re != nullptr && im != nullptr, "null argument");
    const ppsm::cplx w = ppsm::weak_value(s.obs, s.pps);
    *re = w.real();
    *im = w.imag();
  });
}

PPSM_EXPORT ppsm_status ppsm_weak_limit_shifts(const ppsm_system* sys,
                                               double g, double* dp,
                                               double* dq) {
  return guarded([&] {
    const ppsm_system& s = deref(sys);
    require(dp != nullptr && dq != nullptr, "null argument");
    const auto w = ppsm::weak_limit_readout(s.obs, s.pps, s.pointer, g);
    *dp = w.dp;
    *dq = w.dq;
  });
}

PPSM_EXPORT ppsm_status ppsm_weak_validity_margins(const ppsm_system* sys,
                                                   double g, int n_max,
                                                   double* out) {
  return guarded([&] {
    const ppsm_system& s = deref(sys);
    require(out != nullptr, "null argument");
    const auto margins =
        ppsm::weak_validity_margins(s.obs, s.pps, s.pointer, g, n_max);
    for (size_t i = 0; i < margins.size(); ++i) out[i] = margins[i];
  });
}

PPSM_EXPORT ppsm_status ppsm_strong_limit_shift(const ppsm_system* sys,
                                                double g, double* dp) {
  return guarded([&] {
    const ppsm_system& s = deref(sys);
    require(dp != nullptr, "null argument");
    *dp = ppsm::strong_limit_shift(s.obs, s.pps, g);
  });
}

PPSM_EXPORT ppsm_status ppsm_no_postselect_shift(const double* eigenvalues,
                                                 size_t dim,
                                                 const double* alpha, double g,
                                                 double* dp) {
  return guarded([&] {
    require(eigenvalues != nullptr && alpha != nullptr && dp != nullptr,
            "null argument");
    auto obs = ppsm::make_observable(
        std::vector<double>(eigenvalues, eigenvalues + dim));
    *dp = ppsm::no_postselect_shift(obs, unpack(alpha, dim), g);
  });
}

PPSM_EXPORT ppsm_status ppsm_qubit_readout(double a1, double a2, double theta1,
                                           double phi1, double theta2,
                                           double phi2, double delta, double g,
                                           ppsm_readout* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = convert(ppsm::qubit::closed_form_readout(
        a1, a2, ppsm::qubit::make_angles(theta1, phi1),
        ppsm::qubit::make_angles(theta2, phi2), ppsm::make_pointer(delta), g));
  });
}

PPSM_EXPORT ppsm_status ppsm_qubit_shift_extremes(double a1, double a2, double delta,
                                            double g,
                                            ppsm_qubit_extremes* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto pointer = ppsm::make_pointer(delta);
    const auto mom = ppsm::qubit::momentum_shift_extremes(a1, a2, pointer, g);
    const auto pos = ppsm::qubit::position_shift_extremes(a1, a2, pointer, g);
    out->dp_min = mom.dp_min;
    out->dp_max = mom.dp_max;
    out->dq_min = pos.dq_min;
    out->dq_max = pos.dq_max;
    out->t_opt_min = mom.t_opt_min;
    out->t_opt_max = mom.t_opt_max;
    out->phi0_for_p = mom.phi0;
    out->phi0_for_q_min = pos.phi0_min;
    out->phi0_for_q_max = pos.phi0_max;
    out->big_m = mom.m;
    out->big_w = mom.w;
  });
}

PPSM_EXPORT ppsm_status ppsm_sg_readout(double theta, double phi, double delta,
                                        double g, ppsm_readout* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = convert(ppsm::sg::sg_readout({theta, phi, delta, g}));
  });
}

PPSM_EXPORT ppsm_status ppsm_sg_momentum_max(double delta, double g,
                                             ppsm_sg_max* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto m = ppsm::sg::momentum_max(delta, g);
    *out = {m.dp_max, m.dz_max, m.theta_opt, m.phi_opt, m.p_max};
  });
}

PPSM_EXPORT ppsm_status ppsm_sg_position_max(double delta, double g,
                                             ppsm_sg_max* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto m = ppsm::sg::position_max(delta, g);
    *out = {m.dp_max, m.dz_max, m.theta_opt, m.phi_opt, m.p_max};
  });
}

PPSM_EXPORT ppsm_status ppsm_snr_report(const ppsm_system* sys, double g,
                                        long n, ppsm_snr_figures* out) {
  return guarded([&] {
    const ppsm_system& s = deref(sys);
    require(out != nullptr, "null argument");
    const auto r = ppsm::metrics::snr_report(s.obs, s.pps, s.pointer, g, n);
    *out = {r.r0, r.r0_max, r.rp, r.rq, r.ip_1, r.iq_1, r.ip_2, r.iq_2, r.n};
  });
}

PPSM_EXPORT ppsm_status ppsm_sg_snr_improvements(double theta, double phi,
                                                 double delta, double g,
                                                 double out[4]) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto i = ppsm::metrics::sg_snr_improvements({theta, phi, delta, g});
    out[0] = i.ip_1;
    out[1] = i.iz_1;
    out[2] = i.ip_2;
    out[3] = i.iz_2;
  });
}

PPSM_EXPORT ppsm_status ppsm_sg_snr_type2_max(double delta, double g,
                                              double* i_max,
                                              double* theta_star,
                                              double* scan_max) {
  return guarded([&] {
    require(i_max != nullptr && theta_star != nullptr && scan_max != nullptr,
            "null argument");
    const auto m = ppsm::metrics::sg_snr_type2_max(delta, g);
    *i_max = m.i_max;
    *theta_star = m.theta_star;
    *scan_max = m.scan_max;
  });
}

PPSM_EXPORT ppsm_status ppsm_ms_report(const ppsm_system* sys, double g,
                                       long n, double dp_dg, double dq_dg,
                                       ppsm_ms_figures* out) {
  return guarded([&] {
    const ppsm_system& s = deref(sys);
    require(out != nullptr, "null argument");
    const auto r =
        ppsm::metrics::ms_report(s.obs, s.pps, s.pointer, g, n, dp_dg, dq_dg);
    *out = {r.dg_opt, r.dg_p, r.dg_q, r.ep_1, r.eq_1, r.ep_2, r.eq_2, r.n};
  });
}

PPSM_EXPORT ppsm_status ppsm_sg_ms_enhancements(double theta, double phi,
                                                double delta, double g,
                                                double out[4]) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto e = ppsm::metrics::sg_ms_enhancements({theta, phi, delta, g});
    out[0] = e.ep_1;
    out[1] = e.ez_1;
    out[2] = e.ep_2;
    out[3] = e.ez_2;
  });
}

PPSM_EXPORT ppsm_status ppsm_relative_system_error(double shift,
                                                   double delta_sys,
                                                   double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = ppsm::metrics::relative_system_error(shift, delta_sys);
  });
}

PPSM_EXPORT ppsm_status ppsm_oracle_readout(const ppsm_system* sys, double g,
                                            const ppsm_grid_spec* grid,
                                            ppsm_readout* out) {
  return guarded([&] {
    const ppsm_system& s = deref(sys);
    require(out != nullptr, "null argument");
    *out = convert(ppsm::oracle::oracle_readout(s.obs, s.pps, s.pointer, g,
                                                convert_grid(grid)));
  });
}

PPSM_EXPORT ppsm_status ppsm_oracle_g_derivative(const ppsm_system* sys,
                                                 double g,
                                                 const ppsm_grid_spec* grid,
                                                 double* dp_dg,
                                                 double* dq_dg) {
  return guarded([&] {
    const ppsm_system& s = deref(sys);
    require(dp_dg != nullptr && dq_dg != nullptr, "null argument");
    const auto d = ppsm::oracle::oracle_g_derivative(s.obs, s.pps, s.pointer,
                                                     g, convert_grid(grid));
    *dp_dg = d.dp_dg;
    *dq_dg = d.dq_dg;
  });
}

} // extern "C"
