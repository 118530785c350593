#ifndef PPSM_METRICS_HPP
#define PPSM_METRICS_HPP

#include "ppsm/stern_gerlach.hpp"
#include "ppsm/types.hpp"

namespace ppsm::metrics {

// Largest-|.| eigenvalue, ties resolved toward the positive one.
double max_abs_eigenvalue(const observable& obs);

// Repeated-trial SNR R = sqrt(N)|X|/sigma_X.  r0 uses the given preselection
// without postselection, r0_max the best conventional strategy
// sqrt(N)|a_max g|/Dp.  Type-I improvements charge for discarded trials
// (sqrt(N P) successful trials), type-II treat them as free: i_2 = i_1/sqrt(P).
struct snr_report_t {
  double r0, r0_max, rp, rq;
  double ip_1, iq_1, ip_2, iq_2;
  long n;
};
snr_report_t snr_report(const observable& obs, const pps_pair& pps,
                        gaussian_pointer pointer, double g, long n);

// Smallest resolvable coupling Delta_g = sigma_X / |dX/dg| after N trials.
// A channel with a vanishing derivative reports dg = +inf and enhancement 0;
// both vanishing is an error.
struct ms_report_t {
  double dg_opt, dg_p, dg_q;
  double ep_1, eq_1, ep_2, eq_2;
  long n;
};
ms_report_t ms_report(const observable& obs, const pps_pair& pps,
                      gaussian_pointer pointer, double g, long n,
                      double dp_dg, double dq_dg);

double relative_system_error(double shift, double delta_sys);

// Stern-Gerlach closed forms.
struct improvements {
  double ip_1, iz_1, ip_2, iz_2;
};
improvements sg_snr_improvements(const sg::config& cfg);

struct enhancements {
  double ep_1, ez_1, ep_2, ez_2;
};
enhancements sg_ms_enhancements(const sg::config& cfg);

// Small-coupling maximum of the type-II momentum SNR improvement:
// i_max ~= sqrt(sqrt(3)/6)/(g delta) at sin(theta*) = 1 - 2 sqrt(3) D^2 g^2,
// phi* = pi; valid for g*delta <= 0.05.  scan_max is the numerically located
// maximum of the exact expression (the phi = pi slice is globally optimal).
struct type2_max {
  double i_max, theta_star, phi_star, scan_max;
};
type2_max sg_snr_type2_max(double delta, double g);

} // namespace ppsm::metrics

#endif
