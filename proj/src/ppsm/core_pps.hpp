#ifndef PPSM_CORE_PPS_HPP
#define PPSM_CORE_PPS_HPP

#include "ppsm/types.hpp"

namespace ppsm {

// Raw double sums behind the exact readout, before realness checks:
//   norm = sum_mn g_m g_n* E_mn                    (-> P)
//   p1   = (g/2) sum_mn g_m g_n* (a_m+a_n) E_mn    (-> <p'> * norm)
//   q1   = i g D^2 sum_mn g_m g_n* (a_m-a_n) E_mn  (-> <q'> * norm)
//   p2   = (g^2/4) sum_mn g_m g_n* (a_m+a_n)^2 E_mn
//   q2   = -g^2 D^4 sum_mn g_m g_n* (a_m-a_n)^2 E_mn
// with E_mn = exp(-D^2 g^2 (a_m-a_n)^2 / 2) and g_m = alpha_m beta_m*.
// Exposed for the hermiticity-residue property tests.
struct moment_sums {
  cplx norm, p1, q1, p2, q2;
};
moment_sums pps_moment_sums(const observable& obs, const pps_pair& pps,
                            gaussian_pointer pointer, double g);

// Exact conditioned readout at arbitrary coupling.  g < 0 is reduced to
// g > 0 by flipping the spectrum sign (the statistics are invariant).
readout postselect_readout(const observable& obs, const pps_pair& pps,
                           gaussian_pointer pointer, double g);

// A_w = <psi_f|A|psi_i> / <psi_f|psi_i>; requires non-orthogonal PPS.
cplx weak_value(const observable& obs, const pps_pair& pps);

// First-order shifts dp = g Re A_w, dq = -2 g D^2 Im A_w.
struct weak_shifts {
  double dp, dq;
};
weak_shifts weak_limit_readout(const observable& obs, const pps_pair& pps,
                               gaussian_pointer pointer, double g);

// margin_n = |g^n D^n <psi_f|A^n|psi_i>| / |<psi_f|psi_i>| for n = 2..n_max,
// evaluated at the pointer scale q = D; values >> 1 flag weak-limit breakdown.
std::vector<double> weak_validity_margins(const observable& obs,
                                          const pps_pair& pps,
                                          gaussian_pointer pointer, double g,
                                          int n_max);

// Strong-coupling limiting momentum shift: degenerate classes s (grouping
// tolerance 1e-12) with weights |sum_{m in s} gamma_m|^2.
double strong_limit_shift(const observable& obs, const pps_pair& pps,
                          double g);

// Momentum shift with no postselection: g sum_m |alpha_m|^2 a_m.
double no_postselect_shift(const observable& obs,
                           const std::vector<cplx>& alpha, double g);

} // namespace ppsm

#endif
