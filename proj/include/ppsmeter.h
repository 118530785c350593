#ifndef PPSMETER_H
#define PPSMETER_H

/* ppsmeter - exact pointer statistics for pre/postselected quantum
 * measurements with a Gaussian pointer, at arbitrary coupling strength.
 *
 * Model: impulsive coupling H = -g delta(t-t0) A (x) q between a system
 * observable A (discrete spectrum a_m) and the pointer position q, with the
 * pointer prepared in a Gaussian of width Delta (hbar = 1, <q>=<p>=0,
 * Delta_q = Delta, Delta_p = 1/(2*Delta)).  After preselecting |psi_i>,
 * coupling, and postselecting |psi_f>, the library returns the exact
 * postselection probability and the pointer momentum/position shifts and
 * spreads, plus weak/strong limits, qubit and Stern-Gerlach closed forms,
 * signal-to-noise and measurement-sensitivity figures, and an independent
 * brute-force wavefunction-integration cross-check.
 *
 * All functions are thread-safe; a ppsm_system is immutable after creation.
 * Functions return PPSM_OK (0) on success.  On failure the output values are
 * untouched unless stated otherwise, and ppsm_last_error_message() returns a
 * human-readable detail string (thread-local, valid until the next failing
 * call on the same thread).
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppsm_status {
  PPSM_OK = 0,
  PPSM_ERROR_INVALID_ARGUMENT = 1,   /* malformed input (size, range, NaN) */
  PPSM_ERROR_DEGENERATE_OBSERVABLE,  /* all-zero spectrum, or a1 == a2     */
  PPSM_ERROR_VANISHING_POSTSELECTION,/* postselection probability <= 1e-14 */
  PPSM_ERROR_ORTHOGONAL_PPS,         /* <psi_f|psi_i> = 0 where forbidden  */
  PPSM_ERROR_NUMERICAL_FAILURE,      /* non-finite value or negative variance */
  PPSM_ERROR_GRID_TOO_COARSE,        /* oracle grid under-resolves e^{igaq} */
  PPSM_ERROR_OUT_OF_REGIME,          /* asymptotic formula outside validity */
  PPSM_ERROR_INSENSITIVE_POINTER,    /* zero shift/derivative, Delta_g infinite */
  PPSM_ERROR_DEGENERATE_SPREAD,      /* zero pointer spread, SNR undefined */
  PPSM_ERROR_NO_CONVERGENCE          /* refinement exceeded its budget     */
} ppsm_status;

/* Immutable measurement setup: spectrum a_m, preselected amplitudes alpha_m,
 * postselected amplitudes beta_m (both unit norm), pointer width delta. */
typedef struct ppsm_system ppsm_system;

/* Exact pointer readout conditioned on successful postselection. */
typedef struct ppsm_readout {
  double probability; /* P, in [0,1] */
  double dp;          /* momentum shift <p'> */
  double dq;          /* position shift <q'> */
  double sd_p;        /* momentum spread Delta_p' > 0 */
  double sd_q;        /* position spread Delta_q' >= 0 */
} ppsm_readout;

/* Extremal qubit shifts over all pre/postselections, closed form.
 * t parametrizes the momentum-optimal polar angles, t = cos((theta1+theta2)/2)
 * / cos((theta1-theta2)/2), with relative azimuth phi0 = phi1-phi2. */
typedef struct ppsm_qubit_extremes {
  double dp_min, dp_max;      /* extremal momentum shifts */
  double dq_min, dq_max;      /* extremal position shifts (dq_min = -dq_max) */
  double t_opt_min, t_opt_max;/* t at the momentum extrema: -/+ sqrt(W/M) */
  double phi0_for_p;          /* azimuth at the momentum extrema (pi) */
  double phi0_for_q_min, phi0_for_q_max; /* azimuths at the position extrema */
  double big_m, big_w;        /* M = 1+e^{-g^2 D^2 (a1-a2)^2/2}, W = 2-M */
} ppsm_qubit_extremes;

/* Stern-Gerlach maxima (preselection scanned, postselection (|0>+|1>)/sqrt2,
 * spectrum +1/-1). */
typedef struct ppsm_sg_max {
  double dp_max;    /* or dz_max: the maximized shift */
  double dz_max;
  double theta_opt; /* achieving preselection polar angle */
  double phi_opt;   /* achieving preselection azimuth */
  double p_max;     /* postselection probability at the optimum */
} ppsm_sg_max;

/* Repeated-trial signal-to-noise figures (N trials).
 * r0: no-postselection SNR of the given preselection; r0_max: best
 * conventional SNR sqrt(N)|a_max g|/Delta_p; rp/rq: postselected SNRs;
 * ip/iq: improvement factors, type I (postselection cost counted, _1)
 * and type II (discarded trials free, _2 = _1/sqrt(P)). */
typedef struct ppsm_snr_figures {
  double r0, r0_max, rp, rq;
  double ip_1, iq_1, ip_2, iq_2;
  long n;
} ppsm_snr_figures;

/* Measurement-sensitivity (smallest resolvable g) report.
 * dg_opt: conventional optimum Delta_p/(|a_max| sqrt(N)); dg_p/dg_q:
 * postselected sensitivities; ep/eq: enhancement factors (type I/II).
 * A channel whose shift derivative vanishes reports dg = +inf, e = 0. */
typedef struct ppsm_ms_figures {
  double dg_opt, dg_p, dg_q;
  double ep_1, eq_1, ep_2, eq_2;
  long n;
} ppsm_ms_figures;

/* Brute-force integration grid: uniform q grid on [-W*delta, +W*delta] with
 * `points` nodes (odd, >= 1025; q=0 is a node).  Pass half_width_sigmas = 0
 * and points = 0 for the defaults (12, 32769). */
typedef struct ppsm_grid_spec {
  double half_width_sigmas;
  long points;
} ppsm_grid_spec;

const char *ppsm_version(void);
const char *ppsm_status_name(ppsm_status status);
const char *ppsm_last_error_message(void);

/* Rescale a raw spectrum to unit max |a_m| in place and fold the scale into
 * g: (c*a, g) -> (a, c*g) leaves every readout invariant. */
ppsm_status ppsm_normalize_observable(double *eigenvalues, size_t dim,
                                      double *g);

/* Create a measurement setup.  `alpha` and `beta` are interleaved complex
 * arrays [re0, im0, re1, im1, ...] of length 2*dim, each with unit norm
 * (tolerance 1e-12).  dim >= 2, delta > 0. */
ppsm_status ppsm_system_create(const double *eigenvalues, size_t dim,
                               const double *alpha, const double *beta,
                               double delta, ppsm_system **out);

/* Qubit setup from Bloch angles: |psi> = cos(theta/2)|0> + sin(theta/2)
 * e^{i phi}|1>, spectrum (a1, a2), theta in [0, pi], phi in [0, 2*pi). */
ppsm_status ppsm_system_create_qubit(double a1, double a2, double theta1,
                                     double phi1, double theta2, double phi2,
                                     double delta, ppsm_system **out);

void ppsm_system_destroy(ppsm_system *sys);
size_t ppsm_system_dim(const ppsm_system *sys);

/* gamma_m = alpha_m * conj(beta_m), interleaved, length 2*dim. */
ppsm_status ppsm_gamma_weights(const ppsm_system *sys, double *out);

/* Exact readout at coupling g (any finite real; g < 0 is reduced to g > 0 by
 * flipping the spectrum sign, which leaves the statistics invariant). */
ppsm_status ppsm_readout_exact(const ppsm_system *sys, double g,
                               ppsm_readout *out);

/* Weak value A_w = <psi_f|A|psi_i>/<psi_f|psi_i>. */
ppsm_status ppsm_weak_value(const ppsm_system *sys, double *re, double *im);

/* First-order (weak-coupling) shifts: dp = g Re A_w, dq = -2 g delta^2 Im A_w. */
ppsm_status ppsm_weak_limit_shifts(const ppsm_system *sys, double g,
                                   double *dp, double *dq);

/* Weak-regime validity margins |g^n delta^n <psi_f|A^n|psi_i>| / |<psi_f|psi_i>|
 * for n = 2..n_max (n_max - 1 values); margins >> 1 flag breakdown. */
ppsm_status ppsm_weak_validity_margins(const ppsm_system *sys, double g,
                                       int n_max, double *out);

/* Strong-coupling limiting momentum shift (degenerate eigenvalues grouped). */
ppsm_status ppsm_strong_limit_shift(const ppsm_system *sys, double g,
                                    double *dp);

/* Momentum shift without postselection: g * sum_m |alpha_m|^2 a_m. */
ppsm_status ppsm_no_postselect_shift(const double *eigenvalues, size_t dim,
                                     const double *alpha, double g,
                                     double *dp);

/* Qubit closed-form readout (equivalent to ppsm_readout_exact on the same
 * amplitudes). */
ppsm_status ppsm_qubit_readout(double a1, double a2, double theta1,
                               double phi1, double theta2, double phi2,
                               double delta, double g, ppsm_readout *out);

/* Extremal qubit shifts over all pre/postselections; requires a1 != a2,
 * g > 0, delta > 0. */
ppsm_status ppsm_qubit_shift_extremes(double a1, double a2, double delta,
                                      double g, ppsm_qubit_extremes *out);

/* Stern-Gerlach: preselection (theta, phi), postselection (|0>+|1>)/sqrt2,
 * spectrum (+1, -1).  dp/sd_p are the z-momentum, dq/sd_q the z-position. */
ppsm_status ppsm_sg_readout(double theta, double phi, double delta, double g,
                            ppsm_readout *out);
ppsm_status ppsm_sg_momentum_max(double delta, double g, ppsm_sg_max *out);
ppsm_status ppsm_sg_position_max(double delta, double g, ppsm_sg_max *out);

/* SNR report after N trials at coupling g (g != 0, n >= 1). */
ppsm_status ppsm_snr_report(const ppsm_system *sys, double g, long n,
                            ppsm_snr_figures *out);

/* Stern-Gerlach SNR improvement factors, closed form:
 * out = {ip_1, iz_1, ip_2, iz_2}. */
ppsm_status ppsm_sg_snr_improvements(double theta, double phi, double delta,
                                     double g, double out[4]);

/* Small-coupling maximum of the type-II momentum SNR improvement:
 * i_max ~= sqrt(sqrt(3)/6)/(g*delta) at sin(theta*) = 1 - 2*sqrt(3)*delta^2*g^2,
 * phi* = pi; requires g*delta <= 0.05.  scan_max returns the maximum of the
 * exact expression located numerically, for comparison. */
ppsm_status ppsm_sg_snr_type2_max(double delta, double g, double *i_max,
                                  double *theta_star, double *scan_max);

/* Measurement-sensitivity report; dshift_dg are the g-derivatives of the
 * momentum/position shifts (from a closed form or the oracle). */
ppsm_status ppsm_ms_report(const ppsm_system *sys, double g, long n,
                           double dp_dg, double dq_dg, ppsm_ms_figures *out);

/* Stern-Gerlach sensitivity enhancement factors, closed form:
 * out = {ep_1, ez_1, ep_2, ez_2}. */
ppsm_status ppsm_sg_ms_enhancements(double theta, double phi, double delta,
                                    double g, double out[4]);

/* Relative systematic error delta_sys/|shift|; shift = 0 is an error. */
ppsm_status ppsm_relative_system_error(double shift, double delta_sys,
                                       double *out);

/* Brute-force readout: build Phi'(q) = sum_m gamma_m e^{i g a_m q} Phi(q) on
 * the grid, trapezoid quadrature for P/<q>/<q^2>, Fourier-space spectral
 * differentiation for <p>/<p^2>.  Never uses the analytic double sums. */
ppsm_status ppsm_oracle_readout(const ppsm_system *sys, double g,
                                const ppsm_grid_spec *grid,
                                ppsm_readout *out);

/* Central-difference d(dp)/dg and d(dq)/dg of the brute-force readout with
 * one Richardson step (h = max(1e-6, 1e-4*g)); forward difference at g = 0
 * (accuracy O(h)). */
ppsm_status ppsm_oracle_g_derivative(const ppsm_system *sys, double g,
                                     const ppsm_grid_spec *grid,
                                     double *dp_dg, double *dq_dg);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PPSMETER_H */
