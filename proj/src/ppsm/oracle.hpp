#ifndef PPSM_ORACLE_HPP
#define PPSM_ORACLE_HPP

#include "ppsm/types.hpp"

namespace ppsm::oracle {

// Uniform position grid on [-W*delta, +W*delta]; points odd so q = 0 is a
// node.  The Gaussian tail at the default width is ~e^{-72}, far below
// double precision.
struct grid_spec {
  double half_width_sigmas = 12.0;
  long points = 32769;
};

// Brute-force readout: samples Phi'(q) = sum_m gamma_m e^{i g a_m q} Phi(q),
// trapezoid quadrature for P, <q>, <q^2>; <p> = Im int Phi'* d_q Phi' / P and
// <p^2> = int |d_q Phi'|^2 / P with Fourier-space differentiation.  Entirely
// independent of the analytic double-sum path.
readout oracle_readout(const observable& obs, const pps_pair& pps,
                       gaussian_pointer pointer, double g,
                       grid_spec grid = {});

// d(dp)/dg and d(dq)/dg by central differences with one Richardson step,
// h = max(1e-6, 1e-4*g); forward difference at g = 0 (accuracy O(h)).
struct g_derivative {
  double dp_dg, dq_dg;
};
g_derivative oracle_g_derivative(const observable& obs, const pps_pair& pps,
                                 gaussian_pointer pointer, double g,
                                 grid_spec grid = {});

// |position-space norm - momentum-space norm| / norm for the sampled
// wavefunction; a consistency diagnostic for the transform pipeline.
double parseval_residual(const observable& obs, const pps_pair& pps,
                         gaussian_pointer pointer, double g,
                         grid_spec grid = {});

} // namespace ppsm::oracle

#endif
