#ifndef PPSM_TYPES_HPP
#define PPSM_TYPES_HPP

#include <complex>
#include <vector>

#include "ppsm/errors.hpp"

namespace ppsm {

using cplx = std::complex<double>;

// Probability floor below which postselection is treated as vanishing.
inline constexpr double eps_probability = 1e-14;
// Two eigenvalues closer than this belong to one degenerate class.
inline constexpr double degeneracy_tol = 1e-12;
// Allowed norm / hermiticity / probability-overshoot slack.
inline constexpr double realness_tol = 1e-12;

// Coupled observable: dimensionless spectrum a_m, d >= 2 (duplicates allowed).
struct observable {
  std::vector<double> a;
  size_t dim() const { return a.size(); }
};

// Preselected (alpha) and postselected (beta) amplitudes in the observable
// eigenbasis, each unit norm.
struct pps_pair {
  std::vector<cplx> alpha, beta;
  size_t dim() const { return alpha.size(); }
};

// Gaussian pointer state of position width delta (hbar = 1).
struct gaussian_pointer {
  double delta = 1.0;
  double sd_q() const { return delta; }
  double sd_p() const { return 0.5 / delta; }
};

// Conditioned pointer statistics after postselection.
struct readout {
  double probability = 0.0;
  double dp = 0.0;
  double dq = 0.0;
  double sd_p = 0.0;
  double sd_q = 0.0;
};

observable make_observable(std::vector<double> a);
pps_pair make_pps(std::vector<cplx> alpha, std::vector<cplx> beta);
gaussian_pointer make_pointer(double delta);

// Rescales to unit max|a_m| and folds the scale into g; accepts any
// nonempty finite spectrum that is not all zero.
struct normalized_observable {
  std::vector<double> a;
  double g;
};
normalized_observable normalize_observable(std::vector<double> raw, double g);

std::vector<cplx> gamma_weights(const pps_pair& pps);

} // namespace ppsm

#endif
