#ifndef PPSM_STERN_GERLACH_HPP
#define PPSM_STERN_GERLACH_HPP

#include "ppsm/types.hpp"

namespace ppsm::sg {

// Spin-1/2 beam: preselection at Bloch angles (theta, phi), postselection
// fixed at (|0>+|1>)/sqrt(2), spectrum (+1, -1) (sigma_z coupling to the
// transverse pointer).  g = 0 is accepted so the orthogonal corner
// (theta=pi/2, phi=pi, g=0) reports VanishingPostselection.
struct config {
  double theta = 0.0;
  double phi = 0.0;
  double delta = 1.0;
  double g = 0.0;
};

// Readout: dp/sd_p are the z-momentum shift/spread, dq/sd_q the z-position.
readout sg_readout(const config& cfg);

// Maximum over the preselection sphere; momentum_max fills dp_max at
// theta_opt = arcsin e^{-2 D^2 g^2}, phi_opt = pi; position_max fills dz_max
// at theta_opt = pi/2, phi_opt = pi - arccos e^{-2 D^2 g^2}.  Both optima
// share p_max = (1 - e^{-4 D^2 g^2})/2.
struct sg_max {
  double dp_max = 0.0;
  double dz_max = 0.0;
  double theta_opt = 0.0;
  double phi_opt = 0.0;
  double p_max = 0.0;
};
sg_max momentum_max(double delta, double g);
sg_max position_max(double delta, double g);

} // namespace ppsm::sg

#endif
