#ifndef PPSM_QUBIT_HPP
#define PPSM_QUBIT_HPP

#include "ppsm/types.hpp"

namespace ppsm::qubit {

// Bloch parametrization |psi> = cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>,
// theta in [0, pi], phi in [0, 2 pi).
struct bloch_angles {
  double theta = 0.0;
  double phi = 0.0;
};

bloch_angles make_angles(double theta, double phi);
pps_pair to_pps(bloch_angles pre, bloch_angles post);

// Closed-form qubit readout; shifts and probability from the angle formulas,
// spreads delegated to the generic double-sum path.  Must agree with
// postselect_readout on the equivalent amplitudes to 1e-12.
readout closed_form_readout(double a1, double a2, bloch_angles pre,
                            bloch_angles post, gaussian_pointer pointer,
                            double g);

// Extremal momentum shift over all pre/postselections:
//   dp_{max,min} = (a1+a2) g/2 +- (a1-a2) g / (2 sqrt(1 - e^{-g^2 D^2 (a1-a2)^2}))
// attained at phi1-phi2 = pi and t = cos((th1+th2)/2)/cos((th1-th2)/2)
// = +-sqrt(W/M), with M = 1+e^{-g^2 D^2 (a1-a2)^2/2}, W = 2-M.  (The branch
// cos(phi0)=+1, t = sqrt(M/W) attains the same value.)
struct momentum_extremes {
  double dp_min, dp_max;
  double t_opt_min, t_opt_max;
  double phi0;
  double m, w;
};
momentum_extremes momentum_shift_extremes(double a1, double a2,
                                          gaussian_pointer pointer, double g);

// Extremal position shift: dq_max = g D^2 (a1-a2) e^{-g^2 D^2 (a1-a2)^2/2}
// / sqrt(1 - e^{-g^2 D^2 (a1-a2)^2}), dq_min = -dq_max, attained on
// theta1+theta2 = pi at phi1-phi2 = pi -+ arccos(e^{-g^2 D^2 (a1-a2)^2/2}).
struct position_extremes {
  double dq_min, dq_max;
  double phi0_min, phi0_max;
  double m, w;
};
position_extremes position_shift_extremes(double a1, double a2,
                                          gaussian_pointer pointer, double g);

} // namespace ppsm::qubit

#endif
