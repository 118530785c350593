#ifndef SCANLIB_OBJECTIVES_HPP
#define SCANLIB_OBJECTIVES_HPP

#include <functional>
#include <string>
#include <vector>

#include "scanlib/config.hpp"

namespace scanlib {

// A scalar field over pre/postselection angles, bound to fixed (delta, g)
// (and spectrum, for qubit objectives), evaluated through the public C API.
// `value` returns -inf where the field is undefined (error statuses), so
// maximizers can treat the whole box as the domain.  Azimuthal coordinates
// are periodic: evaluation wraps them into [0, 2*pi).
struct objective {
  std::string name;
  std::vector<std::string> params; // coordinate names, size = arity
  std::vector<double> lo, hi;      // search box, radians
  std::function<double(const std::vector<double>&)> value;
  std::function<double()> closed_form; // null when no exact expression exists
};

// Registered names:
//   sg.dp sg.dq sg.p                          (theta, phi)
//   sg.ip1 sg.iz1 sg.ip2 sg.iz2               (theta, phi)
//   sg.ep1 sg.ez1 sg.ep2 sg.ez2               (theta, phi)
//   qubit.dp qubit.dq qubit.ip1               (theta1, phi1, theta2, phi2)
// Throws config_error for unknown names or a missing g.
objective make_objective(const std::string& name, const run_config& cfg);

std::vector<std::string> objective_names();

} // namespace scanlib

#endif
