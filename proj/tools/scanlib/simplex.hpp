#ifndef SCANLIB_SIMPLEX_HPP
#define SCANLIB_SIMPLEX_HPP

#include <functional>
#include <vector>

namespace scanlib {

struct simplex_options {
  double diameter_tol = 1e-8; // max vertex distance, radians
  double value_tol = 1e-12;   // best-to-worst value spread
  long max_evaluations = 100000;
  double initial_step = 0.02; // first simplex edge, radians
};

struct simplex_result {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;      // false after exhausting the budget
  bool flat_objective = false; // initial simplex values all identical
};

// Derivative-free Nelder-Mead MAXIMIZATION inside the box [lo, hi]; every
// candidate is clamped to the box before evaluation.  The objective may
// return -inf to mark invalid regions.  A flat initial simplex returns the
// start point flagged `flat_objective`; exceeding the evaluation budget
// returns the best point found with converged = false.
simplex_result maximize(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> start, const std::vector<double>& lo,
    const std::vector<double>& hi, const simplex_options& options = {});

} // namespace scanlib

#endif
