#include "scanlib/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scanlib {

namespace {

using point = std::vector<double>;

void clamp_into(point& x, const point& lo, const point& hi) {
  for (size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
}

double diameter(const std::vector<point>& xs) {
  double d = 0.0;
  for (size_t a = 0; a + 1 < xs.size(); ++a)
    for (size_t b = a + 1; b < xs.size(); ++b)
      for (size_t i = 0; i < xs[a].size(); ++i)
        d = std::max(d, std::abs(xs[a][i] - xs[b][i]));
  return d;
}

} // namespace

simplex_result maximize(
    const std::function<double(const std::vector<double>&)>& objective,
    point start, const point& lo, const point& hi,
    const simplex_options& options) {
  const size_t n = start.size();
  if (n == 0 || lo.size() != n || hi.size() != n)
    throw std::invalid_argument("simplex: dimension mismatch");
  for (size_t i = 0; i < n; ++i)
    if (!(lo[i] < hi[i])) throw std::invalid_argument("simplex: empty box");
  clamp_into(start, lo, hi);

  simplex_result result;
  auto eval = [&](const point& x) {
    ++result.evaluations;
    const double v = objective(x);
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  };

  // Initial simplex: start plus one step along each axis, stepping backwards
  // when the forward step would be flattened against the box.
  std::vector<point> xs(n + 1, start);
  std::vector<double> fs(n + 1);
  for (size_t i = 0; i < n; ++i) {
    point& v = xs[i + 1];
    v[i] += options.initial_step;
    if (v[i] > hi[i]) v[i] = start[i] - options.initial_step;
    clamp_into(v, lo, hi);
  }
  for (size_t i = 0; i <= n; ++i) fs[i] = eval(xs[i]);

  bool flat = true;
  for (size_t i = 1; i <= n; ++i)
    if (fs[i] != fs[0]) flat = false;
  if (flat) {
    result.x = start;
    result.value = fs[0];
    result.converged = true;
    result.flat_objective = true;
    return result;
  }

  auto order = [&] {
    // Descending by value: xs[0] is the best vertex, xs[n] the worst.
    std::vector<size_t> idx(n + 1);
    for (size_t i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return fs[a] > fs[b]; });
    std::vector<point> xs2(n + 1);
    std::vector<double> fs2(n + 1);
    for (size_t i = 0; i <= n; ++i) {
      xs2[i] = xs[idx[i]];
      fs2[i] = fs[idx[i]];
    }
    xs.swap(xs2);
    fs.swap(fs2);
  };
  order();

  double previous_best = fs[0];
  while (result.evaluations < options.max_evaluations) {
    const double spread = fs[0] - fs[n];
    if (diameter(xs) < options.diameter_tol &&
        std::abs(spread) < options.value_tol &&
        std::abs(fs[0] - previous_best) < options.value_tol) {
      result.converged = true;
      break;
    }
    previous_best = fs[0];

    point centroid(n, 0.0);
    for (size_t i = 0; i < n; ++i) { // all but the worst vertex
      for (size_t k = 0; k < n; ++k) centroid[k] += xs[i][k];
    }
    for (size_t k = 0; k < n; ++k) centroid[k] /= static_cast<double>(n);

    auto blend = [&](double coeff) {
      point x(n);
      for (size_t k = 0; k < n; ++k)
        x[k] = centroid[k] + coeff * (centroid[k] - xs[n][k]);
      clamp_into(x, lo, hi);
      return x;
    };

    const point xr = blend(1.0); // reflect the worst through the centroid
    const double fr = eval(xr);
    if (fr > fs[0]) {
      const point xe = blend(2.0); // expand
      const double fe = eval(xe);
      if (fe > fr) {
        xs[n] = xe;
        fs[n] = fe;
      } else {
        xs[n] = xr;
        fs[n] = fr;
      }
    } else if (fr > fs[n - 1]) {
      xs[n] = xr;
      fs[n] = fr;
    } else {
      const point xc = blend(fr > fs[n] ? 0.5 : -0.5); // contract
      const double fc = eval(xc);
      if (fc > std::max(fr, fs[n])) {
        xs[n] = xc;
        fs[n] = fc;
      } else { // shrink toward the best vertex
        for (size_t i = 1; i <= n; ++i) {
          for (size_t k = 0; k < n; ++k)
            xs[i][k] = xs[0][k] + 0.5 * (xs[i][k] - xs[0][k]);
          fs[i] = eval(xs[i]);
          if (result.evaluations >= options.max_evaluations) break;
        }
      }
    }
    order();
  }

  result.x = xs[0];
  result.value = fs[0];
  return result;
}

} // namespace scanlib
