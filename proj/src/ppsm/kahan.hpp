#ifndef PPSM_KAHAN_HPP
#define PPSM_KAHAN_HPP

#include <complex>

namespace ppsm {

// Kahan-compensated accumulator; the double sums over (m,n) pairs can mix
// magnitudes badly for larger spectra, so compensation is always on.
class kahan_sum {
public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

private:
  double s_ = 0.0, c_ = 0.0;
};

class kahan_csum {
public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
  kahan_sum re_, im_;
};

} // namespace ppsm

#endif
