#pragma once

#include <cmath>
#include <complex>

namespace cs2d {

/// Neumaier-compensated accumulator for complex terms.
class CompensatedSum {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  [[nodiscard]] std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  struct Real {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
      const double t = sum + v;
      if (std::abs(sum) >= std::abs(v)) {
        comp += (sum - t) + v;
      } else {
        comp += (v - t) + sum;
      }
      sum = t;
    }
    [[nodiscard]] double value() const { return sum + comp; }
  };
  Real re_;
  Real im_;
};

}  // namespace cs2d
