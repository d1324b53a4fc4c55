#pragma once

#include "cs2d/oscillator.hpp"

namespace cs2d {

/// Point (alpha, beta) on the unit 3-sphere |alpha|^2 + |beta|^2 = 1.
/// Inputs within kRenormalizeTolerance of the sphere are projected onto it;
/// anything further off is rejected.
class SU2Params {
 public:
  static constexpr double kRenormalizeTolerance = 1e-6;

  SU2Params(Complex alpha, Complex beta);

  [[nodiscard]] Complex alpha() const { return alpha_; }
  [[nodiscard]] Complex beta() const { return beta_; }

  /// True when both components agree within `tol`.
  [[nodiscard]] bool approx_equal(const SU2Params& other, double tol = 1e-12) const;

 private:
  Complex alpha_;
  Complex beta_;
};

/// Reduced frequency ratio omega_x : omega_y = p : q.
class AnisotropyRatio {
 public:
  AnisotropyRatio() = default;
  AnisotropyRatio(int p, int q);

  static AnisotropyRatio isotropic() { return {}; }

  [[nodiscard]] int p() const { return p_; }
  [[nodiscard]] int q() const { return q_; }
  [[nodiscard]] bool is_isotropic() const { return p_ == 1 && q_ == 1; }

  /// Fock label of the n-th term of a shell nu: (p n, q (nu - n)).
  [[nodiscard]] ModeIndex2D map(int nu, int n) const { return {p_ * n, q_ * (nu - n)}; }

  bool operator==(const AnisotropyRatio&) const = default;

 private:
  int p_ = 1;
  int q_ = 1;
};

/// Second central moments of X, Px, Y, Py.
struct QuadratureVariances {
  double var_x = 0.0;
  double var_px = 0.0;
  double var_y = 0.0;
  double var_py = 0.0;
};

}  // namespace cs2d
