#include "cs2d/params.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "cs2d/errors.hpp"

namespace cs2d {

SU2Params::SU2Params(Complex alpha, Complex beta) {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > kRenormalizeTolerance) {
    throw DomainError("|alpha|^2 + |beta|^2 = " + std::to_string(norm2) +
                      " is not within 1e-6 of 1");
  }
  const double scale = 1.0 / std::sqrt(norm2);
  alpha_ = alpha * scale;
  beta_ = beta * scale;
}

bool SU2Params::approx_equal(const SU2Params& other, double tol) const {
  return std::abs(alpha_ - other.alpha_) <= tol && std::abs(beta_ - other.beta_) <= tol;
}

AnisotropyRatio::AnisotropyRatio(int p, int q) : p_(p), q_(q) {
  if (p < 1 || q < 1) throw DomainError("frequency ratio p:q needs positive integers");
  if (std::gcd(p, q) != 1) {
    throw DomainError("frequency ratio " + std::to_string(p) + ":" + std::to_string(q) +
                      " is not reduced (gcd != 1)");
  }
}

}  // namespace cs2d
