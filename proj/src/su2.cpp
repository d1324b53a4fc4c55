#include "cs2d/su2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cs2d/errors.hpp"

namespace cs2d {

SU2State::SU2State(int nu, SU2Params params, AnisotropyRatio ratio)
    : nu_(nu), params_(params), ratio_(ratio) {
  if (nu < 0) throw DomainError("SU(2) shell index nu must be non-negative");
}

Complex su2_amplitude(const SU2Params& params, int nu, int n) {
  if (n < 0 || n > nu) return {};
  const Complex a = params.alpha();
  const Complex b = params.beta();
  const double ra = std::abs(a);
  const double rb = std::abs(b);
  if (ra == 0.0) return n == 0 ? std::polar(std::pow(rb, nu), nu * std::arg(b)) : Complex{};
  if (rb == 0.0) return n == nu ? std::polar(std::pow(ra, nu), nu * std::arg(a)) : Complex{};
  const double log_mag = n * std::log(ra) + (nu - n) * std::log(rb) + log_binomial_sqrt(nu, n);
  return std::polar(std::exp(log_mag), n * std::arg(a) + (nu - n) * std::arg(b));
}

CoeffVector su2_coefficients(const SU2State& state) {
  CoeffVector out;
  for (int n = 0; n <= state.nu(); ++n) {
    out.set(state.ratio().map(state.nu(), n), su2_amplitude(state.params(), state.nu(), n));
  }
  return out;
}

Complex su2_overlap(const SU2State& bra, const SU2State& ket) {
  if (!(bra.ratio() == ket.ratio())) {
    throw RatioMismatchError("SU(2) overlap between different frequency ratios");
  }
  if (bra.nu() != ket.nu()) return {};
  const Complex base = std::conj(bra.params().alpha()) * ket.params().alpha() +
                       std::conj(bra.params().beta()) * ket.params().beta();
  return std::pow(base, bra.nu());
}

Complex su2_wavefunction(const SU2State& state, double x, double y, int max_order) {
  const int nu = state.nu();
  const auto& r = state.ratio();
  const auto px = hermite_psi_table(r.p() * nu, x, max_order);
  const auto py = hermite_psi_table(r.q() * nu, y, max_order);
  Complex sum{};
  for (int n = 0; n <= nu; ++n) {
    const ModeIndex2D idx = r.map(nu, n);
    sum += su2_amplitude(state.params(), nu, n) * (px[static_cast<std::size_t>(idx.n)] *
                                                   py[static_cast<std::size_t>(idx.m)]);
  }
  return sum;
}

QuadratureVariances su2_variances(const SU2State& state) {
  const double nu = state.nu();
  const double vx = 0.5 + std::norm(state.params().alpha()) * state.ratio().p() * nu;
  const double vy = 0.5 + std::norm(state.params().beta()) * state.ratio().q() * nu;
  return {vx, vx, vy, vy};
}

double su2_energy(const SU2State& state) {
  const double nu = state.nu();
  return state.ratio().p() * std::norm(state.params().alpha()) * nu +
         state.ratio().q() * std::norm(state.params().beta()) * nu + 1.0;
}

double line_angle(Complex alpha, Complex beta) {
  const double ra = std::abs(alpha);
  const double rb = std::abs(beta);
  if (ra == 0.0 && rb == 0.0) throw DomainError("line angle undefined for alpha = beta = 0");
  return std::atan2(rb, ra);
}

double line_angle(const SU2Params& params) { return line_angle(params.alpha(), params.beta()); }

}  // namespace cs2d
