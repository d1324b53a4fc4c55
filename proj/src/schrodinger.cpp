#include "cs2d/schrodinger.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cs2d/compensated_sum.hpp"
#include "cs2d/errors.hpp"
#include "cs2d/oracle.hpp"
#include "cs2d/su2.hpp"

namespace cs2d {

namespace {

void require_isotropic(const SchrodingerState& state, const char* what) {
  if (!state.ratio().is_isotropic()) {
    throw AnisotropicUnsupportedError(std::string(what) + " is only defined for p = q = 1");
  }
}

}  // namespace

SchrodingerState::SchrodingerState(Complex psi, SU2Params params, AnisotropyRatio ratio,
                                   int truncation)
    : psi_(psi), params_(params), ratio_(ratio), truncation_(truncation) {
  require_finite(psi, "psi");
  if (truncation < 1) throw DomainError("truncation must keep at least one shell");
}

SchrodingerState SchrodingerState::with_tail_rule(Complex psi, SU2Params params,
                                                  AnisotropyRatio ratio, double eps) {
  require_finite(psi, "psi");
  return {psi, params, ratio, truncation_terms(std::norm(psi), eps)};
}

std::vector<ExpansionTerm> schrodinger_terms(const SchrodingerState& state) {
  std::vector<ExpansionTerm> out;
  const double r = std::abs(state.psi());
  const double phase = std::arg(state.psi());
  for (int nu = 0; nu < state.truncation(); ++nu) {
    if (r == 0.0 && nu > 0) break;
    // e^{-|Psi|^2/2} Psi^nu / sqrt(nu!)
    const double log_mag =
        -0.5 * r * r + (nu == 0 ? 0.0 : nu * std::log(r)) - 0.5 * log_factorial(nu);
    const Complex shell = std::polar(std::exp(log_mag), nu * phase);
    for (int n = 0; n <= nu; ++n) {
      const Complex a = shell * su2_amplitude(state.params(), nu, n);
      if (std::abs(a) < CoeffVector::kDropThreshold) continue;
      out.push_back({nu, state.ratio().map(nu, n), a});
    }
  }
  return out;
}

CoeffVector schrodinger_coefficients(const SchrodingerState& state) {
  CoeffVector out;
  for (const auto& t : schrodinger_terms(state)) out.set(t.mode, t.amplitude);
  return out;
}

Complex schrodinger_overlap(const SchrodingerState& bra, const SchrodingerState& ket) {
  if (!(bra.ratio() == ket.ratio())) {
    throw RatioMismatchError("Schrodinger overlap between different frequency ratios");
  }
  if (!bra.ratio().is_isotropic() && !bra.params().approx_equal(ket.params())) {
    throw AnisotropicUnsupportedError(
        "closed-form anisotropic overlap needs identical (alpha, beta); use inner_product on "
        "the coefficient vectors");
  }
  const Complex su2 = std::conj(bra.params().alpha()) * ket.params().alpha() +
                      std::conj(bra.params().beta()) * ket.params().beta();
  const double damp = -0.5 * (std::norm(bra.psi()) + std::norm(ket.psi()));
  return std::exp(damp + std::conj(bra.psi()) * ket.psi() * su2);
}

double poisson_occupation(const SchrodingerState& state, int mu) {
  if (mu < 0) throw DomainError("occupation index must be non-negative");
  return poisson_pmf(std::norm(state.psi()), mu);
}

double annihilation_residual(const SchrodingerState& state) {
  require_isotropic(state, "annihilation residual");
  using namespace oracle;
  const int top = std::max(1, state.truncation() - 1);
  const TruncatedSpace space(top, top);
  const auto vec = StateVector::embed(space, schrodinger_coefficients(state));
  const auto lower = build_generalized_ladder(space, state.params(), Direction::lower);
  const DenseVector r = lower.matrix() * vec.amplitudes() - state.psi() * vec.amplitudes();
  return r.norm();
}

Complex schrodinger_wavefunction(const SchrodingerState& state, double x, double y) {
  if (!state.ratio().is_isotropic()) return schrodinger_wavefunction_expansion(state, x, y);
  require_finite(x, "x");
  require_finite(y, "y");
  const Complex a = state.params().alpha() * state.psi();
  const Complex b = state.params().beta() * state.psi();
  const double s2 = std::sqrt(2.0);
  const double dx = x - s2 * a.real();
  const double dy = y - s2 * b.real();
  const double mag = std::exp(-0.5 * (dx * dx + dy * dy)) / std::sqrt(std::numbers::pi);
  return std::polar(mag, s2 * (x * a.imag() + y * b.imag()) - a.real() * a.imag() -
                             b.real() * b.imag());
}

Complex schrodinger_wavefunction_expansion(const SchrodingerState& state, double x, double y) {
  const auto terms = schrodinger_terms(state);
  ModeIndex2D top;
  for (const auto& t : terms) {
    top.n = std::max(top.n, t.mode.n);
    top.m = std::max(top.m, t.mode.m);
  }
  const auto px = hermite_psi_table(top.n, x);
  const auto py = hermite_psi_table(top.m, y);
  CompensatedSum sum;
  for (const auto& t : terms) {
    sum.add(t.amplitude * (px[static_cast<std::size_t>(t.mode.n)] *
                           py[static_cast<std::size_t>(t.mode.m)]));
  }
  return sum.value();
}

std::pair<double, double> peak_location(const SchrodingerState& state) {
  require_isotropic(state, "peak location");
  const double s2 = std::sqrt(2.0);
  return {s2 * (state.params().alpha() * state.psi()).real(),
          s2 * (state.params().beta() * state.psi()).real()};
}

QuadratureVariances schrodinger_variances(const SchrodingerState& state) {
  require_isotropic(state, "closed-form Schrodinger variances");
  return {0.5, 0.5, 0.5, 0.5};
}

}  // namespace cs2d
