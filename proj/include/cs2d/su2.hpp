#pragma once

// SU(2) coherent states |nu>_{alpha,beta}^{p,q} of the 2D oscillator. The
// isotropic family is the p = q = 1 case of the same construction; the
// (p, q) ratio only relabels the Fock modes (n, nu - n) -> (p n, q (nu - n)).

#include <vector>

#include "cs2d/oscillator.hpp"
#include "cs2d/params.hpp"

namespace cs2d {

class SU2State {
 public:
  SU2State(int nu, SU2Params params, AnisotropyRatio ratio = {});

  [[nodiscard]] int nu() const { return nu_; }
  [[nodiscard]] const SU2Params& params() const { return params_; }
  [[nodiscard]] const AnisotropyRatio& ratio() const { return ratio_; }

 private:
  int nu_;
  SU2Params params_;
  AnisotropyRatio ratio_;
};

/// alpha^n beta^(nu-n) sqrt(binom(nu, n)), assembled in log-magnitude/phase
/// form. Exactly one term is nonzero when alpha or beta vanishes.
Complex su2_amplitude(const SU2Params& params, int nu, int n);

/// Expansion over the nu + 1 modes (p n, q (nu - n)).
CoeffVector su2_coefficients(const SU2State& state);

/// <bra|ket> = (conj(gamma) alpha + conj(delta) beta)^nu for equal shells, else 0.
/// Throws RatioMismatchError when the two states use different (p, q).
Complex su2_overlap(const SU2State& bra, const SU2State& ket);

/// <x, y | state>.
Complex su2_wavefunction(const SU2State& state, double x, double y,
                         int max_order = kDefaultMaxOrder);

/// varX = varPx = 1/2 + |alpha|^2 p nu; varY = varPy = 1/2 + |beta|^2 q nu.
QuadratureVariances su2_variances(const SU2State& state);

/// p |alpha|^2 nu + q |beta|^2 nu + 1, i.e. <a_x+ a_x- + a_y+ a_y- + 1>.
/// Note this is not <H> for the anisotropic Hamiltonian; see
/// oracle_hamiltonian_energy for that quantity.
double su2_energy(const SU2State& state);

/// Orientation atan2(|beta|, |alpha|) in [0, pi/2] of the line the density
/// collapses onto when alpha and beta are in phase.
double line_angle(const SU2Params& params);
double line_angle(Complex alpha, Complex beta);

}  // namespace cs2d
