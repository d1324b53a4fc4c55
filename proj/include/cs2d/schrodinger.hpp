#pragma once

// Schrodinger-type 2D coherent states
//   |Psi>_{alpha,beta}^{p,q} = e^{-|Psi|^2/2} sum_nu Psi^nu / sqrt(nu!) |nu>_{alpha,beta}^{p,q},
// kept to a finite number of shells nu < N. For p = q = 1 this is D(Psi)|0>
// with D factorizing into independent x and y displacements.

#include <utility>
#include <vector>

#include "cs2d/oscillator.hpp"
#include "cs2d/params.hpp"

namespace cs2d {

class SchrodingerState {
 public:
  /// Keeps shells nu = 0 .. truncation - 1.
  SchrodingerState(Complex psi, SU2Params params, AnisotropyRatio ratio, int truncation);

  /// Truncation from the Poisson tail rule on |Psi|^2.
  static SchrodingerState with_tail_rule(Complex psi, SU2Params params,
                                         AnisotropyRatio ratio = {},
                                         double eps = kDefaultTailEpsilon);

  [[nodiscard]] Complex psi() const { return psi_; }
  [[nodiscard]] const SU2Params& params() const { return params_; }
  [[nodiscard]] const AnisotropyRatio& ratio() const { return ratio_; }
  [[nodiscard]] int truncation() const { return truncation_; }

 private:
  Complex psi_;
  SU2Params params_;
  AnisotropyRatio ratio_;
  int truncation_;
};

struct ExpansionTerm {
  int nu = 0;
  ModeIndex2D mode;
  Complex amplitude;
};

/// Every nonzero term, ascending in nu and then in the x-index within a shell.
std::vector<ExpansionTerm> schrodinger_terms(const SchrodingerState& state);

CoeffVector schrodinger_coefficients(const SchrodingerState& state);

/// Closed-form <bra|ket> of the untruncated states:
///   e^{-(|Psi'|^2 + |Psi|^2)/2} exp(conj(Psi') Psi (conj(gamma) alpha + conj(delta) beta)).
/// Anisotropic states are only supported with identical (alpha, beta); use
/// inner_product() on the coefficient vectors for anything else.
Complex schrodinger_overlap(const SchrodingerState& bra, const SchrodingerState& ket);

/// e^{-|Psi|^2} |Psi|^{2 mu} / mu!.
double poisson_occupation(const SchrodingerState& state, int mu);

/// ||(A- - Psi)|state>|| evaluated with the truncated-space oracle. Isotropic only.
double annihilation_residual(const SchrodingerState& state);

/// Isotropic: analytic Gaussian. Anisotropic: termwise expansion.
Complex schrodinger_wavefunction(const SchrodingerState& state, double x, double y);

/// Termwise expansion for any ratio, compensated sum in ascending nu.
Complex schrodinger_wavefunction_expansion(const SchrodingerState& state, double x, double y);

/// (sqrt2 Re(alpha Psi), sqrt2 Re(beta Psi)). Isotropic only.
std::pair<double, double> peak_location(const SchrodingerState& state);

/// Minimal-uncertainty values, all 1/2. Isotropic only.
QuadratureVariances schrodinger_variances(const SchrodingerState& state);

}  // namespace cs2d
