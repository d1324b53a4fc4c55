#pragma once

// Quadrature checks of the coherent-state resolutions of the identity.
//
// S^3 measure: with alpha = sqrt(u) e^{i phi_a}, beta = sqrt(1-u) e^{i phi_b},
//   d^2alpha d^2beta delta(|alpha|^2 + |beta|^2 - 1) = (1/4) du dphi_a dphi_b
// on [0,1] x [0,2pi)^2, total volume pi^2. Within a shell nu every matrix
// element depends on the phases only through phi_a - phi_b, so phi_b is fixed
// at 0 and its 2pi volume restored; phi_a runs on a uniform grid, which is
// exact for trigonometric polynomials of degree below the grid size. u uses
// Gauss-Legendre on [0, 1].
//
// Psi-plane measure: Psi = sqrt(t) e^{i theta}, d^2Psi = (1/2) dt dtheta,
// with Gauss-Laguerre in t absorbing e^{-t} and a uniform theta grid.

#include <Eigen/Dense>
#include "json.hpp"
#include <string>
#include <vector>

#include "cs2d/oscillator.hpp"
#include "cs2d/params.hpp"

namespace cs2d::identity {

struct S3QuadratureSpec {
  int u_nodes = 4;
  int phase_nodes = 2;

  /// Default resolution for shells up to nu_max: u_nodes = nu_max + 4,
  /// phase_nodes = 2 nu_max + 2.
  static S3QuadratureSpec for_nu(int nu_max);
  /// Throws UnderResolvedError unless exact for shells up to nu_max.
  void require_resolves(int nu_max) const;
};

struct PlaneQuadratureSpec {
  int radial_nodes = 4;
  int angular_nodes = 2;

  /// radial_nodes = 2 (nu_max + 2), angular_nodes = 2 nu_max + 2.
  static PlaneQuadratureSpec for_nu(int nu_max);
  /// Exactness for moments t^{nu + extra_power}, nu <= nu_max.
  void require_resolves(int nu_max, int extra_power) const;
};

/// Quadrature result on one degenerate shell, basis ordered by n ascending.
struct ShellMatrix {
  std::vector<ModeIndex2D> basis;
  Eigen::MatrixXcd matrix;
};

/// Diagonal of an identity candidate on a set of modes, plus off-diagonal and
/// Hermiticity diagnostics over the whole assembled matrix.
struct DiagonalSummary {
  std::vector<ModeIndex2D> modes;
  std::vector<double> diagonal;
  double max_offdiag = 0.0;
  double hermiticity_defect = 0.0;
  double max_imag_diagonal = 0.0;
};

/// (nu+1)/pi^2 int dmu |nu><nu| on the shell nu.
ShellMatrix su2_identity_matrix(int nu, const AnisotropyRatio& ratio, const S3QuadratureSpec& spec);

/// Sum over shells nu = 0 .. n_max + m_max of the SU(2) identities, restricted
/// to the modes (n, m) with n <= n_max, m <= m_max reached by the shells.
DiagonalSummary full_identity_diagonal(int n_max, int m_max, const AnisotropyRatio& ratio,
                                       const S3QuadratureSpec& spec);

/// (nu+1)/pi^2 int dmu sqrt(binom(nu,n)) conj(alpha)^n conj(beta)^m |nu>, nu = n + m.
/// Other shells vanish under the global phase average and are not evaluated.
CoeffVector fock_reconstruction(int n, int m, const S3QuadratureSpec& spec);

/// (1/pi^2) int dmu int d^2Psi/pi [|Psi|^2] |Psi><Psi| on n <= n_max, m <= m_max.
/// The integrand factorizes into a Psi part and an S^3 part at every node, so
/// the tensor-product rule is summed as a product of the two marginal sums.
DiagonalSummary weighted_schrodinger_identity(int n_max, int m_max, const S3QuadratureSpec& s3,
                                              const PlaneQuadratureSpec& plane, bool weighted);

/// int d^2z/pi |z><z| for the 1D coherent states, levels 0 .. n_max.
DiagonalSummary coherent1d_identity(int n_max, const PlaneQuadratureSpec& plane);

/// One line of the verification report.
struct IdentityCheck {
  std::string name;
  std::string target;
  double max_abs_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  nlohmann::json spec;
};

void to_json(nlohmann::json& j, const IdentityCheck& check);

/// max |M - I| over every entry of the shell matrix.
IdentityCheck check_su2_identity(int nu, const AnisotropyRatio& ratio,
                                 const S3QuadratureSpec& spec, double tolerance);
IdentityCheck check_full_identity(int n_max, int m_max, const S3QuadratureSpec& spec,
                                  double tolerance);
IdentityCheck check_fock_reconstruction(int n, int m, const S3QuadratureSpec& spec,
                                        double tolerance);
/// weighted: target 1; unweighted: target 1/(n+m+1). Off-diagonals target 0.
IdentityCheck check_schrodinger_identity(int n_max, int m_max, const S3QuadratureSpec& s3,
                                         const PlaneQuadratureSpec& plane, bool weighted,
                                         double tolerance);
IdentityCheck check_coherent1d_identity(int n_max, const PlaneQuadratureSpec& plane,
                                        double tolerance);

}  // namespace cs2d::identity
