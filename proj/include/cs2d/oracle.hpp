#pragma once

// Truncated Fock-space matrix engine. Every closed form elsewhere in the
// library is checked against quantities computed here from ladder matrices
// alone.
//
// Basis ordering is lexicographic in (n, m), n-major:
//   index(n, m) = n * (m_max + 1) + m.
// Operators are stored sparse (row-major); the ladder algebra never fills in
// more than a few diagonals, and dense storage is exposed on request.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <iosfwd>

#include "cs2d/oscillator.hpp"
#include "cs2d/params.hpp"

namespace cs2d::oracle {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

class TruncatedSpace {
 public:
  TruncatedSpace(int n_max, int m_max);

  /// Smallest space holding every stored mode of `coeffs` plus `margin`
  /// extra levels per mode.
  static TruncatedSpace covering(const CoeffVector& coeffs, int margin);

  [[nodiscard]] int n_max() const { return n_max_; }
  [[nodiscard]] int m_max() const { return m_max_; }
  [[nodiscard]] Eigen::Index dimension() const {
    return static_cast<Eigen::Index>(n_max_ + 1) * (m_max_ + 1);
  }
  [[nodiscard]] bool contains(const ModeIndex2D& idx) const {
    return idx.n <= n_max_ && idx.m <= m_max_;
  }
  [[nodiscard]] Eigen::Index index(const ModeIndex2D& idx) const {
    return static_cast<Eigen::Index>(idx.n) * (m_max_ + 1) + idx.m;
  }
  [[nodiscard]] ModeIndex2D mode(Eigen::Index i) const {
    return {static_cast<int>(i / (m_max_ + 1)), static_cast<int>(i % (m_max_ + 1))};
  }

  bool operator==(const TruncatedSpace&) const = default;

 private:
  int n_max_;
  int m_max_;
};

class TruncatedOperator {
 public:
  TruncatedOperator(TruncatedSpace space, SparseMatrix matrix);

  [[nodiscard]] const TruncatedSpace& space() const { return space_; }
  [[nodiscard]] const SparseMatrix& matrix() const { return matrix_; }
  [[nodiscard]] DenseMatrix dense() const { return DenseMatrix(matrix_); }
  [[nodiscard]] TruncatedOperator adjoint() const;

 private:
  TruncatedSpace space_;
  SparseMatrix matrix_;
};

class StateVector {
 public:
  StateVector(TruncatedSpace space, DenseVector amplitudes);

  /// Basis vector |n, m>.
  static StateVector basis(const TruncatedSpace& space, const ModeIndex2D& idx);
  /// Embeds `coeffs`; throws CutoffTooSmallError if any stored mode lies outside.
  static StateVector embed(const TruncatedSpace& space, const CoeffVector& coeffs);

  [[nodiscard]] const TruncatedSpace& space() const { return space_; }
  [[nodiscard]] const DenseVector& amplitudes() const { return amplitudes_; }
  [[nodiscard]] Complex at(const ModeIndex2D& idx) const;
  [[nodiscard]] CoeffVector to_coeffs() const;

 private:
  TruncatedSpace space_;
  DenseVector amplitudes_;
};

enum class Mode { x, y };
enum class Direction { raise, lower };
enum class Quadrature { x, px, y, py };

TruncatedOperator build_ladder(const TruncatedSpace& space, Mode mode, Direction direction);

/// alpha a_x+ + beta a_y+ (raise) or conj(alpha) a_x- + conj(beta) a_y- (lower).
TruncatedOperator build_generalized_ladder(const TruncatedSpace& space, const SU2Params& params,
                                           Direction direction);

/// X = (a+ + a-)/sqrt2, P = (a- - a+)/(sqrt2 i).
TruncatedOperator build_quadrature(const TruncatedSpace& space, Quadrature which);

/// a+ a- for one mode.
TruncatedOperator build_number(const TruncatedSpace& space, Mode mode);

/// Diagonal p (n + 1/2) + q (m + 1/2).
TruncatedOperator build_hamiltonian(const TruncatedSpace& space, const AnisotropyRatio& ratio);

/// Psi A+ - conj(Psi) A-.
TruncatedOperator displacement_generator(const TruncatedSpace& space, Complex psi,
                                         const SU2Params& params);

/// D(Psi) = exp(Psi A+ - conj(Psi) A-) as a full matrix (scaling and squaring
/// with a degree-13 Pade approximant). Throws CutoffTooSmallError when the
/// Poisson tail of |alpha Psi|^2 beyond n_max, or of |beta Psi|^2 beyond
/// m_max, is not below 1e-8.
TruncatedOperator displacement(const TruncatedSpace& space, Complex psi, const SU2Params& params);

/// D(Psi) |vec> without forming D: scaled Taylor series of the exponential
/// applied to the vector. Same cutoff check as displacement().
StateVector displace(const TruncatedSpace& space, Complex psi, const SU2Params& params,
                     const StateVector& vec);

/// Dense exponential by scaling and squaring, Pade order 13.
DenseMatrix matrix_exponential(const DenseMatrix& a);

/// exp(a) v by scaled Taylor series.
DenseVector exponential_action(const SparseMatrix& a, const DenseVector& v);

StateVector apply(const TruncatedOperator& op, const StateVector& vec);

/// <v|O|v> / <v|v>.
Complex expectation(const TruncatedOperator& op, const StateVector& vec);

/// <O^2> - <O>^2 with the normalization of expectation(); the imaginary part
/// must vanish to 1e-12 relative and is discarded (ContractError otherwise).
double variance(const TruncatedOperator& op, const StateVector& vec);

/// [a, b].
TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b);

/// Variances of X, Px, Y, Py of a coefficient vector, on a space two levels
/// wider than its support so second moments see no truncation.
QuadratureVariances oracle_variances(const CoeffVector& coeffs);

/// <a_x+ a_x- + a_y+ a_y- + 1>.
double oracle_number_energy(const CoeffVector& coeffs);

/// <H> for the p:q Hamiltonian.
double oracle_hamiltonian_energy(const CoeffVector& coeffs, const AnisotropyRatio& ratio);

/// CSV dump: one row per matrix row, each complex entry as two adjacent
/// columns (re, im).
void write_csv(std::ostream& os, const TruncatedOperator& op);
void write_csv(std::ostream& os, const StateVector& vec);

}  // namespace cs2d::oracle
