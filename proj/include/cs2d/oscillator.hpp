#pragma once

// Closed-form harmonic-oscillator eigenfunctions and shared numerics.
// Natural units: hbar = m = omega = 1.

#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace cs2d {

using Complex = std::complex<double>;

inline constexpr int kDefaultMaxOrder = 1024;
inline constexpr double kDefaultTailEpsilon = 1e-12;

/// Fock label |n, m> of a 2D number eigenstate.
struct ModeIndex2D {
  int n = 0;
  int m = 0;

  ModeIndex2D() = default;
  ModeIndex2D(int n_, int m_);

  /// Isotropic eigenvalue n + m + 1.
  [[nodiscard]] int energy() const { return n + m + 1; }

  auto operator<=>(const ModeIndex2D&) const = default;
  bool operator==(const ModeIndex2D&) const = default;
};

/// Sparse expansion of a state in the |n, m> basis. Amplitudes with
/// magnitude below kDropThreshold are never stored.
class CoeffVector {
 public:
  static constexpr double kDropThreshold = 1e-15;
  using Map = std::map<ModeIndex2D, Complex>;

  /// Stores `value` at `idx`, replacing any previous entry. Small values erase.
  void set(const ModeIndex2D& idx, Complex value);
  [[nodiscard]] Complex at(const ModeIndex2D& idx) const;

  [[nodiscard]] const Map& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }

  /// Sum of stored |c|^2.
  [[nodiscard]] double captured_norm() const;

  /// Largest n and m over stored entries (0 when empty).
  [[nodiscard]] ModeIndex2D extent() const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  Map entries_;
};

/// <bra|ket> over the union of supports.
Complex inner_product(const CoeffVector& bra, const CoeffVector& ket);

/// Largest componentwise |a - b| over the union of supports.
double max_abs_difference(const CoeffVector& a, const CoeffVector& b);

// ---------------------------------------------------------------------------
// Hermite functions

/// psi_n(x) = (2^n n!)^{-1/2} pi^{-1/4} e^{-x^2/2} H_n(x) by the normalized
/// three-term recurrence, with a running log scale so large |x| does not
/// underflow before the oscillatory region is reached.
double hermite_psi(int n, double x, int max_order = kDefaultMaxOrder);

/// psi_0(x) .. psi_{n_max}(x) in one pass.
std::vector<double> hermite_psi_table(int n_max, double x, int max_order = kDefaultMaxOrder);

/// psi_n(x) psi_m(y).
double psi_2d(const ModeIndex2D& idx, double x, double y, int max_order = kDefaultMaxOrder);

// ---------------------------------------------------------------------------
// Log-space combinatorics and Poisson weights

/// ln(k!) for k >= 0.
double log_factorial(int k);

/// ln sqrt(binom(nu, n)).
double log_binomial_sqrt(int nu, int n);

/// e^{-|z|^2/2} z^n / sqrt(n!), evaluated as magnitude and phase separately.
Complex coherent1d_coeff(Complex z, int n);

/// ln of e^{-lambda} lambda^k / k!; -inf for the impossible cases at lambda = 0.
double poisson_log_pmf(double lambda, int k);
double poisson_pmf(double lambda, int k);

/// sum_{k < terms} pmf(k), accumulated smallest-first.
double poisson_partial_sum(double lambda, int terms);

/// sum_{k >= terms} pmf(k), accumulated smallest-first.
double poisson_tail(double lambda, int terms);

/// Smallest number of kept terms N >= 1 with poisson_tail(lambda, N) < eps.
int truncation_terms(double lambda, double eps = kDefaultTailEpsilon);

/// Throws NonFiniteError when either component is NaN or infinite.
void require_finite(Complex z, const char* what);
void require_finite(double v, const char* what);

}  // namespace cs2d
