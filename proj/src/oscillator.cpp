#include "cs2d/oscillator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cs2d/errors.hpp"

namespace cs2d {

namespace {

constexpr int kLogFactorialTable = 4096;

const std::array<double, kLogFactorialTable>& log_factorial_table() {
  static const std::array<double, kLogFactorialTable> table = [] {
    std::array<double, kLogFactorialTable> t{};
    for (int k = 0; k < kLogFactorialTable; ++k) {
      t[static_cast<std::size_t>(k)] = std::lgamma(static_cast<double>(k) + 1.0);
    }
    return t;
  }();
  return table;
}

double sum_ascending(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

// Rescale bounds for the log-scaled recurrence.
constexpr double kBig = 1e150;
constexpr double kLogBig = 345.38776394910684;  // ln(1e150)

void check_order(int n, int max_order) {
  if (n < 0) throw DomainError("Hermite order must be non-negative");
  if (n > max_order) {
    throw OrderOverflowError("Hermite order " + std::to_string(n) + " exceeds cap " +
                             std::to_string(max_order));
  }
}

}  // namespace

ModeIndex2D::ModeIndex2D(int n_, int m_) : n(n_), m(m_) {
  if (n_ < 0 || m_ < 0) throw DomainError("Fock indices must be non-negative");
}

void CoeffVector::set(const ModeIndex2D& idx, Complex value) {
  require_finite(value, "coefficient");
  if (std::abs(value) < kDropThreshold) {
    entries_.erase(idx);
    return;
  }
  entries_[idx] = value;
}

Complex CoeffVector::at(const ModeIndex2D& idx) const {
  auto it = entries_.find(idx);
  return it == entries_.end() ? Complex{} : it->second;
}

double CoeffVector::captured_norm() const {
  std::vector<double> terms;
  terms.reserve(entries_.size());
  for (const auto& [idx, c] : entries_) terms.push_back(std::norm(c));
  return sum_ascending(terms);
}

ModeIndex2D CoeffVector::extent() const {
  ModeIndex2D e;
  for (const auto& [idx, c] : entries_) {
    e.n = std::max(e.n, idx.n);
    e.m = std::max(e.m, idx.m);
  }
  return e;
}

Complex inner_product(const CoeffVector& bra, const CoeffVector& ket) {
  Complex s{};
  const auto& small = bra.size() <= ket.size() ? bra : ket;
  for (const auto& [idx, c] : small) {
    s += std::conj(bra.at(idx)) * ket.at(idx);
  }
  return s;
}

double max_abs_difference(const CoeffVector& a, const CoeffVector& b) {
  double worst = 0.0;
  for (const auto& [idx, c] : a) worst = std::max(worst, std::abs(c - b.at(idx)));
  for (const auto& [idx, c] : b) worst = std::max(worst, std::abs(a.at(idx) - c));
  return worst;
}

std::vector<double> hermite_psi_table(int n_max, double x, int max_order) {
  check_order(n_max, max_order);
  require_finite(x, "x");

  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  // Values are carried as scaled * exp(log_scale).
  double log_scale = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  double prev = 0.0;
  double cur = 1.0;
  out[0] = std::exp(log_scale);
  for (int n = 1; n <= n_max; ++n) {
    const double next = x * std::sqrt(2.0 / n) * cur - std::sqrt((n - 1.0) / n) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      log_scale += kLogBig;
    }
    out[static_cast<std::size_t>(n)] = log_scale < -745.0 ? 0.0 : cur * std::exp(log_scale);
  }
  return out;
}

double hermite_psi(int n, double x, int max_order) {
  return hermite_psi_table(n, x, max_order).back();
}

double psi_2d(const ModeIndex2D& idx, double x, double y, int max_order) {
  return hermite_psi(idx.n, x, max_order) * hermite_psi(idx.m, y, max_order);
}

double log_factorial(int k) {
  if (k < 0) throw DomainError("factorial of a negative integer");
  if (k < kLogFactorialTable) return log_factorial_table()[static_cast<std::size_t>(k)];
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double log_binomial_sqrt(int nu, int n) {
  if (nu < 0 || n < 0 || n > nu) {
    throw DomainError("binomial requires 0 <= n <= nu (got nu=" + std::to_string(nu) +
                      ", n=" + std::to_string(n) + ")");
  }
  return 0.5 * (log_factorial(nu) - log_factorial(n) - log_factorial(nu - n));
}

Complex coherent1d_coeff(Complex z, int n) {
  require_finite(z, "z");
  if (n < 0) throw DomainError("Fock index must be non-negative");
  const double r = std::abs(z);
  if (r == 0.0) return n == 0 ? Complex{1.0, 0.0} : Complex{};
  const double log_mag = -0.5 * r * r + n * std::log(r) - 0.5 * log_factorial(n);
  return std::polar(std::exp(log_mag), n * std::arg(z));
}

double poisson_log_pmf(double lambda, int k) {
  if (lambda < 0.0 || k < 0) throw DomainError("Poisson requires lambda >= 0 and k >= 0");
  if (lambda == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return -lambda + k * std::log(lambda) - log_factorial(k);
}

double poisson_pmf(double lambda, int k) { return std::exp(poisson_log_pmf(lambda, k)); }

double poisson_partial_sum(double lambda, int terms) {
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(std::max(terms, 0)));
  for (int k = 0; k < terms; ++k) t.push_back(poisson_pmf(lambda, k));
  return sum_ascending(t);
}

double poisson_tail(double lambda, int terms) {
  if (terms <= 0) return 1.0;
  std::vector<double> t;
  double running = 0.0;
  for (int k = terms;; ++k) {
    const double p = poisson_pmf(lambda, k);
    t.push_back(p);
    running += p;
    if (k > lambda && (p == 0.0 || p < 1e-20 * running)) break;
  }
  return sum_ascending(t);
}

int truncation_terms(double lambda, double eps) {
  require_finite(lambda, "lambda");
  if (lambda < 0.0) throw DomainError("Poisson mean must be non-negative");
  if (!(eps > 0.0)) throw DomainError("tail tolerance must be positive");
  // Below the mean the tail is at least about one half.
  int n = lambda >= 1.0 ? static_cast<int>(std::floor(lambda)) : 1;
  n = std::max(n, 1);
  while (poisson_tail(lambda, n) >= eps) ++n;
  return n;
}

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NonFiniteError(std::string("non-finite ") + what);
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NonFiniteError(std::string("non-finite ") + what);
}

}  // namespace cs2d
