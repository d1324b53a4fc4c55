#include "cs2d/gauss_rules.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <utility>

#include "cs2d/errors.hpp"

namespace cs2d {

namespace {

// P_n(x) and P_n'(x).
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// L_{n-1}(x), L_n(x), L_{n+1}(x).
struct LaguerreTriple {
  double prev;
  double cur;
  double next;
};

LaguerreTriple laguerre(int n, double x) {
  double lm1 = 0.0;
  double l0 = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double l1 = ((2.0 * k + 1.0 - x) * l0 - k * lm1) / (k + 1.0);
    if (k == n) return {lm1, l0, l1};
    lm1 = l0;
    l0 = l1;
  }
  return {lm1, l0, 0.0};
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("Gauss-Legendre needs at least one node");
  if (!(a < b)) throw DomainError("Gauss-Legendre interval must satisfy a < b");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const auto [p, d] = legendre(n, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = mid - half * x;
    rule.nodes[hi] = mid + half * x;
    rule.weights[lo] = half * w;
    rule.weights[hi] = half * w;
  }
  return rule;
}

QuadratureRule gauss_laguerre(int n) {
  if (n < 1) throw DomainError("Gauss-Laguerre needs at least one node");
  if (n > 150) throw DomainError("Gauss-Laguerre limited to 150 nodes");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    jacobi(i, i) = 2.0 * i + 1.0;
    if (i + 1 < n) jacobi(i, i + 1) = jacobi(i + 1, i) = i + 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi, Eigen::EigenvaluesOnly);

  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = eig.eigenvalues()(i);
    for (int it = 0; it < 50; ++it) {
      const auto l = laguerre(n, x);
      const double d = n * (l.cur - l.prev) / x;
      const double dx = l.cur / d;
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::max(1.0, x)) break;
    }
    const auto l = laguerre(n, x);
    const double denom = (n + 1.0) * l.next;
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = x / (denom * denom);
  }
  return rule;
}

}  // namespace cs2d
