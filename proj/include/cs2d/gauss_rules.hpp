#pragma once

#include <vector>

namespace cs2d {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 2n - 1.
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// n-point Gauss-Laguerre rule for int_0^inf e^{-t} f(t) dt.
/// Nodes start from the Golub-Welsch eigenvalues and are Newton-polished on
/// the Laguerre recurrence; n is capped at 150 to keep L_{n+1} finite.
QuadratureRule gauss_laguerre(int n);

}  // namespace cs2d
