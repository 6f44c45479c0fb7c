#pragma once

#include <vector>

namespace traffic {

/// Quadrature rule against the normalized gamma probability density
/// Phi(s) = s^(alpha-1) e^(-s) / Gamma(alpha) on [0, inf).
///
/// Weights are normalized so that sum(weights) == 1; a polynomial of degree
/// <= 2n-1 is integrated exactly (up to round-off).
struct QuadratureRule {
  double alpha = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights of the n-point generalized Gauss-Laguerre rule for the
/// gamma weight with shape alpha. Computed by the Golub-Welsch eigenvalue
/// method and cached per (alpha, n); thread-safe.
const QuadratureRule& gamma_quadrature(double alpha, int n);

}  // namespace traffic
