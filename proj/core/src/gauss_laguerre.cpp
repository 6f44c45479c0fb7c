#include "traffic/gauss_laguerre.hpp"

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "traffic/errors.hpp"

namespace traffic {

namespace {

QuadratureRule build_rule(double alpha, int n) {
  if (!(alpha > 0.0)) throw DomainError("gamma_quadrature: alpha must be > 0");
  if (n < 1) throw DomainError("gamma_quadrature: need at least one node");

  // Jacobi matrix of the generalized Laguerre polynomials with parameter
  // alpha - 1:  diag_k = 2k + alpha,  offdiag_k = sqrt(k (k + alpha - 1)).
  Eigen::VectorXd diag(n), subdiag(n > 1 ? n - 1 : 1);
  for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + alpha;
  for (int k = 1; k < n; ++k) subdiag[k - 1] = std::sqrt(k * (k + alpha - 1.0));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag.head(std::max(n - 1, 0)),
                                Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw AccuracyError("gamma_quadrature: tridiagonal eigensolver failed", 0.0, 0.0);

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    rule.nodes[j] = solver.eigenvalues()[j];
    const double q0 = solver.eigenvectors()(0, j);
    // First eigenvector component squared times mu0; mu0 = 1 for the
    // normalized gamma density.
    rule.weights[j] = q0 * q0;
  }
  return rule;
}

}  // namespace

const QuadratureRule& gamma_quadrature(double alpha, int n) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, std::unique_ptr<QuadratureRule>> cache;

  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{alpha, n}];
  if (!slot) slot = std::make_unique<QuadratureRule>(build_rule(alpha, n));
  return *slot;
}

}  // namespace traffic
