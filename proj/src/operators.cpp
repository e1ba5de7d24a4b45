#include "apdlr/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace apdlr {

Eigen::VectorXd FluxOperators::mu() const {
  return Eigen::Map<const Eigen::VectorXd>(quad.nodes.data(),
                                           static_cast<Eigen::Index>(quad.nodes.size()));
}

FluxOperators build_operators(std::size_t N) {
  if (N == 0) {
    throw std::invalid_argument("build_operators: need at least one microscopic moment");
  }
  FluxOperators ops;
  ops.N = N;
  ops.quad = gauss_legendre(N + 1);

  const auto n = static_cast<Eigen::Index>(N);
  ops.Tf.resize(n + 1, n + 1);
  for (Eigen::Index k = 0; k <= n; ++k) {
    const double mu = ops.quad.nodes[k];
    const double sw = std::sqrt(ops.quad.weights[k]);
    const auto p = eval_legendre_orthonormal_all(N, mu);
    for (Eigen::Index i = 0; i <= n; ++i) {
      ops.Tf(i, k) = sw * p[i];
    }
  }
  ops.T = ops.Tf.bottomRows(n);

  const Eigen::VectorXd mu = ops.mu();
  const Eigen::VectorXd abs_mu = mu.cwiseAbs();
  ops.A = ops.T * mu.asDiagonal() * ops.T.transpose();
  ops.absA = ops.T * abs_mu.asDiagonal() * ops.T.transpose();
  // Symmetrize away roundoff so downstream quadratic forms are exact in structure.
  ops.A = 0.5 * (ops.A + ops.A.transpose()).eval();
  ops.absA = 0.5 * (ops.absA + ops.absA.transpose()).eval();
  ops.Aplus = 0.5 * (ops.A + ops.absA);
  ops.Aminus = 0.5 * (ops.A - ops.absA);

  ops.a0 = recurrence_coeff(0);
  ops.a = Eigen::VectorXd::Zero(n);
  ops.a(0) = ops.a0;
  ops.af = Eigen::VectorXd::Zero(n + 1);
  ops.af(1) = ops.a0;
  return ops;
}

Eigen::MatrixXd analytic_flux_matrix(std::size_t N) {
  const auto n = static_cast<Eigen::Index>(N);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  // Row i holds degree i+1, so the coupling between degrees l and l+1 is a_l.
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double al = recurrence_coeff(static_cast<std::size_t>(i + 1));
    A(i, i + 1) = al;
    A(i + 1, i) = al;
  }
  return A;
}

Eigen::MatrixXd roe_matrix(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
  return eig.eigenvectors() * eig.eigenvalues().cwiseAbs().asDiagonal() *
         eig.eigenvectors().transpose();
}

}  // namespace apdlr
