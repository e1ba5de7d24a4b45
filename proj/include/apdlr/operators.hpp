#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "apdlr/quadrature.hpp"

namespace apdlr {

/// Flux and stabilization matrices of the micro-macro P_N system with N
/// microscopic moments (degrees 1..N), factorized through the (N+1)-point
/// Gauss-Legendre rule:
///
///   A    = T M T^T          (symmetric tridiagonal)
///   |A|  = T |M| T^T        (not the Roe matrix of A)
///   A^+- = T (M +- |M|) T^T / 2
///
/// with T_ik = sqrt(w_k) p_i(mu_k), i = 1..N, and M = diag(mu_k).
struct FluxOperators {
  std::size_t N = 0;
  QuadratureSet quad;
  Eigen::MatrixXd A;
  Eigen::MatrixXd absA;
  Eigen::MatrixXd Aplus;
  Eigen::MatrixXd Aminus;
  /// Macro-micro coupling (a_0, 0, ..., 0).
  Eigen::VectorXd a;
  /// N x (N+1), rows p_1..p_N.
  Eigen::MatrixXd T;
  /// (N+1) x (N+1), rows p_0..p_N. Orthogonal.
  Eigen::MatrixXd Tf;
  /// (0, a_0, 0, ..., 0), length N+1.
  Eigen::VectorXd af;
  double a0 = 0.0;

  /// diag(mu_k) as a vector.
  Eigen::VectorXd mu() const;
};

/// Throws std::invalid_argument for N == 0.
FluxOperators build_operators(std::size_t N);

/// Tridiagonal N x N matrix with off-diagonal a_1 .. a_{N-1}, built from the
/// recurrence coefficients directly (no quadrature).
Eigen::MatrixXd analytic_flux_matrix(std::size_t N);

/// |A| from the eigendecomposition of A (the Roe construction). Only used
/// for contrast with the quadrature-based stabilization.
Eigen::MatrixXd roe_matrix(const Eigen::MatrixXd& A);

}  // namespace apdlr
