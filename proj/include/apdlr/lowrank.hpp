#pragma once

#include <Eigen/Dense>

namespace apdlr {

/// Rank-r factorization g = X S V^T of the microscopic field.
/// X: interfaces x r and V: moments x r, both with Euclidean-orthonormal
/// columns. Only the product is meaningful; (XQ1, Q1^T S Q2, VQ2) is the
/// same state for any orthogonal Q1, Q2.
struct LowRankState {
  Eigen::MatrixXd X;
  Eigen::MatrixXd S;
  Eigen::MatrixXd V;

  Eigen::Index rank() const { return S.rows(); }
  Eigen::MatrixXd reconstruct() const { return X * S * V.transpose(); }
};

struct QrResult {
  Eigen::MatrixXd Q;
  /// Upper triangular with non-negative diagonal.
  Eigen::MatrixXd R;
  /// True if some columns of the input were (numerically) dependent and Q
  /// had to be completed with canonical directions.
  bool deficient = false;
  Eigen::Index numerical_rank = 0;
};

/// Thin QR of a tall matrix B (rows >= cols) by Gram-Schmidt with
/// reorthogonalization. Columns whose remainder falls below 1e-13 ||B||_F
/// get R_jj = 0 and are replaced by canonical unit vectors orthogonalized
/// against the rest, in index order, so Q always has orthonormal columns.
QrResult orthonormalize(const Eigen::MatrixXd& B);

/// Truncated SVD of g0 to rank r. For g0 == 0 the factors fall back to the
/// first r discrete cosine modes on the interfaces, the first r canonical
/// moment vectors, and S = 0. Throws std::invalid_argument unless
/// 1 <= r <= min(rows, cols).
LowRankState init_lowrank(const Eigen::MatrixXd& g0, Eigen::Index r);

}  // namespace apdlr
