#include "apdlr/lowrank.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace apdlr {

namespace {

constexpr double kDeficiencyTol = 1e-13;

// Projects v onto the orthogonal complement of Q's first `cols` columns,
// repeating while a pass removes more than half of the remaining norm.
// Accumulates the removed coefficients into `coeff` when given.
void orthogonalize_against(const Eigen::MatrixXd& Q, Eigen::Index cols, Eigen::VectorXd& v,
                           Eigen::VectorXd* coeff) {
  if (cols == 0) return;
  const auto basis = Q.leftCols(cols);
  for (int pass = 0; pass < 3; ++pass) {
    const double before = v.norm();
    const Eigen::VectorXd c = basis.transpose() * v;
    v.noalias() -= basis * c;
    if (coeff) coeff->head(cols) += c;
    if (pass >= 1 && v.norm() > 0.5 * before) break;
  }
}

}  // namespace

QrResult orthonormalize(const Eigen::MatrixXd& B) {
  const Eigen::Index n = B.rows();
  const Eigen::Index r = B.cols();
  if (r > n) {
    throw std::invalid_argument("orthonormalize: need rows >= cols, got " + std::to_string(n) +
                                "x" + std::to_string(r));
  }
  QrResult out;
  out.Q = Eigen::MatrixXd::Zero(n, r);
  out.R = Eigen::MatrixXd::Zero(r, r);
  const double tol = kDeficiencyTol * B.norm();
  std::vector<Eigen::Index> missing;

  for (Eigen::Index j = 0; j < r; ++j) {
    Eigen::VectorXd v = B.col(j);
    Eigen::VectorXd coeff = Eigen::VectorXd::Zero(r);
    orthogonalize_against(out.Q, j, v, &coeff);
    out.R.col(j).head(j) = coeff.head(j);
    const double nv = v.norm();
    if (nv <= tol || nv == 0.0) {
      missing.push_back(j);
    } else {
      out.Q.col(j) = v / nv;
      out.R(j, j) = nv;
    }
  }
  out.numerical_rank = r - static_cast<Eigen::Index>(missing.size());
  out.deficient = !missing.empty();

  // Unfilled columns of Q are still zero, so they do not disturb the
  // projections below.
  Eigen::Index candidate = 0;
  for (const Eigen::Index j : missing) {
    for (; candidate < n; ++candidate) {
      Eigen::VectorXd e = Eigen::VectorXd::Unit(n, candidate);
      orthogonalize_against(out.Q, r, e, nullptr);
      const double ne = e.norm();
      if (ne > 0.5) {
        out.Q.col(j) = e / ne;
        ++candidate;
        break;
      }
    }
  }
  return out;
}

LowRankState init_lowrank(const Eigen::MatrixXd& g0, Eigen::Index r) {
  const Eigen::Index n = g0.rows();
  const Eigen::Index m = g0.cols();
  if (r < 1 || r > std::min(n, m)) {
    throw std::invalid_argument("init_lowrank: rank " + std::to_string(r) +
                                " outside [1, " + std::to_string(std::min(n, m)) + "]");
  }
  LowRankState lr;
  if (g0.norm() == 0.0) {
    Eigen::MatrixXd modes(n, r);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index k = 0; k < r; ++k) {
        modes(i, k) = std::cos(std::numbers::pi * static_cast<double>(k) *
                               (static_cast<double>(i) + 0.5) / static_cast<double>(n));
      }
    }
    lr.X = orthonormalize(modes).Q;
    lr.V = Eigen::MatrixXd::Identity(m, r);
    lr.S = Eigen::MatrixXd::Zero(r, r);
    return lr;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(g0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  lr.X = orthonormalize(svd.matrixU().leftCols(r)).Q;
  lr.V = orthonormalize(svd.matrixV().leftCols(r)).Q;
  // Project instead of copying singular values so that any re-orthonormalization
  // above is absorbed into S.
  lr.S = lr.X.transpose() * g0 * lr.V;
  return lr;
}

}  // namespace apdlr
