#pragma once

#include <Eigen/Dense>

#include "apdlr/grid.hpp"
#include "apdlr/lowrank.hpp"
#include "apdlr/operators.hpp"
#include "apdlr/trajectory.hpp"

namespace apdlr {

// Fixed-rank basis-update & Galerkin (BUG) integrator for the microscopic
// field of the micro-macro system. Sums over space in the reduced operators
// are plain sums over interfaces (no dx weight), so W = sigma I for constant
// sigma with Euclidean-orthonormal X. All steps freeze rho at time level n.

struct KStepResult {
  /// K^{n+1} before orthonormalization (interfaces x r).
  Eigen::MatrixXd K;
  Eigen::MatrixXd X;
  /// X^{n+1,T} X^n
  Eigen::MatrixXd Mproj;
  bool deficient = false;
};

struct LStepResult {
  /// L^{n+1} before orthonormalization (moments x r).
  Eigen::MatrixXd L;
  Eigen::MatrixXd V;
  /// V^{n+1,T} V^n
  Eigen::MatrixXd Nproj;
  bool deficient = false;
};

/// Spatial basis update. K = X S evolves under the streaming operator
/// projected on V; scattering is implicit (rowwise division).
KStepResult k_step(const LowRankState& lr, const Eigen::VectorXd& rho, const FluxOperators& ops,
                   const Grid& grid, const SigmaField& sigma, double eps, double dt);

/// Moment basis update. L = V S^T; scattering is implicit through the
/// sigma-weighted Gram matrix W = X^T diag(sigma) X (SPD solve).
LStepResult l_step(const LowRankState& lr, const Eigen::VectorXd& rho, const FluxOperators& ops,
                   const Grid& grid, const SigmaField& sigma, double eps, double dt);

/// Galerkin step for the coefficients in the new bases, starting from
/// Mproj S^n Nproj^T.
Eigen::MatrixXd s_step(const LowRankState& lr, const Eigen::MatrixXd& X_new,
                       const Eigen::MatrixXd& V_new, const Eigen::MatrixXd& Mproj,
                       const Eigen::MatrixXd& Nproj, const Eigen::VectorXd& rho,
                       const FluxOperators& ops, const Grid& grid, const SigmaField& sigma,
                       double eps, double dt);

struct DlraOptions {
  /// Run the K and L steps on separate threads. They share no mutable
  /// state, so the result is identical either way.
  bool concurrent_basis_update = true;
};

struct DlraStepResult {
  LowRankState lr;
  Eigen::VectorXd rho;
  bool deficient = false;
};

/// K and L steps, then the S step, then the density update with the
/// reconstructed first moment X S V^T e_1.
DlraStepResult dlra_step(const LowRankState& lr, const Eigen::VectorXd& rho,
                         const FluxOperators& ops, const Grid& grid, const SigmaField& sigma,
                         double eps, double dt, const DlraOptions& options = {});

/// e = ||rho||^2 + eps^2 ||X S V^T||^2, using ||X S V^T||_F = ||S||_F.
double lowrank_energy(const Eigen::VectorXd& rho, const LowRankState& lr, double eps,
                      const Grid& grid);

/// Marches the low-rank scheme at fixed rank. The initial microscopic field
/// is truncated with init_lowrank.
Trajectory run_dlra(const Problem& problem, Eigen::Index rank, const DlraOptions& options = {});

}  // namespace apdlr
