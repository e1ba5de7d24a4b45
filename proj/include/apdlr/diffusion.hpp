#pragma once

#include <Eigen/Dense>

#include "apdlr/grid.hpp"
#include "apdlr/trajectory.hpp"

namespace apdlr {

/// Explicit step of the limit equation rho_t = (1/3) d/dx (sigma^{-1} d rho/dx)
/// on the kinetic scheme's staggered stencils:
///
///   rho^{n+1} = rho^n + (dt/3) D-( sigma^{-1}_{j+1/2} D+rho^n )
///
/// with sigma^{-1} sampled at interfaces, i.e. the update the micro-macro
/// scheme reduces to once g = -(1/sigma) D+rho a.
Eigen::VectorXd diffusion_step(const Eigen::VectorXd& rho, const SigmaField& sigma,
                               const Grid& grid, double dt);

/// Marches the diffusion limit with the parabolic part of the CFL bound
/// (cfl_dt at eps = 0). Energy samples carry ||rho||^2.
Trajectory run_diffusion(const Problem& problem);

}  // namespace apdlr
