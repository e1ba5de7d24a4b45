#pragma once

#include "apdlr/grid.hpp"
#include "apdlr/operators.hpp"
#include "apdlr/trajectory.hpp"

namespace apdlr {

/// One step of the micro-macro IMEX scheme: streaming and the D+rho source
/// explicit, scattering implicit (an exact scalar division per interface),
/// then the density update driven by the new first moment:
///
///   g^{n+1} = [g^n - (dt/eps) L g^n - (dt/eps^2) a D+rho^n] / (1 + dt sigma / eps^2)
///   rho^{n+1} = rho^n - dt a_0 D- g_1^{n+1}
///
/// Throws NumericalError on non-finite output.
FullState full_step(const FullState& state, const FluxOperators& ops, const Grid& grid,
                    const SigmaField& sigma, double eps, double dt);

/// Marches the full P_N system to problem.t_end with the CFL step.
Trajectory run_full(const Problem& problem);

}  // namespace apdlr
