#include "apdlr/diffusion.hpp"

#include <stdexcept>

#include "apdlr/cfl.hpp"
#include "apdlr/stencils.hpp"
#include "time_loop.hpp"

namespace apdlr {

Eigen::VectorXd diffusion_step(const Eigen::VectorXd& rho, const SigmaField& sigma,
                               const Grid& grid, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("diffusion_step: dt must be positive");
  }
  const Eigen::VectorXd flux =
      (interface_gradient(rho, grid).array() / sigma.values().array()).matrix();
  Eigen::VectorXd out = rho + (dt / 3.0) * midpoint_divergence(flux, grid);
  require_finite(out, "diffusion_step");
  return out;
}

Trajectory run_diffusion(const Problem& problem) {
  Trajectory traj;
  traj.cfl = cfl_dt(problem.ops.quad, problem.ops.N, 0.0, problem.grid.dx(),
                    problem.sigma.sigma0(), problem.cfl_safety);
  detail::Recorder recorder(traj, problem.output_times, problem.t_end);
  Eigen::VectorXd rho = problem.initial.rho;
  double time = problem.initial.time;
  std::size_t steps = 0;
  try {
    steps = detail::march(
        problem.initial.time, problem.t_end, traj.cfl.dt,
        [&](double h) { rho = diffusion_step(rho, problem.sigma, problem.grid, h); },
        [&](std::size_t n, double t) {
          time = t;
          recorder.observe(n, t, rho, midpoint_norm_sq(rho, problem.grid));
        });
  } catch (const NumericalError& err) {
    throw SolverFailure(err, std::move(traj));
  }
  recorder.finish(steps, time, rho);
  traj.final_state = FullState(
      rho, Eigen::MatrixXd::Zero(problem.grid.interface_count(), problem.ops.N), time);
  return traj;
}

}  // namespace apdlr
