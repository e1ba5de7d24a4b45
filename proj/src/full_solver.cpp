#include "apdlr/full_solver.hpp"

#include <stdexcept>

#include "apdlr/cfl.hpp"
#include "apdlr/stencils.hpp"
#include "time_loop.hpp"

namespace apdlr {

namespace {

void check_shapes(const FullState& state, const FluxOperators& ops, const Grid& grid) {
  if (state.rho.size() != grid.nx() || state.g.rows() != grid.interface_count() ||
      state.g.cols() != static_cast<Eigen::Index>(ops.N)) {
    throw std::invalid_argument("full_step: state shape does not match grid/moment count");
  }
}

}  // namespace

FullState full_step(const FullState& state, const FluxOperators& ops, const Grid& grid,
                    const SigmaField& sigma, double eps, double dt) {
  if (!(dt > 0.0) || !(eps > 0.0)) {
    throw std::invalid_argument("full_step: dt and eps must be positive");
  }
  check_shapes(state, ops, grid);
  const double eps2 = eps * eps;

  Eigen::MatrixXd g = state.g;
  g.noalias() -= (dt / eps) * advection_apply(ops, state.g, grid);
  require_finite(g, "full_step/advection");
  const Eigen::VectorXd grad = interface_gradient(state.rho, grid);
  g.noalias() -= (dt / eps2) * grad * ops.a.transpose();
  const Eigen::VectorXd damping =
      (1.0 + (dt / eps2) * sigma.values().array()).inverse().matrix();
  g = damping.asDiagonal() * g;
  require_finite(g, "full_step/scattering");

  Eigen::VectorXd rho = state.rho - (dt * ops.a0) * midpoint_divergence(g.col(0), grid);
  require_finite(rho, "full_step/macro");
  return FullState(std::move(rho), std::move(g), state.time + dt);
}

Trajectory run_full(const Problem& problem) {
  Trajectory traj;
  traj.cfl = cfl_dt(problem.ops.quad, problem.ops.N, problem.eps, problem.grid.dx(),
                    problem.sigma.sigma0(), problem.cfl_safety);
  detail::Recorder recorder(traj, problem.output_times, problem.t_end);
  FullState state = problem.initial;
  std::size_t steps = 0;
  try {
    steps = detail::march(
        problem.initial.time, problem.t_end, traj.cfl.dt,
        [&](double h) {
          state = full_step(state, problem.ops, problem.grid, problem.sigma, problem.eps, h);
        },
        [&](std::size_t n, double t) {
          state.time = t;
          recorder.observe(n, t, state.rho, energy(state, problem.eps, problem.grid));
        });
  } catch (const NumericalError& err) {
    throw SolverFailure(err, std::move(traj));
  }
  recorder.finish(steps, state.time, state.rho);
  traj.final_state = std::move(state);
  return traj;
}

}  // namespace apdlr
