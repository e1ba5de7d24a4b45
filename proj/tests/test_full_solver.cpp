#include <doctest.h>

#include <cmath>
#include <random>

#include "apdlr/benchmark.hpp"
#include "apdlr/full_solver.hpp"
#include "apdlr/stencils.hpp"
#include "support.hpp"

using namespace apdlr;

namespace {

Problem plane_source(double eps, std::size_t N, Eigen::Index nx, double t_end) {
  Grid grid(-1.5, 1.5, nx, Boundary::vacuum);
  FluxOperators ops = build_operators(N);
  FullState initial = plane_source_initial(grid, 0.03, N);
  SigmaField sigma(grid, 1.0);
  return Problem{grid, sigma, ops, eps, initial, t_end, 1.0, {}};
}

std::size_t first_increase(const Trajectory& tr, double rel_tol) {
  for (std::size_t n = 1; n < tr.energy.size(); ++n) {
    if (tr.energy[n].e > tr.energy[n - 1].e * (1.0 + rel_tol)) return n;
  }
  return 0;
}

}  // namespace

TEST_CASE("constant density without microscopic part is a fixed point") {
  const Grid grid(0.0, 2.0, 40, Boundary::periodic);
  const auto ops = build_operators(6);
  const FullState state(Eigen::VectorXd::Constant(40, 3.7), Eigen::MatrixXd::Zero(40, 6));
  for (double eps : {1.0, 1e-5}) {
    const FullState next = full_step(state, ops, grid, SigmaField(grid, 1.0), eps, 1e-3);
    CHECK(next.rho == state.rho);
    CHECK(next.g.isZero(0.0));
  }
}

TEST_CASE("one step from zero microscopic part is the pure source response") {
  std::mt19937_64 rng(31);
  const Grid grid(-1.0, 1.0, 25, Boundary::vacuum);
  const auto ops = build_operators(4);
  const SigmaField sigma(grid, 2.0);
  const Eigen::VectorXd rho = testing::random_vector(rng, 25);
  const double eps = 0.1, dt = 1e-3;
  const FullState next =
      full_step(FullState(rho, Eigen::MatrixXd::Zero(26, 4)), ops, grid, sigma, eps, dt);
  const double factor = -(dt / (eps * eps)) / (1.0 + dt * 2.0 / (eps * eps));
  const Eigen::MatrixXd expected = factor * interface_gradient(rho, grid) * ops.a.transpose();
  CHECK(testing::rel_diff(next.g, expected) <= 1e-14);
  const Eigen::VectorXd rho_expected = rho - dt * ops.a0 * midpoint_divergence(expected.col(0), grid);
  CHECK(testing::rel_diff(next.rho, rho_expected) <= 1e-14);
  CHECK(next.time == dt);
}

TEST_CASE("energy never increases at the CFL step") {
  for (double eps : {1.0, 1e-2, 1e-5}) {
    for (std::size_t N : {3u, 10u, 100u}) {
      CAPTURE(eps);
      CAPTURE(N);
      Problem problem = plane_source(eps, N, 120, 0.0);
      const double dt = cfl_dt(problem.ops.quad, N, eps, problem.grid.dx(), 1.0).dt;
      problem.t_end = 150 * dt;
      const Trajectory tr = run_full(problem);
      CHECK(tr.steps == 150);
      CHECK(first_increase(tr, 1e-13) == 0);
      CHECK(tr.energy.back().e < tr.energy.front().e);
    }
  }
}

TEST_CASE("implicit scattering contracts the microscopic field") {
  std::mt19937_64 rng(32);
  const Grid grid(0.0, 1.0, 64, Boundary::periodic);
  FluxOperators ops = build_operators(8);
  ops.a.setZero();
  const SigmaField sigma(grid, 1.0);
  const double eps = 1e-5;
  const double dt = cfl_dt(ops.quad, 8, eps, grid.dx(), 1.0).dt;
  FullState state(testing::random_vector(rng, 64), testing::random_matrix(rng, 64, 8));
  for (int n = 0; n < 50; ++n) {
    const FullState next = full_step(state, ops, grid, sigma, eps, dt);
    CHECK(next.g.norm() <= state.g.norm());
    state = next;
  }
}

TEST_CASE("stability bound is active: enlarged steps eventually gain energy") {
  // In the diffusive regime the explicit limit sits about 8.2x above the bound,
  // so safety 8 is reported only and safety 10 must lose stability.
  for (double safety : {8.0, 10.0}) {
    Problem problem = plane_source(1e-5, 20, 100, 0.0);
    problem.cfl_safety = safety;
    const double dt = cfl_dt(problem.ops.quad, 20, 1e-5, problem.grid.dx(), 1.0, safety).dt;
    problem.t_end = 400 * dt;
    std::size_t increase = 0;
    try {
      increase = first_increase(run_full(problem), 0.0);
    } catch (const SolverFailure& failure) {
      increase = first_increase(failure.partial(), 0.0);
    }
    MESSAGE("safety " << safety << ": first energy increase at step " << increase
                      << " (0 = none in 400 steps)");
    if (safety == 10.0) CHECK(increase > 0);
  }
}

TEST_CASE("run bookkeeping") {
  SUBCASE("zero final time returns the initial state") {
    const Problem problem = plane_source(1.0, 5, 50, 0.0);
    const Trajectory tr = run_full(problem);
    CHECK(tr.steps == 0);
    REQUIRE(tr.energy.size() == 1);
    CHECK(tr.energy[0].delta_e == 0.0);
    CHECK(tr.final_state.rho == problem.initial.rho);
    REQUIRE(tr.profiles.size() == 1);
    CHECK_FALSE(tr.profiles[0].requested);
  }
  SUBCASE("last step lands on the final time and snapshots follow the first step past a request") {
    Problem problem = plane_source(1.0, 5, 50, 0.0);
    const double dt = cfl_dt(problem.ops.quad, 5, 1.0, problem.grid.dx(), 1.0).dt;
    problem.t_end = 10.5 * dt;
    problem.output_times = {3.2 * dt, 0.0};
    const Trajectory tr = run_full(problem);
    CHECK(tr.steps == 11);
    CHECK(tr.final_state.time == problem.t_end);
    CHECK(tr.energy.back().t == problem.t_end);
    REQUIRE(tr.profiles.size() == 3);
    CHECK(tr.profiles[0].requested_time == 0.0);
    CHECK(tr.profiles[0].step == 0);
    CHECK(tr.profiles[1].step == 4);
    CHECK(tr.profiles[1].time >= 3.2 * dt);
    CHECK(tr.profiles[2].rho == tr.final_state.rho);
  }
}

TEST_CASE("runs are deterministic and mirror-symmetric") {
  const Problem problem = plane_source(1.0, 100, 502, 1.0);
  const Trajectory a = run_full(problem);
  const Trajectory b = run_full(problem);
  CHECK(a.final_state.rho == b.final_state.rho);
  CHECK(a.final_state.g == b.final_state.g);
  const Eigen::VectorXd& rho = a.final_state.rho;
  const double asym = (rho - rho.reverse()).cwiseAbs().maxCoeff();
  CHECK(asym <= 1e-10 * rho.cwiseAbs().maxCoeff());
  CHECK(first_increase(a, 1e-13) == 0);
}

TEST_CASE("blow-up is reported with the failing step and partial trace") {
  Problem problem = plane_source(1e-5, 10, 40, 0.0);
  problem.cfl_safety = 50.0;
  problem.t_end = 5000 * cfl_dt(problem.ops.quad, 10, 1e-5, problem.grid.dx(), 1.0, 50.0).dt;
  try {
    run_full(problem);
    FAIL("expected a numerical failure");
  } catch (const SolverFailure& failure) {
    REQUIRE(failure.step().has_value());
    CHECK(*failure.step() >= 1);
    CHECK(failure.partial().energy.size() == *failure.step());
    CHECK(failure.op().rfind("full_step", 0) == 0);
  }
}
