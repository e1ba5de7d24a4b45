#include "apdlr/dlra.hpp"

#include <future>
#include <sstream>
#include <stdexcept>
#include <string>

#include "apdlr/cfl.hpp"
#include "apdlr/errors.hpp"
#include "apdlr/stencils.hpp"
#include "time_loop.hpp"

namespace apdlr {

namespace {

void check_lowrank(const LowRankState& lr, const Eigen::VectorXd& rho, const FluxOperators& ops,
                   const Grid& grid, double eps, double dt, const char* who) {
  if (!(eps > 0.0) || !(dt >= 0.0)) {
    throw std::invalid_argument(std::string(who) + ": eps must be positive and dt non-negative");
  }
  const Eigen::Index r = lr.rank();
  if (lr.S.cols() != r || lr.X.cols() != r || lr.V.cols() != r ||
      lr.X.rows() != grid.interface_count() || lr.V.rows() != static_cast<Eigen::Index>(ops.N) ||
      rho.size() != grid.nx()) {
    throw std::invalid_argument(std::string(who) + ": low-rank factors do not match grid/moments");
  }
}

// (I + c W) Y = rhs for symmetric positive definite I + cW.
Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& W, double c, const Eigen::MatrixXd& rhs,
                          const char* who) {
  const Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(W.rows(), W.cols()) + c * W;
  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) {
    const Eigen::VectorXd diag = system.diagonal();
    std::ostringstream msg;
    msg << "SPD solve failed (non-positive pivot); diagonal range [" << diag.minCoeff() << ", "
        << diag.maxCoeff() << "], dt/eps^2 = " << c;
    throw NumericalError(who, msg.str());
  }
  return llt.solve(rhs);
}

Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& X, const SigmaField& sigma) {
  Eigen::MatrixXd W = X.transpose() * sigma.values().asDiagonal() * X;
  return 0.5 * (W + W.transpose());
}

}  // namespace

KStepResult k_step(const LowRankState& lr, const Eigen::VectorXd& rho, const FluxOperators& ops,
                   const Grid& grid, const SigmaField& sigma, double eps, double dt) {
  check_lowrank(lr, rho, ops, grid, eps, dt, "k_step");
  const double eps2 = eps * eps;
  const Eigen::MatrixXd K = lr.X * lr.S;
  const Eigen::MatrixXd Ap = lr.V.transpose() * ops.Aplus * lr.V;
  const Eigen::MatrixXd Am = lr.V.transpose() * ops.Aminus * lr.V;

  KStepResult out;
  out.K = K;
  out.K.noalias() -= (dt / eps) * (d_minus(K, grid) * Ap);
  out.K.noalias() -= (dt / eps) * (d_plus(K, grid) * Am);
  const Eigen::VectorXd grad = interface_gradient(rho, grid);
  const Eigen::RowVectorXd aV = ops.a.transpose() * lr.V;
  out.K.noalias() -= (dt / eps2) * grad * aV;
  out.K = (1.0 + (dt / eps2) * sigma.values().array()).inverse().matrix().asDiagonal() * out.K;
  require_finite(out.K, "k_step");

  QrResult qr = orthonormalize(out.K);
  out.X = std::move(qr.Q);
  out.deficient = qr.deficient;
  out.Mproj = out.X.transpose() * lr.X;
  return out;
}

LStepResult l_step(const LowRankState& lr, const Eigen::VectorXd& rho, const FluxOperators& ops,
                   const Grid& grid, const SigmaField& sigma, double eps, double dt) {
  check_lowrank(lr, rho, ops, grid, eps, dt, "l_step");
  const double eps2 = eps * eps;
  const Eigen::MatrixXd L = lr.V * lr.S.transpose();
  // sum_j D-X_j X_j^T and sum_j D+X_j X_j^T
  const Eigen::MatrixXd Cm = d_minus(lr.X, grid).transpose() * lr.X;
  const Eigen::MatrixXd Cp = d_plus(lr.X, grid).transpose() * lr.X;

  Eigen::MatrixXd rhs = L;
  rhs.noalias() -= (dt / eps) * (ops.Aplus * (L * Cm));
  rhs.noalias() -= (dt / eps) * (ops.Aminus * (L * Cp));
  const Eigen::RowVectorXd projected_grad =
      (lr.X.transpose() * interface_gradient(rho, grid)).transpose();
  rhs.noalias() -= (dt / eps2) * ops.a * projected_grad;
  require_finite(rhs, "l_step");

  // L^{n+1} (I + dt/eps^2 W) = rhs, W symmetric.
  LStepResult out;
  out.L = spd_solve(weighted_gram(lr.X, sigma), dt / eps2, rhs.transpose(), "l_step").transpose();
  require_finite(out.L, "l_step");

  QrResult qr = orthonormalize(out.L);
  out.V = std::move(qr.Q);
  out.deficient = qr.deficient;
  out.Nproj = out.V.transpose() * lr.V;
  return out;
}

Eigen::MatrixXd s_step(const LowRankState& lr, const Eigen::MatrixXd& X_new,
                       const Eigen::MatrixXd& V_new, const Eigen::MatrixXd& Mproj,
                       const Eigen::MatrixXd& Nproj, const Eigen::VectorXd& rho,
                       const FluxOperators& ops, const Grid& grid, const SigmaField& sigma,
                       double eps, double dt) {
  check_lowrank(lr, rho, ops, grid, eps, dt, "s_step");
  const Eigen::Index r = lr.rank();
  if (X_new.cols() != r || V_new.cols() != r || Mproj.rows() != r || Nproj.rows() != r) {
    throw std::invalid_argument("s_step: updated bases do not match rank");
  }
  const double eps2 = eps * eps;
  const Eigen::MatrixXd S_tilde = Mproj * lr.S * Nproj.transpose();
  const Eigen::MatrixXd Dm_hat = X_new.transpose() * d_minus(X_new, grid);
  const Eigen::MatrixXd Dp_hat = X_new.transpose() * d_plus(X_new, grid);
  const Eigen::MatrixXd Ap = V_new.transpose() * ops.Aplus * V_new;
  const Eigen::MatrixXd Am = V_new.transpose() * ops.Aminus * V_new;

  Eigen::MatrixXd rhs = S_tilde;
  rhs.noalias() -= (dt / eps) * (Dm_hat * S_tilde * Ap);
  rhs.noalias() -= (dt / eps) * (Dp_hat * S_tilde * Am);
  const Eigen::VectorXd projected_grad = X_new.transpose() * interface_gradient(rho, grid);
  const Eigen::RowVectorXd aV = ops.a.transpose() * V_new;
  rhs.noalias() -= (dt / eps2) * projected_grad * aV;
  require_finite(rhs, "s_step");

  Eigen::MatrixXd S_new = spd_solve(weighted_gram(X_new, sigma), dt / eps2, rhs, "s_step");
  require_finite(S_new, "s_step");
  return S_new;
}

DlraStepResult dlra_step(const LowRankState& lr, const Eigen::VectorXd& rho,
                         const FluxOperators& ops, const Grid& grid, const SigmaField& sigma,
                         double eps, double dt, const DlraOptions& options) {
  KStepResult k;
  LStepResult l;
  if (options.concurrent_basis_update) {
    auto l_future = std::async(std::launch::async, [&] {
      return l_step(lr, rho, ops, grid, sigma, eps, dt);
    });
    k = k_step(lr, rho, ops, grid, sigma, eps, dt);
    l = l_future.get();
  } else {
    k = k_step(lr, rho, ops, grid, sigma, eps, dt);
    l = l_step(lr, rho, ops, grid, sigma, eps, dt);
  }

  DlraStepResult out;
  out.lr.S = s_step(lr, k.X, l.V, k.Mproj, l.Nproj, rho, ops, grid, sigma, eps, dt);
  out.lr.X = std::move(k.X);
  out.lr.V = std::move(l.V);
  out.deficient = k.deficient || l.deficient;

  const Eigen::VectorXd first_moment = out.lr.X * (out.lr.S * out.lr.V.row(0).transpose());
  out.rho = rho - (dt * ops.a0) * midpoint_divergence(first_moment, grid);
  require_finite(out.rho, "dlra_step/macro");
  return out;
}

double lowrank_energy(const Eigen::VectorXd& rho, const LowRankState& lr, double eps,
                      const Grid& grid) {
  return midpoint_norm_sq(rho, grid) + eps * eps * lr.S.squaredNorm() * grid.dx();
}

Trajectory run_dlra(const Problem& problem, Eigen::Index rank, const DlraOptions& options) {
  Trajectory traj;
  traj.cfl = cfl_dt(problem.ops.quad, problem.ops.N, problem.eps, problem.grid.dx(),
                    problem.sigma.sigma0(), problem.cfl_safety);
  detail::Recorder recorder(traj, problem.output_times, problem.t_end);
  LowRankState lr = init_lowrank(problem.initial.g, rank);
  Eigen::VectorXd rho = problem.initial.rho;
  double time = problem.initial.time;
  std::size_t steps = 0;
  try {
    steps = detail::march(
        problem.initial.time, problem.t_end, traj.cfl.dt,
        [&](double h) {
          DlraStepResult next =
              dlra_step(lr, rho, problem.ops, problem.grid, problem.sigma, problem.eps, h, options);
          lr = std::move(next.lr);
          rho = std::move(next.rho);
        },
        [&](std::size_t n, double t) {
          time = t;
          recorder.observe(n, t, rho, lowrank_energy(rho, lr, problem.eps, problem.grid));
        });
  } catch (const NumericalError& err) {
    throw SolverFailure(err, std::move(traj));
  }
  recorder.finish(steps, time, rho);
  traj.final_state = FullState(rho, lr.reconstruct(), time);
  traj.final_lowrank = std::move(lr);
  return traj;
}

}  // namespace apdlr
