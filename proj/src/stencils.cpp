#include "apdlr/stencils.hpp"

#include <stdexcept>
#include <string>

#include "apdlr/errors.hpp"

namespace apdlr {

namespace {

void check_interface_rows(Eigen::Index rows, const Grid& grid, const char* who) {
  if (rows != grid.interface_count()) {
    throw std::invalid_argument(std::string(who) + ": expected " +
                                std::to_string(grid.interface_count()) +
                                " interface rows, got " + std::to_string(rows));
  }
}

}  // namespace

Eigen::MatrixXd d_plus(const ConstMatrixRef& field, const Grid& grid) {
  check_interface_rows(field.rows(), grid, "d_plus");
  const Eigen::Index n = field.rows();
  const double inv_dx = 1.0 / grid.dx();
  Eigen::MatrixXd out(n, field.cols());
  out.topRows(n - 1) = (field.bottomRows(n - 1) - field.topRows(n - 1)) * inv_dx;
  if (grid.periodic()) {
    out.row(n - 1) = (field.row(0) - field.row(n - 1)) * inv_dx;
  } else {
    out.row(n - 1) = -field.row(n - 1) * inv_dx;
  }
  return out;
}

Eigen::MatrixXd d_minus(const ConstMatrixRef& field, const Grid& grid) {
  check_interface_rows(field.rows(), grid, "d_minus");
  const Eigen::Index n = field.rows();
  const double inv_dx = 1.0 / grid.dx();
  Eigen::MatrixXd out(n, field.cols());
  out.bottomRows(n - 1) = (field.bottomRows(n - 1) - field.topRows(n - 1)) * inv_dx;
  if (grid.periodic()) {
    out.row(0) = (field.row(0) - field.row(n - 1)) * inv_dx;
  } else {
    out.row(0) = field.row(0) * inv_dx;
  }
  return out;
}

Eigen::VectorXd interface_gradient(const ConstVectorRef& rho, const Grid& grid) {
  const Eigen::Index nx = grid.nx();
  if (rho.size() != nx) {
    throw std::invalid_argument("interface_gradient: expected " + std::to_string(nx) +
                                " midpoint values, got " + std::to_string(rho.size()));
  }
  const double inv_dx = 1.0 / grid.dx();
  Eigen::VectorXd out(grid.interface_count());
  out.segment(1, nx - 1) = (rho.tail(nx - 1) - rho.head(nx - 1)) * inv_dx;
  if (grid.periodic()) {
    out(0) = (rho(0) - rho(nx - 1)) * inv_dx;
  } else {
    out(0) = rho(0) * inv_dx;
    out(nx) = -rho(nx - 1) * inv_dx;
  }
  return out;
}

Eigen::VectorXd midpoint_divergence(const ConstVectorRef& interface_values, const Grid& grid) {
  check_interface_rows(interface_values.size(), grid, "midpoint_divergence");
  const Eigen::Index nx = grid.nx();
  const double inv_dx = 1.0 / grid.dx();
  Eigen::VectorXd out(nx);
  if (grid.periodic()) {
    out.head(nx - 1) = (interface_values.tail(nx - 1) - interface_values.head(nx - 1)) * inv_dx;
    out(nx - 1) = (interface_values(0) - interface_values(nx - 1)) * inv_dx;
  } else {
    out = (interface_values.tail(nx) - interface_values.head(nx)) * inv_dx;
  }
  return out;
}

Eigen::MatrixXd advection_apply(const FluxOperators& ops, const ConstMatrixRef& G,
                                const Grid& grid) {
  if (G.cols() != static_cast<Eigen::Index>(ops.N)) {
    throw std::invalid_argument("advection_apply: expected " + std::to_string(ops.N) +
                                " moment columns, got " + std::to_string(G.cols()));
  }
  Eigen::MatrixXd out = d_minus(G, grid) * ops.Aplus;
  out.noalias() += d_plus(G, grid) * ops.Aminus;
  return out;
}

Eigen::MatrixXd advection_adjoint_apply(const FluxOperators& ops, const ConstMatrixRef& G,
                                        const Grid& grid) {
  if (G.cols() != static_cast<Eigen::Index>(ops.N)) {
    throw std::invalid_argument("advection_adjoint_apply: expected " + std::to_string(ops.N) +
                                " moment columns, got " + std::to_string(G.cols()));
  }
  Eigen::MatrixXd out = d_plus(G, grid) * ops.Aplus;
  out.noalias() += d_minus(G, grid) * ops.Aminus;
  return out;
}

double midpoint_norm_sq(const ConstVectorRef& rho, const Grid& grid) {
  return rho.squaredNorm() * grid.dx();
}

double interface_norm_sq(const ConstMatrixRef& g, const Grid& grid) {
  return g.squaredNorm() * grid.dx();
}

double energy(const ConstVectorRef& rho, const ConstMatrixRef& g, double eps, const Grid& grid) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("energy: eps must be positive");
  }
  return midpoint_norm_sq(rho, grid) + eps * eps * interface_norm_sq(g, grid);
}

double energy(const FullState& state, double eps, const Grid& grid) {
  return energy(state.rho, state.g, eps, grid);
}

void require_finite(const ConstMatrixRef& values, std::string_view op) {
  if (!values.allFinite()) {
    throw NumericalError(std::string(op), "non-finite value encountered");
  }
}

}  // namespace apdlr
