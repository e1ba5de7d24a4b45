#include "apdlr/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "apdlr/errors.hpp"

namespace apdlr {

NumericalError::NumericalError(std::string op, std::string detail, std::optional<std::size_t> step)
    : std::runtime_error(op + ": " + detail +
                         (step ? " (step " + std::to_string(*step) + ")" : std::string{})),
      op_(std::move(op)),
      detail_(std::move(detail)),
      step_(step) {}

NumericalError NumericalError::at_step(std::size_t step) const {
  return NumericalError(op_, detail_, step);
}

std::string_view to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "vacuum";
}

Boundary parse_boundary(std::string_view name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "vacuum") return Boundary::vacuum;
  throw ConfigError("unknown boundary mode '" + std::string(name) +
                    "' (expected periodic or vacuum)");
}

Grid::Grid(double x_left, double x_right, Eigen::Index nx, Boundary boundary)
    : x_left_(x_left), x_right_(x_right), nx_(nx), dx_(0.0), boundary_(boundary) {
  if (nx < 1) {
    throw std::invalid_argument("Grid: need at least one cell");
  }
  if (!(x_right > x_left) || !std::isfinite(x_left) || !std::isfinite(x_right)) {
    throw std::invalid_argument("Grid: domain must be a finite interval with x_left < x_right");
  }
  dx_ = (x_right - x_left) / static_cast<double>(nx);
}

Eigen::VectorXd Grid::midpoints() const {
  Eigen::VectorXd x(nx_);
  for (Eigen::Index j = 0; j < nx_; ++j) x(j) = midpoint(j);
  return x;
}

Eigen::VectorXd Grid::interfaces() const {
  Eigen::VectorXd x(interface_count());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = interface(i);
  return x;
}

SigmaField::SigmaField(const Grid& grid, double constant)
    : SigmaField(grid, Eigen::VectorXd::Constant(grid.interface_count(), constant)) {
  constant_ = true;
}

SigmaField::SigmaField(const Grid& grid, Eigen::VectorXd values)
    : values_(std::move(values)), sigma0_(0.0), constant_(false) {
  if (values_.size() != grid.interface_count()) {
    throw std::invalid_argument("SigmaField: expected " + std::to_string(grid.interface_count()) +
                                " interface values, got " + std::to_string(values_.size()));
  }
  if (!values_.allFinite() || values_.minCoeff() <= 0.0) {
    throw std::invalid_argument("SigmaField: values must be finite and strictly positive");
  }
  sigma0_ = values_.minCoeff();
  constant_ = values_.maxCoeff() == sigma0_;
}

FullState::FullState(Eigen::VectorXd rho_in, Eigen::MatrixXd g_in, double t)
    : rho(std::move(rho_in)), g(std::move(g_in)), time(t) {
  if (!rho.allFinite() || !g.allFinite() || !std::isfinite(time)) {
    throw std::invalid_argument("FullState: non-finite entries");
  }
}

}  // namespace apdlr
