#pragma once

#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace apdlr {

enum class Boundary { periodic, vacuum };

std::string_view to_string(Boundary b);
/// Throws ConfigError on unknown names.
Boundary parse_boundary(std::string_view name);

/// Uniform staggered grid on [x_left, x_right]. Density lives on the nx
/// cell midpoints; microscopic moments live on cell interfaces.
///
/// Interface i sits at x_left + i*dx, i.e. on the left face of midpoint i.
/// Periodic grids have nx interfaces (the right face of the last cell is
/// interface 0). Vacuum grids have nx+1 interfaces and zero ghost values
/// beyond both ends.
class Grid {
 public:
  Grid(double x_left, double x_right, Eigen::Index nx, Boundary boundary);

  double x_left() const { return x_left_; }
  double x_right() const { return x_right_; }
  Eigen::Index nx() const { return nx_; }
  double dx() const { return dx_; }
  Boundary boundary() const { return boundary_; }
  bool periodic() const { return boundary_ == Boundary::periodic; }

  Eigen::Index interface_count() const { return periodic() ? nx_ : nx_ + 1; }
  double midpoint(Eigen::Index j) const { return x_left_ + (static_cast<double>(j) + 0.5) * dx_; }
  double interface(Eigen::Index i) const { return x_left_ + static_cast<double>(i) * dx_; }
  Eigen::VectorXd midpoints() const;
  Eigen::VectorXd interfaces() const;

  bool operator==(const Grid&) const = default;

 private:
  double x_left_;
  double x_right_;
  Eigen::Index nx_;
  double dx_;
  Boundary boundary_;
};

/// Scattering cross-section sampled at interfaces; strictly positive.
class SigmaField {
 public:
  SigmaField(const Grid& grid, double constant);
  SigmaField(const Grid& grid, Eigen::VectorXd values);

  const Eigen::VectorXd& values() const { return values_; }
  double sigma0() const { return sigma0_; }
  bool is_constant() const { return constant_; }

 private:
  Eigen::VectorXd values_;
  double sigma0_;
  bool constant_;
};

/// Macroscopic density on midpoints plus microscopic moments on interfaces
/// (rows = interfaces, columns = moments 1..N).
struct FullState {
  Eigen::VectorXd rho;
  Eigen::MatrixXd g;
  double time = 0.0;

  FullState() = default;
  /// Throws std::invalid_argument on non-finite entries.
  FullState(Eigen::VectorXd rho, Eigen::MatrixXd g, double time = 0.0);
};

}  // namespace apdlr
