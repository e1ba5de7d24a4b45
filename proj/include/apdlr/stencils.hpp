#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "apdlr/grid.hpp"
#include "apdlr/operators.hpp"

namespace apdlr {

using ConstMatrixRef = Eigen::Ref<const Eigen::MatrixXd>;
using ConstVectorRef = Eigen::Ref<const Eigen::VectorXd>;

// Interface fields are stored row-per-interface; every column is
// differenced independently. All stencils throw std::invalid_argument when
// the row count does not match grid.interface_count().

/// (D+ g)_i = (g_{i+1} - g_i) / dx
Eigen::MatrixXd d_plus(const ConstMatrixRef& field, const Grid& grid);
/// (D- g)_i = (g_i - g_{i-1}) / dx
Eigen::MatrixXd d_minus(const ConstMatrixRef& field, const Grid& grid);

/// D+ rho: midpoint density differenced onto interfaces,
/// (rho_i - rho_{i-1}) / dx at interface i.
Eigen::VectorXd interface_gradient(const ConstVectorRef& rho, const Grid& grid);

/// D- of an interface scalar onto midpoints, (g_{j+1} - g_j) / dx at midpoint j.
Eigen::VectorXd midpoint_divergence(const ConstVectorRef& interface_values, const Grid& grid);

/// Upwind advection L G = D-G A+ + D+G A- (A+- symmetric).
Eigen::MatrixXd advection_apply(const FluxOperators& ops, const ConstMatrixRef& G,
                                const Grid& grid);

/// The operator with the stencils swapped, D+G A+ + D-G A-. Under the
/// discrete inner product sum_i u_i^T (L v)_i = -sum_i (L~ u)_i^T v_i.
Eigen::MatrixXd advection_adjoint_apply(const FluxOperators& ops, const ConstMatrixRef& G,
                                        const Grid& grid);

/// ||rho||^2 = sum_j rho_j^2 dx
double midpoint_norm_sq(const ConstVectorRef& rho, const Grid& grid);
/// ||g||^2 = sum_i g_i^T g_i dx
double interface_norm_sq(const ConstMatrixRef& g, const Grid& grid);

/// e = ||rho||^2 + eps^2 ||g||^2
double energy(const ConstVectorRef& rho, const ConstMatrixRef& g, double eps, const Grid& grid);
double energy(const FullState& state, double eps, const Grid& grid);

/// Throws NumericalError naming `op` if any entry is NaN or infinite.
void require_finite(const ConstMatrixRef& values, std::string_view op);

}  // namespace apdlr
