#pragma once

#include <cstddef>

#include "apdlr/quadrature.hpp"

namespace apdlr {

/// Time step chosen by the energy-stability bound and the quadrature node
/// that attains it.
struct CflReport {
  double dt = 0.0;
  std::size_t minimizing_k = 0;
  double mu_min = 0.0;
  double w_min = 0.0;
  /// eps * dx / |mu_k| at the minimizer.
  double hyperbolic_part = 0.0;
  /// sigma0 * dx^2 / (2 mu_k^2) at the minimizer.
  double parabolic_part = 0.0;
  double safety = 1.0;
};

/// dt = safety * min_k [eps dx / |mu_k| + sigma0 dx^2 / (2 mu_k^2)] / (2 + (N+1) w_k)
/// over nodes with mu_k != 0. The +-mu_k tie resolves to the negative node.
///
/// eps = 0 gives the purely parabolic restriction used by the diffusion
/// oracle. Throws std::invalid_argument for eps < 0, dx <= 0, sigma0 <= 0 or
/// safety <= 0.
CflReport cfl_dt(const QuadratureSet& quad, std::size_t N, double eps, double dx, double sigma0,
                 double safety = 1.0);

}  // namespace apdlr
