#include "apdlr/cfl.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "apdlr/errors.hpp"

namespace apdlr {

CflReport cfl_dt(const QuadratureSet& quad, std::size_t N, double eps, double dx, double sigma0,
                 double safety) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("cfl_dt: eps must be finite and non-negative");
  }
  if (!(dx > 0.0) || !(sigma0 > 0.0) || !(safety > 0.0)) {
    throw std::invalid_argument("cfl_dt: dx, sigma0 and safety must be positive");
  }
  const double np1 = static_cast<double>(N + 1);
  CflReport report;
  report.safety = safety;
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  // Nodes are ascending, so negative nodes are seen first; a mirrored node
  // only wins if it is smaller beyond roundoff.
  constexpr double kTieSlack = 1.0 - 8.0 * std::numeric_limits<double>::epsilon();
  for (std::size_t k = 0; k < quad.order(); ++k) {
    const double mu = quad.nodes[k];
    if (mu == 0.0) continue;
    const double w = quad.weights[k];
    const double hyperbolic = eps * dx / std::abs(mu);
    const double parabolic = sigma0 * dx * dx / (2.0 * mu * mu);
    const double value = (hyperbolic + parabolic) / (2.0 + np1 * w);
    if (!found || value < best * kTieSlack) {
      found = true;
      best = value;
      report.minimizing_k = k;
      report.mu_min = mu;
      report.w_min = w;
      report.hyperbolic_part = hyperbolic;
      report.parabolic_part = parabolic;
    }
  }
  if (!found) {
    throw NumericalError("cfl_dt", "every quadrature node is zero");
  }
  report.dt = safety * best;
  return report;
}

}  // namespace apdlr
