#include "apdlr/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace apdlr {

namespace {

constexpr double kNewtonTol = 1e-15;
constexpr int kNewtonMaxIter = 100;

// Classical (unnormalized) Legendre P_n(x) and its derivative.
void legendre_with_derivative(std::size_t n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (std::size_t k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1); nodes never hit |x| = 1.
  dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureSet gauss_legendre(std::size_t order) {
  if (order == 0) {
    throw std::invalid_argument("gauss_legendre: order must be >= 1");
  }
  const double n = static_cast<double>(order);
  QuadratureSet quad;
  quad.nodes.assign(order, 0.0);
  quad.weights.assign(order, 0.0);

  // Roots come in +/- pairs; solve for the positive half and mirror.
  const std::size_t half = (order + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi's asymptotic guess for the (i+1)-th largest root.
    const double k = static_cast<double>(i + 1);
    double x = (1.0 - (n - 1.0) / (8.0 * n * n * n)) *
               std::cos(std::numbers::pi * (4.0 * k - 1.0) / (4.0 * n + 2.0));
    double p = 0.0;
    double dp = 0.0;
    int iter = 0;
    for (; iter < kNewtonMaxIter; ++iter) {
      legendre_with_derivative(order, x, p, dp);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) <= kNewtonTol) {
        break;
      }
    }
    if (iter == kNewtonMaxIter) {
      throw std::runtime_error("gauss_legendre: Newton iteration did not converge for order " +
                               std::to_string(order));
    }
    legendre_with_derivative(order, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    quad.nodes[order - 1 - i] = x;
    quad.nodes[i] = -x;
    quad.weights[order - 1 - i] = w;
    quad.weights[i] = w;
  }
  if (order % 2 == 1) {
    quad.nodes[order / 2] = 0.0;
  }
  return quad;
}

double recurrence_coeff(std::size_t degree) {
  const double l = static_cast<double>(degree);
  return (l + 1.0) / std::sqrt((2.0 * l + 1.0) * (2.0 * l + 3.0));
}

std::vector<double> eval_legendre_orthonormal_all(std::size_t max_degree, double mu) {
  if (!(std::abs(mu) <= 1.0)) {
    throw std::invalid_argument("eval_legendre_orthonormal: |mu| must be <= 1, got " +
                                std::to_string(mu));
  }
  std::vector<double> p(max_degree + 1);
  p[0] = 1.0 / std::numbers::sqrt2;
  if (max_degree >= 1) {
    p[1] = mu * p[0] / recurrence_coeff(0);
  }
  for (std::size_t l = 1; l < max_degree; ++l) {
    p[l + 1] = (mu * p[l] - recurrence_coeff(l - 1) * p[l - 1]) / recurrence_coeff(l);
  }
  return p;
}

double eval_legendre_orthonormal(std::size_t degree, double mu) {
  return eval_legendre_orthonormal_all(degree, mu).back();
}

}  // namespace apdlr
