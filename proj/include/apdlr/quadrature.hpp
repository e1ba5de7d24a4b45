#pragma once

#include <cstddef>
#include <vector>

namespace apdlr {

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending, symmetric about zero.
struct QuadratureSet {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t order() const { return nodes.size(); }
};

/// Builds the `order`-point Gauss-Legendre rule by Newton iteration on the
/// roots of P_order. Exact for polynomials of degree <= 2*order - 1.
/// Throws std::invalid_argument for order == 0.
QuadratureSet gauss_legendre(std::size_t order);

/// Orthonormal Legendre polynomial p_l(mu), normalized so that
/// the integral of p_l^2 over [-1, 1] is 1. Throws for |mu| > 1.
double eval_legendre_orthonormal(std::size_t degree, double mu);

/// Evaluates p_0(mu) ... p_max_degree(mu) in one recurrence sweep.
std::vector<double> eval_legendre_orthonormal_all(std::size_t max_degree, double mu);

/// a_l = (l+1) / sqrt((2l+1)(2l+3)), so that mu p_l = a_{l-1} p_{l-1} + a_l p_{l+1}.
double recurrence_coeff(std::size_t degree);

}  // namespace apdlr
