#include <doctest.h>

#include <cmath>
#include <random>

#include "apdlr/errors.hpp"
#include "apdlr/grid.hpp"
#include "apdlr/operators.hpp"
#include "apdlr/stencils.hpp"
#include "support.hpp"

using namespace apdlr;
using apdlr::testing::random_matrix;
using apdlr::testing::random_vector;

namespace {

// sum over interfaces of the row-wise quadratic form x_j^T M y_j
double pair_sum(const Eigen::MatrixXd& x, const Eigen::MatrixXd& M, const Eigen::MatrixXd& y) {
  return (x * M).cwiseProduct(y).sum();
}

}  // namespace

TEST_CASE("grid geometry") {
  const Grid g(-1.5, 1.5, 502, Boundary::vacuum);
  CHECK(g.dx() == doctest::Approx(3.0 / 502));
  CHECK(g.interface_count() == 503);
  CHECK(g.midpoint(0) == doctest::Approx(-1.5 + 1.5 / 502));
  CHECK(g.interface(0) == -1.5);
  for (Eigen::Index j = 0; j < g.nx(); ++j) {
    CHECK(g.interface(j) < g.midpoint(j));
    CHECK(g.midpoint(j) < g.interface(j + 1));
  }
  const Grid p(0.0, 1.0, 8, Boundary::periodic);
  CHECK(p.interface_count() == 8);
  CHECK_THROWS(Grid(1.0, 0.0, 4, Boundary::periodic));
  CHECK_THROWS(Grid(0.0, 1.0, 0, Boundary::periodic));
  CHECK(parse_boundary("periodic") == Boundary::periodic);
  CHECK_THROWS_AS(parse_boundary("reflecting"), ConfigError);
}

TEST_CASE("states and cross-sections reject bad values") {
  const Grid g(0.0, 1.0, 4, Boundary::periodic);
  CHECK_THROWS(SigmaField(g, 0.0));
  CHECK_THROWS(SigmaField(g, Eigen::VectorXd::Constant(3, 1.0)));
  Eigen::VectorXd rho = Eigen::VectorXd::Ones(4);
  rho(2) = std::nan("");
  CHECK_THROWS_AS(FullState(rho, Eigen::MatrixXd::Zero(4, 2)), std::invalid_argument);
  const SigmaField varying(g, Eigen::Vector4d(1.0, 2.0, 0.5, 3.0));
  CHECK(varying.sigma0() == 0.5);
  CHECK_FALSE(varying.is_constant());
}

TEST_CASE("difference stencil examples") {
  const Grid g(0.0, 4.0, 4, Boundary::periodic);
  Eigen::MatrixXd f(4, 1);
  f << 0, 1, 0, 0;
  Eigen::MatrixXd expected(4, 1);
  expected << 1, -1, 0, 0;
  CHECK(d_plus(f, g) == expected);
  Eigen::MatrixXd expected_minus(4, 1);
  expected_minus << 0, 1, -1, 0;
  CHECK(d_minus(f, g) == expected_minus);

  const Eigen::MatrixXd c = Eigen::MatrixXd::Constant(4, 3, 2.5);
  CHECK(d_plus(c, g).isZero(0.0));
  CHECK(d_minus(c, g).isZero(0.0));
  CHECK_THROWS_AS(d_plus(Eigen::MatrixXd::Zero(5, 1), g), std::invalid_argument);
}

TEST_CASE("telescoping and second differences") {
  std::mt19937_64 rng(21);
  const Grid g(-1.0, 2.0, 37, Boundary::periodic);
  const Eigen::MatrixXd f = random_matrix(rng, 37, 3);
  CHECK(d_plus(f, g).colwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(d_minus(f, g).colwise().sum().cwiseAbs().maxCoeff() <= 1e-12);

  const Eigen::MatrixXd second = d_minus(d_plus(f, g), g);
  const double h2 = g.dx() * g.dx();
  for (Eigen::Index i = 0; i < 37; ++i) {
    const Eigen::Index ip = (i + 1) % 37, im = (i + 36) % 37;
    const Eigen::RowVectorXd direct = (f.row(ip) - 2 * f.row(i) + f.row(im)) / h2;
    CHECK((second.row(i) - direct).cwiseAbs().maxCoeff() <= 1e-9 * direct.cwiseAbs().maxCoeff() + 1e-9);
  }
}

TEST_CASE("summation by parts") {
  std::mt19937_64 rng(22);
  for (Boundary b : {Boundary::periodic, Boundary::vacuum}) {
    const Grid g(0.0, 1.0, 50, b);
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::MatrixXd k = random_matrix(rng, g.interface_count(), 4);
      const Eigen::MatrixXd f = random_matrix(rng, g.interface_count(), 4);
      const double lhs = k.cwiseProduct(d_plus(f, g)).sum();
      const double rhs = -d_minus(k, g).cwiseProduct(f).sum();
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + k.norm() * f.norm() / g.dx()));
    }
  }
  // Midpoint/interface pairing used by the density update.
  const Grid g(0.0, 1.0, 30, Boundary::vacuum);
  const Eigen::VectorXd rho = random_vector(rng, 30);
  const Eigen::VectorXd flux = random_vector(rng, 31);
  const double lhs = rho.dot(midpoint_divergence(flux, g));
  const double rhs = -interface_gradient(rho, g).dot(flux);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs) + 1e-10);
}

TEST_CASE("advection operator: trivial inputs") {
  const auto ops = build_operators(5);
  const Grid g(0.0, 1.0, 20, Boundary::periodic);
  CHECK(advection_apply(ops, Eigen::MatrixXd::Zero(20, 5), g).isZero(0.0));
  Eigen::MatrixXd constant(20, 5);
  constant.rowwise() = Eigen::RowVectorXd::LinSpaced(5, -1.0, 3.0);
  CHECK(advection_apply(ops, constant, g).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("advection operator identities on random periodic fields") {
  std::mt19937_64 rng(23);
  int fields = 0;
  for (std::size_t N : {1u, 2u, 5u, 20u}) {
    CAPTURE(N);
    const auto ops = build_operators(N);
    const Eigen::MatrixXd A2a = ops.A * ops.A + ops.a * ops.a.transpose();
    for (int trial = 0; trial < 250; ++trial, ++fields) {
      const Eigen::Index nx = 8 + static_cast<Eigen::Index>(rng() % 40);
      const Grid grid(0.0, 1.0 + static_cast<double>(trial % 3), nx, Boundary::periodic);
      const Eigen::MatrixXd g0 = random_matrix(rng, nx, N);
      const Eigen::MatrixXd g1 = random_matrix(rng, nx, N);
      const Eigen::MatrixXd Dg1 = d_plus(g1, grid);
      const Eigen::MatrixXd Lg1 = advection_apply(ops, g1, grid);

      // Positivity
      const double form = g1.cwiseProduct(Lg1).sum();
      const double dissipation = 0.5 * grid.dx() * pair_sum(Dg1, ops.absA, Dg1);
      CHECK(form >= -1e-12 * g1.squaredNorm());
      CHECK(std::abs(form - dissipation) <= 1e-10 * std::abs(dissipation));

      // Two-level identity, with the adjoint stencil on the difference term.
      const double lhs = g1.cwiseProduct(advection_apply(ops, g0, grid)).sum();
      const double rhs =
          dissipation + (g1 - g0).cwiseProduct(advection_adjoint_apply(ops, g1, grid)).sum();
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (std::abs(lhs) + dissipation));

      // Boundedness with the density coupling included.
      const double bound = 2.0 * pair_sum(Dg1, A2a, Dg1);
      CHECK(Lg1.squaredNorm() <= bound * (1.0 + 1e-10) + 1e-10 * g1.squaredNorm());
    }
  }
  CHECK(fields >= 1000);
}

TEST_CASE("the two-level identity with the forward operator on the difference fails") {
  std::mt19937_64 rng(24);
  const auto ops = build_operators(5);
  const Grid grid(0.0, 1.0, 16, Boundary::periodic);
  const Eigen::MatrixXd g0 = random_matrix(rng, 16, 5);
  const Eigen::MatrixXd g1 = random_matrix(rng, 16, 5);
  const Eigen::MatrixXd Dg1 = d_plus(g1, grid);
  const double lhs = g1.cwiseProduct(advection_apply(ops, g0, grid)).sum();
  const double rhs = 0.5 * grid.dx() * pair_sum(Dg1, ops.absA, Dg1) +
                     (g1 - g0).cwiseProduct(advection_apply(ops, g1, grid)).sum();
  CHECK(std::abs(lhs - rhs) > 1e-3 * std::abs(lhs));
}

TEST_CASE("the boundedness bound without the density coupling fails at N=1") {
  // A = 0 at N=1, so the stated right-hand side vanishes while L g does not.
  const auto ops = build_operators(1);
  const Grid grid(0.0, 1.0, 8, Boundary::periodic);
  Eigen::MatrixXd g(8, 1);
  g << 1, -1, 1, -1, 1, -1, 1, -1;
  const Eigen::MatrixXd Dg = d_plus(g, grid);
  CHECK(pair_sum(Dg, ops.A * ops.A, Dg) == doctest::Approx(0.0));
  CHECK(advection_apply(ops, g, grid).squaredNorm() > 1.0);
}

TEST_CASE("energy functional") {
  const Grid grid(-1.5, 1.5, 502, Boundary::vacuum);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(502);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(503, 4);
  CHECK(energy(ones, zero, 1.0, grid) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(energy(Eigen::VectorXd::Zero(502), zero, 1.0, grid) == 0.0);

  std::mt19937_64 rng(25);
  const Eigen::VectorXd rho = random_vector(rng, 502);
  const Eigen::MatrixXd g = random_matrix(rng, 503, 4);
  const double e = energy(rho, g, 0.3, grid);
  CHECK(energy(2.5 * rho, 2.5 * g, 0.3, grid) == doctest::Approx(6.25 * e).epsilon(1e-14));
  CHECK_THROWS(energy(rho, g, 0.0, grid));
}

TEST_CASE("non-finite guard names the operation") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  CHECK_NOTHROW(require_finite(m, "probe"));
  m(1, 2) = INFINITY;
  try {
    require_finite(m, "probe");
    FAIL("expected NumericalError");
  } catch (const NumericalError& err) {
    CHECK(err.op() == "probe");
    CHECK_FALSE(err.step().has_value());
    CHECK(err.at_step(7).step() == 7);
  }
}
