#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "apdlr/operators.hpp"
#include "support.hpp"

using apdlr::build_operators;

TEST_CASE("quadrature-built flux matrix equals the analytic tridiagonal") {
  for (std::size_t N = 1; N <= 100; ++N) {
    const auto ops = build_operators(N);
    const double err = (ops.A - apdlr::analytic_flux_matrix(N)).cwiseAbs().maxCoeff();
    INFO("N = " << N);
    CHECK(err <= 1e-12);
  }
}

TEST_CASE("flux splitting structure") {
  for (std::size_t N : {1u, 2u, 7u, 30u}) {
    CAPTURE(N);
    const auto ops = build_operators(N);
    const Eigen::MatrixXd mu = ops.mu().asDiagonal();
    CHECK((ops.A - ops.T * mu * ops.T.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((ops.A - (ops.Aplus + ops.Aminus)).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((ops.absA - (ops.Aplus - ops.Aminus)).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((ops.absA - ops.absA.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N + 1, N + 1);
    CHECK((ops.Tf * ops.Tf.transpose() - I).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(ops.a0 == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(ops.a(0) == ops.a0);
    CHECK(ops.a.tail(N - 1).isZero(0.0));
    CHECK(ops.af(0) == 0.0);
    CHECK(ops.af(1) == ops.a0);
  }
}

TEST_CASE("N=1 and N=2 examples") {
  const auto one = build_operators(1);
  REQUIRE(one.A.rows() == 1);
  CHECK(std::abs(one.A(0, 0)) <= 1e-15);
  CHECK(one.absA(0, 0) > 0.0);
  // Two-point rule: sum_k w_k p_1(mu_k)^2 |mu_k| = 2 * (3/2)(1/3)(1/sqrt3)
  CHECK(one.absA(0, 0) == doctest::Approx(1.0 / std::sqrt(3.0)));

  const auto two = build_operators(2);
  CHECK(std::abs(two.A(0, 1) - 2.0 / std::sqrt(15.0)) <= 1e-14);
  CHECK(std::abs(two.A(1, 0) - 2.0 / std::sqrt(15.0)) <= 1e-14);
  CHECK(std::abs(two.A(0, 0)) <= 1e-14);
}

TEST_CASE("|A| is not the Roe matrix") {
  const auto ops = build_operators(7);
  const double diff = (ops.absA - apdlr::roe_matrix(ops.A)).cwiseAbs().maxCoeff();
  CHECK(diff > 1e-8);
}

TEST_CASE("|A| is positive semidefinite") {
  std::mt19937_64 rng(11);
  for (std::size_t N : {1u, 2u, 5u, 20u, 100u}) {
    const auto ops = build_operators(N);
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXd v = apdlr::testing::random_vector(rng, N);
      CHECK(v.dot(ops.absA * v) >= -1e-12 * v.squaredNorm());
    }
  }
}

TEST_CASE("moment-space identities carried to quadrature space") {
  std::mt19937_64 rng(12);
  for (std::size_t N : {1u, 2u, 5u, 20u, 100u}) {
    CAPTURE(N);
    const auto ops = build_operators(N);
    const Eigen::VectorXd mu = ops.mu();
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(
        ops.quad.weights.data(), static_cast<Eigen::Index>(ops.quad.weights.size()));

    const Eigen::VectorXd Tfa = ops.Tf.transpose() * ops.af;
    const Eigen::VectorXd expected = ((w / 2.0).cwiseSqrt().array() * mu.array()).matrix();
    CHECK((Tfa - expected).cwiseAbs().maxCoeff() <= 1e-14);

    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::VectorXd g = apdlr::testing::random_vector(rng, N);
      Eigen::VectorXd h = Eigen::VectorXd::Zero(N + 1);
      h.tail(N) = g;
      const Eigen::VectorXd hh = ops.Tf.transpose() * h;

      const double abs_lhs = g.dot(ops.absA * g);
      const double abs_rhs = hh.dot(mu.cwiseAbs().asDiagonal() * hh);
      CHECK(std::abs(abs_lhs - abs_rhs) <= 1e-10 * std::abs(abs_rhs));

      const double aa_lhs = std::pow(ops.a.dot(g), 2);
      const double aa_rhs = std::pow(Tfa.dot(hh), 2);
      CHECK(std::abs(aa_lhs - aa_rhs) <= 1e-10 * std::max(aa_rhs, 1e-300) + 1e-14);

      // The squared-flux identity needs the coupling to the density moment.
      const double sq_lhs = g.dot(ops.A * (ops.A * g)) + aa_lhs;
      const double sq_rhs = hh.dot(mu.cwiseAbs2().asDiagonal() * hh);
      CHECK(std::abs(sq_lhs - sq_rhs) <= 1e-10 * sq_rhs);
    }
  }
}

TEST_CASE("the squared-flux identity without the coupling term fails") {
  // g = e_1 at N = 1: A = 0, yet the quadrature side is a0^2 = 1/3.
  const auto ops = build_operators(1);
  Eigen::VectorXd h(2);
  h << 0.0, 1.0;
  const Eigen::VectorXd hh = ops.Tf.transpose() * h;
  const double quad_side = hh.dot(ops.mu().cwiseAbs2().asDiagonal() * hh);
  CHECK(quad_side == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs((ops.A * ops.A)(0, 0)) < 1e-15);
}

TEST_CASE("invalid moment count") { CHECK_THROWS_AS(build_operators(0), std::invalid_argument); }
