#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "mwl/errors.hpp"
#include "mwl/graph.hpp"
#include "test_util.hpp"

using namespace mwl;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("edge weight constant") {
  CHECK(edge_weight_constant(1, 1.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(edge_weight_constant(2, 1.0) == doctest::Approx(8.0 / kPi).epsilon(1e-12));
  CHECK(edge_weight_constant(2, 2.0) ==
        doctest::Approx(8.0 / kPi / 16.0).epsilon(1e-12));
  CHECK_THROWS_AS(edge_weight_constant(0, 1.0), Error);
  CHECK_THROWS_AS(edge_weight_constant(1, 0.0), Error);
}

TEST_CASE("build_graph on circle fixtures") {
  SUBCASE("antipodal pair with kappa below the distance is disconnected") {
    const auto s = uniform_circle(2, 1.0, kPi);
    CHECK_THROWS_AS(build_graph(s, 1.0), Error);
    try {
      build_graph(s, 1.0);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::disconnected);
    }
  }

  SUBCASE("three equally spaced points form the complete triangle") {
    auto s = uniform_circle(3, 1.0, kPi);  // measures 2pi/3 each
    const auto g = build_graph(s, 3.0);
    const double want = (1.0 / 9.0) * (2.0 * kPi / 3.0) * (2.0 * kPi / 3.0);
    for (int i = 0; i < 3; ++i) {
      CHECK(g.weights(i, i) == 0.0);
      for (int j = 0; j < 3; ++j) {
        if (i != j) CHECK(g.weights(i, j) == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }

  SUBCASE("kappa above the diameter gives the complete graph") {
    const auto s = uniform_circle(7, 1.0);
    const auto g = build_graph(s, kPi + 0.1);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        if (i != j) CHECK(g.weights(i, j) > 0.0);
  }

  SUBCASE("measures must be assigned") {
    auto s = uniform_circle(3, 1.0);
    s.points[1].measure = 0.0;
    CHECK_THROWS_AS(build_graph(s, 3.0), Error);
  }
}

TEST_CASE("assemble_matrices hand fixtures") {
  SUBCASE("two-vertex swap") {
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, 1, 0;
    const auto m = assemble_matrices(graph_from_weights(w));
    CHECK(m.laplacian(0, 0) == 1.0);
    CHECK(m.laplacian(0, 1) == -1.0);
    CHECK(m.laplacian(1, 0) == -1.0);
    CHECK(m.laplacian(1, 1) == 1.0);
    CHECK(m.transition(0, 0) == 0.0);
    CHECK(m.transition(0, 1) == 1.0);
    CHECK(m.transition(1, 0) == 1.0);
  }

  SUBCASE("equal-weight triangle spectra") {
    Eigen::MatrixXd w(3, 3);
    w << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    const auto m = assemble_matrices(graph_from_weights(w));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.laplacian);
    CHECK(es.eigenvalues()[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(es.eigenvalues()[1] == doctest::Approx(3.0));
    CHECK(es.eigenvalues()[2] == doctest::Approx(3.0));
    CHECK((m.transition * Eigen::VectorXd::Ones(3) - Eigen::VectorXd::Ones(3))
              .cwiseAbs()
              .maxCoeff() <= 1e-15);
  }
}

TEST_CASE("self-weight comparison mode makes P sub-stochastic") {
  const auto s = uniform_circle(4, 1.0);
  BuildOptions opts;
  opts.include_self_weight = true;
  const auto g = build_graph(s, 2.0, opts);
  CHECK(g.self_weights.minCoeff() > 0.0);
  const auto m = assemble_matrices(g);
  CHECK_FALSE(m.row_stochastic);
  for (int i = 0; i < 4; ++i) CHECK(m.transition.row(i).sum() < 1.0);
  // the Laplacian no longer annihilates constants in this reading
  CHECK((m.laplacian * Eigen::VectorXd::Ones(4)).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("matrix identities on random graphs") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 11);
    const auto g = testutil::random_connected_graph(n, rng);
    const auto m = assemble_matrices(g);

    // L = D - W exactly
    const Eigen::MatrixXd l2 =
        Eigen::MatrixXd(m.degrees.asDiagonal()) - g.weights;
    CHECK((m.laplacian - l2).cwiseAbs().maxCoeff() == 0.0);

    // rows of P sum to one
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(m.transition.row(i).sum() - 1.0) <= 1e-12);

    // W = diag(d) P reconstructs the weights
    const Eigen::MatrixXd w2 = m.degrees.asDiagonal() * m.transition;
    CHECK((w2 - g.weights).cwiseAbs().maxCoeff() <=
          1e-12 * std::max(1.0, g.weights.maxCoeff()));

    // L is PSD with the constant vector in its kernel
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.laplacian);
    CHECK(es.eigenvalues()[0] >= -1e-10);
    CHECK((m.laplacian * Eigen::VectorXd::Ones(n)).norm() <=
          1e-10 * m.laplacian.norm());
  }
}

TEST_CASE("doubling measures quadruples weights and fixes P") {
  auto s = uniform_circle(9, 1.0);
  const auto g1 = build_graph(s, 1.5);
  for (auto& p : s.points) p.measure *= 2.0;
  const auto g2 = build_graph(s, 1.5);
  CHECK((g2.weights - 4.0 * g1.weights).cwiseAbs().maxCoeff() <=
        1e-12 * g1.weights.maxCoeff());
  const auto m1 = assemble_matrices(g1);
  const auto m2 = assemble_matrices(g2);
  CHECK((m1.transition - m2.transition).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("transition eigenvalues are real and within [-1, 1]") {
  Rng rng(5);
  const auto g = testutil::random_connected_graph(9, rng);
  const auto m = assemble_matrices(g);
  const Eigen::VectorXd d_is = m.degrees.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd sym = d_is.asDiagonal() * g.weights * d_is.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  CHECK(es.eigenvalues().minCoeff() >= -1.0 - 1e-10);
  CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-10);
}

TEST_CASE("raw weight validation") {
  Eigen::MatrixXd w(2, 2);
  w << 0, 1, 2, 0;
  CHECK_THROWS_AS(graph_from_weights(w), Error);  // asymmetric
  w << 1, 1, 1, 0;
  CHECK_THROWS_AS(graph_from_weights(w), Error);  // diagonal
  w << 0, -1, -1, 0;
  CHECK_THROWS_AS(graph_from_weights(w), Error);  // negative
  Eigen::MatrixXd disc = Eigen::MatrixXd::Zero(4, 4);
  disc(0, 1) = disc(1, 0) = 1.0;
  disc(2, 3) = disc(3, 2) = 1.0;
  CHECK_THROWS_AS(graph_from_weights(disc), Error);  // two components
}
