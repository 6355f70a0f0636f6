#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mwl/errors.hpp"
#include "mwl/spectral.hpp"
#include "test_util.hpp"

using namespace mwl;
namespace {
constexpr double kPi = std::numbers::pi;

GraphMatrices two_vertex() {
  Eigen::MatrixXd w(2, 2);
  w << 0, 1, 1, 0;
  return assemble_matrices(graph_from_weights(w));
}

GraphMatrices triangle() {
  Eigen::MatrixXd w(3, 3);
  w << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  return assemble_matrices(graph_from_weights(w));
}

GraphMatrices path3() {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
  w(0, 1) = w(1, 0) = 1.0;
  w(1, 2) = w(2, 1) = 1.0;
  return assemble_matrices(graph_from_weights(w));
}
}  // namespace

TEST_CASE("laplacian spectrum fixtures") {
  const auto lam2 = laplacian_spectrum(two_vertex());
  CHECK(lam2[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lam2[1] == doctest::Approx(2.0));

  const auto lam3 = laplacian_spectrum(triangle());
  CHECK(lam3[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lam3[1] == doctest::Approx(3.0));
  CHECK(lam3[2] == doctest::Approx(3.0));
}

TEST_CASE("cycle spectrum pairs up") {
  // odd N: every nonzero circulant eigenvalue comes in a (k, N-k) pair
  const int n = 13;
  const auto g = build_graph(uniform_circle(n, 1.0), 3.5 * 2.0 * kPi / n);
  const auto lam = laplacian_spectrum(assemble_matrices(g));
  CHECK(std::abs(lam[0]) <= 1e-12);
  CHECK(lam[1] > 1e-8);  // zero mode is simple
  for (int k = 1; k + 1 < n; k += 2) {
    CHECK(lam[k] == doctest::Approx(lam[k + 1]).epsilon(1e-10));
  }
}

TEST_CASE("transition spectrum fixtures") {
  const auto p2 = transition_spectrum(two_vertex());
  CHECK(p2[0] == doctest::Approx(1.0));
  CHECK(p2[1] == doctest::Approx(-1.0));

  const auto p3 = transition_spectrum(triangle());
  CHECK(p3[0] == doctest::Approx(1.0));
  CHECK(p3[1] == doctest::Approx(-0.5));
  CHECK(p3[2] == doctest::Approx(-0.5));

  Rng rng(3);
  const auto g = testutil::random_connected_graph(8, rng);
  const auto p = transition_spectrum(assemble_matrices(g));
  CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(p[1] < 1.0 - 1e-10);  // Perron root is simple on a connected graph
}

TEST_CASE("eq7 map") {
  CHECK(eq7_map(0.0, 5.0) == 1.0);
  CHECK(eq7_map(2.0, 1.0) == -1.0);
  CHECK(eq7_map(3.0, 2.0) == -0.5);
  CHECK_THROWS_AS(eq7_map(1.0, 0.0), Error);
}

TEST_CASE("eq7 residuals: exact on regular graphs, large on the pendant path") {
  CHECK(eq7_residuals(triangle()).maxCoeff() <= 1e-10);
  CHECK(eq7_residuals(two_vertex()).maxCoeff() <= 1e-10);

  // degrees (1,2,1): lambda_L = {0,1,3}, lambda_P = {1,0,-1}
  const auto res = eq7_residuals(path3());
  CHECK(res.maxCoeff() > 1e-3);
  CHECK(res[0] <= 1e-12);
  CHECK(res[1] == doctest::Approx(0.5));
  CHECK(res[2] == doctest::Approx(1.0));
}

TEST_CASE("regular-graph spectrum consistency: d(1 - lambda_P) = lambda_L") {
  const auto m = triangle();
  const auto lam_L = laplacian_spectrum(m);
  const auto lam_P = transition_spectrum(m);
  for (int i = 0; i < 3; ++i) {
    CHECK(m.degrees[0] * (1.0 - lam_P[i]) == doctest::Approx(lam_L[i]).epsilon(1e-9));
  }
}

TEST_CASE("spectral summary and gap conventions") {
  const auto s = make_spectral_summary(two_vertex());
  CHECK(s.gap_algebraic == doctest::Approx(2.0));  // 1 - (-1)
  CHECK(s.gap_absolute == doctest::Approx(0.0));   // 1 - |-1|
  CHECK(s.convention == GapConvention::absolute_second);
  CHECK(s.gap == doctest::Approx(0.0));
  CHECK(s.second_largest == doctest::Approx(1.0));

  const auto a = make_spectral_summary(triangle(), GapConvention::algebraic_second);
  CHECK(a.gap == doctest::Approx(1.5));
  CHECK(a.second_largest == doctest::Approx(-0.5));
  CHECK(a.gap_absolute == doctest::Approx(0.5));
  CHECK(a.eq7_max_residual <= 1e-10);
}

TEST_CASE("spectrum residual diagnostic") {
  CHECK(spectrum_residual(triangle(), true) <= 1e-10);
  CHECK(spectrum_residual(triangle(), false) <= 1e-10);
}

TEST_CASE("envelope evaluation") {
  EnvelopeParams p{1.0, 0.1, 0.4, 1.0};

  CHECK(phi_lower(0.0, p) == 0.0);
  CHECK(phi_upper(0.0, p) == 0.0);

  EnvelopeParams zero{0.0, 0.1, 0.4, 1.0};
  CHECK(phi_lower(1.7, zero) == 1.7);
  CHECK(phi_upper(1.7, zero) == 1.7);

  CHECK(phi_upper(1.0, p) == doctest::Approx(1.81).epsilon(1e-12));
  CHECK(phi_lower(1.0, p) == doctest::Approx(0.19).epsilon(1e-12));

  CHECK(envelope_warning(p).empty());
  EnvelopeParams bad{1.0, 0.5, 0.4, 1.0};
  CHECK_FALSE(envelope_warning(bad).empty());
}

TEST_CASE("envelope ordering property") {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    EnvelopeParams p;
    p.C_const = rng.uniform() * 3.0;
    p.epsilon = 0.01 + rng.uniform();
    p.kappa = 0.01 + rng.uniform();
    p.curvature_bound = rng.uniform() * 2.0;
    const double lam = rng.uniform() * 10.0;
    CHECK(phi_lower(lam, p) <= lam);
    CHECK(lam <= phi_upper(lam, p));
  }
}

TEST_CASE("sphere envelope composes exactly with the closed-form eigenvalue") {
  const auto d = ManifoldDescriptor::sphere(2, 1.0);
  EnvelopeParams p{1.0, 0.1, 0.4, 1.0};

  CHECK(sphere_phi(1, d, p, EnvelopeSide::lower) == 0.0);
  CHECK(sphere_phi(1, d, p, EnvelopeSide::upper) == 0.0);

  EnvelopeParams zero{0.0, 0.1, 0.4, 1.0};
  CHECK(sphere_phi(2, d, zero, EnvelopeSide::upper) == 2.0);

  // 2 + (0.25 + 0.16)*2 + 0.4*2^1.5
  CHECK(sphere_phi(2, d, p, EnvelopeSide::upper) ==
        doctest::Approx(3.9513708498984765).epsilon(1e-12));

  for (int i = 1; i <= 6; ++i) {
    const double lam = laplace_beltrami_eigenvalue(i, d);
    CHECK(sphere_phi(i, d, p, EnvelopeSide::lower) == phi_lower(lam, p));
    CHECK(sphere_phi(i, d, p, EnvelopeSide::upper) == phi_upper(lam, p));
  }

  EnvelopeParams wrong_curv{1.0, 0.1, 0.4, 2.0};
  CHECK_THROWS_AS(sphere_phi(2, d, wrong_curv, EnvelopeSide::upper), Error);
}

TEST_CASE("measure-normalized spectrum") {
  SUBCASE("equals the plain spectrum at unit measures") {
    Rng rng(8);
    const auto g = testutil::random_connected_graph(7, rng);
    const auto m = assemble_matrices(g);
    CHECK((measure_normalized_spectrum(g) - laplacian_spectrum(m)).cwiseAbs().maxCoeff() <=
          1e-9);
  }

  SUBCASE("tracks the circle spectrum on a uniform net") {
    const auto g = build_graph(uniform_circle(200, 1.0, 0.126), 0.504);
    const auto lam = measure_normalized_spectrum(g);
    CHECK(std::abs(lam[0]) <= 1e-9);
    CHECK(lam[1] == doctest::Approx(1.0).epsilon(0.15));
    CHECK(lam[1] == doctest::Approx(lam[2]).epsilon(1e-10));
  }
}

TEST_CASE("covering radius estimate on a uniform net") {
  const auto g = build_graph(uniform_circle(100, 1.0), 0.13);
  const double est = estimate_covering_radius(g, 20000, 1);
  CHECK(est <= kPi / 100 * 1.0000001);
  CHECK(est >= kPi / 100 * 0.5);
}

TEST_CASE("planted regression constant is recovered") {
  // residual = 2 * bracket + small noise; the slope must come back within 5%
  Rng rng(4242);
  std::vector<double> residuals, brackets;
  for (int i = 0; i < 40; ++i) {
    const double b = 0.1 + rng.uniform() * 3.0;
    brackets.push_back(b);
    residuals.push_back(2.0 * b + 0.02 * (rng.uniform() - 0.5) * b);
  }
  const double c = fit_constant_least_squares(residuals, brackets);
  CHECK(c == doctest::Approx(2.0).epsilon(0.05));

  const std::vector<double> zero = {0.0, 0.0};
  CHECK(fit_constant_least_squares(zero, zero) == 0.0);  // clamped, degenerate
}

TEST_CASE("envelope constant fit") {
  SUBCASE("circle refinements give a stable nonnegative constant") {
    std::vector<WeightedGraph> graphs;
    for (int n : {100, 200, 400})
      graphs.push_back(build_graph(uniform_circle(n, 1.0, 0.126), 0.504));
    const auto fit = fit_envelope_constant(graphs);
    CHECK_FALSE(fit.degenerate);
    CHECK(fit.C_const > 0.0);
    CHECK(fit.n_observations == 15);
  }

  SUBCASE("identical inputs are flagged degenerate") {
    std::vector<WeightedGraph> graphs;
    for (int rep = 0; rep < 2; ++rep)
      graphs.push_back(build_graph(uniform_circle(60, 1.0, 0.2), 0.8));
    const auto fit = fit_envelope_constant(graphs);
    CHECK(fit.degenerate);
    CHECK_FALSE(fit.warning.empty());
    CHECK(fit.C_const >= 0.0);
  }

  SUBCASE("mismatched manifolds are rejected") {
    std::vector<WeightedGraph> graphs;
    graphs.push_back(build_graph(uniform_circle(60, 1.0, 0.2), 0.8));
    graphs.push_back(build_graph(uniform_circle(60, 2.0, 0.4), 1.6));
    CHECK_THROWS_AS(fit_envelope_constant(graphs), Error);
  }
}
