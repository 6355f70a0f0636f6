#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mwl/errors.hpp"
#include "mwl/manifold.hpp"

using namespace mwl;
namespace {
constexpr double kPi = std::numbers::pi;

SamplePoint pt(std::initializer_list<double> v) {
  SamplePoint p;
  p.coords = Eigen::VectorXd(v.size());
  int i = 0;
  for (double x : v) p.coords[i++] = x;
  return p;
}
}  // namespace

TEST_CASE("sphere descriptor constants") {
  const auto c1 = ManifoldDescriptor::sphere(1, 1.0);
  CHECK(c1.diameter == doctest::Approx(kPi));
  CHECK(c1.injectivity_radius == doctest::Approx(kPi));
  CHECK(c1.curvature_bound == doctest::Approx(1.0));
  CHECK(c1.total_volume == doctest::Approx(2.0 * kPi));

  const auto s2 = ManifoldDescriptor::sphere(2, 2.0);
  CHECK(s2.curvature_bound == doctest::Approx(0.25));
  CHECK(s2.total_volume == doctest::Approx(16.0 * kPi));  // 4 pi R^2
}

TEST_CASE("geodesic distance on spheres") {
  const auto c = ManifoldDescriptor::sphere(1, 1.0);
  const auto a = pt({1.0, 0.0});
  CHECK(geodesic_distance(a, a, c) == 0.0);
  CHECK(geodesic_distance(a, pt({-1.0, 0.0}), c) == doctest::Approx(kPi));

  const auto s2 = ManifoldDescriptor::sphere(2, 2.0);
  CHECK(geodesic_distance(pt({2, 0, 0}), pt({0, 2, 0}), s2) == doctest::Approx(kPi));

  CHECK_THROWS_AS(geodesic_distance(a, pt({1, 0, 0}), c), Error);
}

TEST_CASE("geodesic distance satisfies the metric axioms on random triples") {
  Sphere sph(2, 1.5);
  const auto& d = sph.descriptor();
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    SamplePoint x{sph.sample_uniform(rng), 0.0};
    SamplePoint y{sph.sample_uniform(rng), 0.0};
    SamplePoint z{sph.sample_uniform(rng), 0.0};
    const double dxy = geodesic_distance(x, y, d);
    const double dyx = geodesic_distance(y, x, d);
    const double dxz = geodesic_distance(x, z, d);
    const double dzy = geodesic_distance(z, y, d);
    CHECK(std::abs(dxy - dyx) <= 1e-12);
    CHECK(dxy <= dxz + dzy + 1e-12);
    CHECK(dxy >= 0.0);
  }
}

TEST_CASE("closed-form sphere eigenvalues") {
  const auto s2 = ManifoldDescriptor::sphere(2, 1.0);
  CHECK(laplace_beltrami_eigenvalue(1, s2) == 0.0);
  CHECK(laplace_beltrami_eigenvalue(2, s2) == 2.0);
  const auto s3 = ManifoldDescriptor::sphere(3, 1.0);
  CHECK(laplace_beltrami_eigenvalue(3, s3) == 8.0);

  // nondecreasing in i, any i >= 1 accepted
  for (int i = 1; i < 20; ++i) {
    CHECK(laplace_beltrami_eigenvalue(i + 1, s2) >= laplace_beltrami_eigenvalue(i, s2));
  }

  const auto big = ManifoldDescriptor::sphere(2, 3.0);
  CHECK(laplace_beltrami_eigenvalue(2, big) == 2.0);  // printed form has no R
  CHECK(laplace_beltrami_eigenvalue(2, big, true) == doctest::Approx(2.0 / 9.0));
}

TEST_CASE("eigenvalue list with multiplicities") {
  const auto c = ManifoldDescriptor::sphere(1, 1.0);
  const auto lam1 = laplace_beltrami_spectrum(c, 7);
  const std::vector<double> want1 = {0, 1, 1, 4, 4, 9, 9};
  CHECK(lam1 == want1);

  const auto s2 = ManifoldDescriptor::sphere(2, 1.0);
  const auto lam2 = laplace_beltrami_spectrum(s2, 9);
  const std::vector<double> want2 = {0, 2, 2, 2, 6, 6, 6, 6, 6};
  CHECK(lam2 == want2);
}

TEST_CASE("farthest-point net covers the circle") {
  Sphere circle(1, 1.0);

  SUBCASE("one ball of radius pi covers S^1") {
    const auto s = sample_epsilon_net(circle, kPi * 0.999, 3);
    CHECK(s.size() <= 2);
    CHECK(s.size() >= 1);
  }

  SUBCASE("packing lower bound at epsilon = 0.1") {
    const auto s = sample_epsilon_net(circle, 0.1, 7);
    CHECK(s.size() >= 32);  // N >= pi/eps
    CHECK(s.size() <= 80);
    const auto cov = verify_coverage(circle, s, 20000, 5);
    CHECK(cov.covered);
    CHECK(cov.max_gap <= s.epsilon);
  }

  SUBCASE("determinism") {
    const auto a = sample_epsilon_net(circle, 0.3, 9);
    const auto b = sample_epsilon_net(circle, 0.3, 9);
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i) {
      CHECK(a.points[i].coords == b.points[i].coords);
    }
  }
}

TEST_CASE("net on the 2-sphere is coverage-verified") {
  Sphere s2(2, 1.0);
  const auto s = sample_epsilon_net(s2, 0.5, 1);
  const auto cov = verify_coverage(s2, s, 100000, 2);
  CHECK(cov.covered);
}

TEST_CASE("epsilon too small for the pool reports the required size") {
  Sphere circle(1, 1.0);
  CHECK_THROWS_WITH_AS(sample_epsilon_net(circle, 5e-5, 1),
                       doctest::Contains("pool"), Error);
  try {
    sample_epsilon_net(circle, 5e-5, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::coverage);
  }
}

TEST_CASE("Voronoi measures") {
  Sphere circle(1, 1.0);

  SUBCASE("single cell is the whole manifold") {
    auto s = uniform_circle(1, 1.0, kPi);
    s.points[0].measure = 0.0;
    const auto m = estimate_voronoi_measures(circle, s, 1000, 1);
    CHECK(m.points[0].measure == doctest::Approx(2.0 * kPi));
  }

  SUBCASE("four equally spaced cells, binomial concentration") {
    const auto s = uniform_circle(4, 1.0);
    const auto m = estimate_voronoi_measures(circle, s, 1000000, 2);
    double total = 0.0;
    for (const auto& p : m.points) {
      CHECK(p.measure == doctest::Approx(kPi / 2).epsilon(0.01));
      total += p.measure;
    }
    CHECK(total == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  }

  SUBCASE("hemispheres of S^2") {
    Sphere s2(2, 1.0);
    ManifoldSampling s;
    s.descriptor = s2.descriptor();
    s.epsilon = kPi;
    Eigen::VectorXd north(3), south(3);
    north << 0, 0, 1;
    south << 0, 0, -1;
    s.points.push_back({north, 0.0});
    s.points.push_back({south, 0.0});
    const auto m = estimate_voronoi_measures(s2, s, 1000000, 3);
    CHECK(m.points[0].measure == doctest::Approx(2.0 * kPi).epsilon(0.01));
    CHECK(m.points[1].measure == doctest::Approx(2.0 * kPi).epsilon(0.01));
  }

  SUBCASE("a vertex that can never win reports zero samples") {
    ManifoldSampling s = uniform_circle(2, 1.0, kPi);
    s.points[1] = s.points[0];  // duplicate loses every tie
    CHECK_THROWS_WITH_AS(estimate_voronoi_measures(circle, s, 1000, 4),
                         doctest::Contains("no Monte Carlo samples"), Error);
  }

  SUBCASE("mc_points precondition") {
    const auto s = uniform_circle(4, 1.0);
    CHECK_THROWS_AS(estimate_voronoi_measures(circle, s, 39, 1), Error);
  }
}

TEST_CASE("coverage verification") {
  Sphere circle(1, 1.0);

  SUBCASE("single vertex with epsilon = diameter") {
    const auto s = uniform_circle(1, 1.0, kPi);
    CHECK(verify_coverage(circle, s, 1000, 1).covered);
  }

  SUBCASE("two antipodal points with small epsilon fail") {
    auto s = uniform_circle(2, 1.0, kPi);  // covering radius pi/2
    s.epsilon = kPi / 4;                   // deliberately not an epsilon-net
    const auto cov = verify_coverage(circle, s, 20000, 1);
    CHECK_FALSE(cov.covered);
    CHECK(cov.max_gap > kPi / 4);
    CHECK(cov.max_gap <= kPi / 2 + 1e-9);
  }

  SUBCASE("dense uniform net passes at epsilon 0.1") {
    const auto s = uniform_circle(100, 1.0, 0.1);
    CHECK(verify_coverage(circle, s, 20000, 1).covered);
  }
}

TEST_CASE("uniform circle fixture") {
  const auto s = uniform_circle(8, 2.0);
  CHECK(s.size() == 8);
  CHECK(s.epsilon == doctest::Approx(kPi * 2.0 / 8));
  double total = 0.0;
  for (const auto& p : s.points) {
    CHECK(p.coords.norm() == doctest::Approx(2.0));
    total += p.measure;
  }
  CHECK(total == doctest::Approx(4.0 * kPi));
  CHECK_THROWS_AS(uniform_circle(8, 2.0, 0.1), Error);  // below covering radius
}
