#include "mwl/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mwl/errors.hpp"

namespace mwl {

namespace {
constexpr double kPi = std::numbers::pi;

double sphere_surface_volume(int dim, double radius) {
  // vol(S^n(R)) = 2 pi^{(n+1)/2} R^n / Gamma((n+1)/2)
  const double n = static_cast<double>(dim);
  return 2.0 * std::pow(kPi, (n + 1.0) / 2.0) * std::pow(radius, n) /
         std::tgamma((n + 1.0) / 2.0);
}

// Binomial coefficient, exact for the small arguments used here.
double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

// Multiplicity of the l-th distinct sphere eigenvalue: the dimension of the
// degree-l spherical harmonics on S^n.
long sphere_multiplicity(int l, int n) {
  if (l == 0) return 1;
  return static_cast<long>(binom(n + l, l) - binom(n + l - 2, l - 2));
}
}  // namespace

ManifoldDescriptor ManifoldDescriptor::sphere(int dim, double radius) {
  require(dim >= 1, ErrorCode::precondition, "sphere dimension must be >= 1");
  require(radius > 0.0, ErrorCode::precondition, "sphere radius must be positive");
  ManifoldDescriptor d;
  d.family = ManifoldFamily::sphere;
  d.dim = dim;
  d.radius = radius;
  d.diameter = kPi * radius;
  d.injectivity_radius = kPi * radius;
  d.curvature_bound = 1.0 / (radius * radius);
  d.total_volume = sphere_surface_volume(dim, radius);
  return d;
}

Sphere::Sphere(int dim, double radius) : desc_(ManifoldDescriptor::sphere(dim, radius)) {}

Eigen::VectorXd Sphere::sample_uniform(Rng& rng) const {
  // Normalized Gaussian vector; dimension-agnostic uniform law on the sphere.
  const int ambient = desc_.dim + 1;
  Eigen::VectorXd v(ambient);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < ambient; ++i) v[i] = rng.normal();
    norm2 = v.squaredNorm();
  } while (norm2 == 0.0);
  return v * (desc_.radius / std::sqrt(norm2));
}

double Sphere::geodesic(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  const double r2 = desc_.radius * desc_.radius;
  const double c = std::clamp(x.dot(y) / r2, -1.0, 1.0);
  return desc_.radius * std::acos(c);
}

std::unique_ptr<Manifold> make_manifold(const ManifoldDescriptor& d) {
  require(d.family == ManifoldFamily::sphere, ErrorCode::precondition,
          "unsupported manifold family");
  return std::make_unique<Sphere>(d.dim, d.radius);
}

double geodesic_distance(const SamplePoint& x, const SamplePoint& y,
                         const ManifoldDescriptor& d) {
  require(x.coords.size() == d.dim + 1 && y.coords.size() == d.dim + 1,
          ErrorCode::precondition,
          "point dimension does not match the manifold descriptor");
  const double r2 = d.radius * d.radius;
  const double c = std::clamp(x.coords.dot(y.coords) / r2, -1.0, 1.0);
  return d.radius * std::acos(c);
}

double laplace_beltrami_eigenvalue(int i, const ManifoldDescriptor& d,
                                   bool scale_by_radius) {
  require(d.family == ManifoldFamily::sphere, ErrorCode::precondition,
          "closed-form eigenvalues are only available for spheres");
  require(i >= 1, ErrorCode::precondition, "eigenvalue index must be >= 1");
  const double lam = static_cast<double>(i - 1) * static_cast<double>(i + d.dim - 2);
  return scale_by_radius ? lam / (d.radius * d.radius) : lam;
}

std::vector<double> laplace_beltrami_spectrum(const ManifoldDescriptor& d, int count,
                                              bool scale_by_radius) {
  require(d.family == ManifoldFamily::sphere, ErrorCode::precondition,
          "closed-form eigenvalues are only available for spheres");
  std::vector<double> out;
  out.reserve(count);
  for (int l = 0; static_cast<int>(out.size()) < count; ++l) {
    const double lam = laplace_beltrami_eigenvalue(l + 1, d, scale_by_radius);
    const long mult = sphere_multiplicity(l, d.dim);
    for (long m = 0; m < mult && static_cast<int>(out.size()) < count; ++m)
      out.push_back(lam);
  }
  return out;
}

ManifoldSampling sample_epsilon_net(const Manifold& m, double epsilon,
                                    std::uint64_t seed) {
  const ManifoldDescriptor& d = m.descriptor();
  require(epsilon > 0.0 && epsilon < d.diameter, ErrorCode::precondition,
          "epsilon must lie in (0, diameter)");

  const double want = 100.0 / std::pow(epsilon, d.dim);
  const long pool_size = static_cast<long>(std::min(1e6, std::max(1e5, want)));
  // Covering needs ~ (diameter/epsilon)^dim vertices; certifying them against
  // the pool needs a comfortable multiple of that many candidates.
  const double required = 20.0 * std::pow(d.diameter / epsilon, d.dim);
  if (required > static_cast<double>(pool_size)) {
    throw Error(ErrorCode::coverage,
                "epsilon too small for the candidate pool; need a pool of at least " +
                    std::to_string(static_cast<long>(required)) +
                    " candidates (cap " + std::to_string(pool_size) + ")");
  }
  Rng pool_rng(derive_seed(seed, "pool"));
  std::vector<Eigen::VectorXd> pool;
  pool.reserve(pool_size);
  for (long i = 0; i < pool_size; ++i) pool.push_back(m.sample_uniform(pool_rng));

  // Farthest-point sampling: greedily add the candidate farthest from the
  // current net until the pool is covered.
  std::vector<long> chosen;
  std::vector<double> dist(pool_size, std::numeric_limits<double>::infinity());
  long next = 0;  // deterministic start
  while (true) {
    chosen.push_back(next);
    const Eigen::VectorXd& v = pool[next];
    double max_d = 0.0;
    long arg = -1;
    for (long i = 0; i < pool_size; ++i) {
      const double g = m.geodesic(pool[i], v);
      if (g < dist[i]) dist[i] = g;
      if (dist[i] > max_d) {
        max_d = dist[i];
        arg = i;
      }
    }
    // Stop a little inside epsilon so the finished net also covers manifold
    // points that fall between pool candidates.
    if (max_d <= 0.98 * epsilon) break;
    next = arg;
    // A net absorbing a large share of the pool cannot certify coverage of
    // the manifold between candidates.
    if (static_cast<long>(chosen.size()) * 20 > pool_size) {
      throw Error(ErrorCode::coverage,
                  "epsilon too small for the candidate pool; need a pool of at least " +
                      std::to_string(static_cast<long>(chosen.size()) * 400) +
                      " candidates");
    }
  }

  ManifoldSampling s;
  s.descriptor = d;
  s.epsilon = epsilon;
  s.points.reserve(chosen.size());
  for (long idx : chosen) s.points.push_back({pool[idx], 0.0});
  return s;
}

ManifoldSampling estimate_voronoi_measures(const Manifold& m,
                                           const ManifoldSampling& s,
                                           long mc_points, std::uint64_t seed) {
  const long n = s.size();
  require(n >= 1, ErrorCode::precondition, "empty sampling");
  require(mc_points >= 10 * n, ErrorCode::precondition,
          "mc_points must be at least 10x the vertex count");

  Rng rng(derive_seed(seed, "measures"));
  std::vector<long> counts(n, 0);
  for (long p = 0; p < mc_points; ++p) {
    const Eigen::VectorXd x = m.sample_uniform(rng);
    long best = 0;
    double best_d = m.geodesic(x, s.points[0].coords);
    for (long i = 1; i < n; ++i) {
      const double g = m.geodesic(x, s.points[i].coords);
      if (g < best_d) {  // strict: ties stay with the lowest index
        best_d = g;
        best = i;
      }
    }
    ++counts[best];
  }

  ManifoldSampling out = s;
  const double vol = s.descriptor.total_volume;
  for (long i = 0; i < n; ++i) {
    if (counts[i] == 0) {
      throw Error(ErrorCode::precondition,
                  "vertex " + std::to_string(i) +
                      " received no Monte Carlo samples; raise mc_points");
    }
    out.points[i].measure = vol * static_cast<double>(counts[i]) /
                            static_cast<double>(mc_points);
  }
  return out;
}

CoverageResult verify_coverage(const Manifold& m, const ManifoldSampling& s,
                               long probes, std::uint64_t seed) {
  require(probes >= 1000, ErrorCode::precondition, "need at least 1000 probes");
  Rng rng(derive_seed(seed, "coverage"));
  CoverageResult r;
  r.covered = true;
  for (long p = 0; p < probes; ++p) {
    const Eigen::VectorXd x = m.sample_uniform(rng);
    double best = std::numeric_limits<double>::infinity();
    for (const SamplePoint& v : s.points) {
      const double g = m.geodesic(x, v.coords);
      if (g < best) best = g;
    }
    if (best > r.max_gap) r.max_gap = best;
    if (best > s.epsilon) r.covered = false;
  }
  return r;
}

ManifoldSampling uniform_circle(int n_points, double radius, double epsilon) {
  require(n_points >= 1, ErrorCode::precondition, "need at least one point");
  require(radius > 0.0, ErrorCode::precondition, "radius must be positive");
  ManifoldSampling s;
  s.descriptor = ManifoldDescriptor::sphere(1, radius);
  const double covering = kPi * radius / n_points;
  s.epsilon = epsilon > 0.0 ? epsilon : covering;
  require(s.epsilon >= covering * (1.0 - 1e-12), ErrorCode::precondition,
          "declared epsilon is below the net's covering radius");
  const double mu = s.descriptor.total_volume / n_points;
  s.points.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double a = 2.0 * kPi * i / n_points;
    Eigen::VectorXd c(2);
    c << radius * std::cos(a), radius * std::sin(a);
    s.points.push_back({c, mu});
  }
  s.coverage_verified = true;
  return s;
}

}  // namespace mwl
