#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <vector>

#include "mwl/rng.hpp"

namespace mwl {

enum class ManifoldFamily { sphere };

/// Scalar description of the underlying manifold: dimension, radius, and the
/// derived geometric constants that feed the spectral envelope.
struct ManifoldDescriptor {
  ManifoldFamily family = ManifoldFamily::sphere;
  int dim = 1;                    // intrinsic dimension n
  double radius = 1.0;            // R
  double diameter = 0.0;          // pi*R for spheres
  double injectivity_radius = 0.0;  // pi*R for spheres
  double curvature_bound = 0.0;   // sectional curvature bound; 1/R^2 for spheres
  double total_volume = 0.0;

  static ManifoldDescriptor sphere(int dim, double radius);
};

/// A vertex sampled from the manifold together with the volume of its cell.
struct SamplePoint {
  Eigen::VectorXd coords;  // ambient embedding, length dim+1 for spheres
  double measure = 0.0;    // cell volume; 0 until measures are estimated
};

/// An epsilon-net with (optionally) estimated cell measures.
struct ManifoldSampling {
  ManifoldDescriptor descriptor;
  std::vector<SamplePoint> points;
  double epsilon = 0.0;
  bool coverage_verified = false;

  int size() const { return static_cast<int>(points.size()); }
};

/// Manifold interface. Only the sphere family is built in; everything
/// downstream touches manifolds through this surface so further families can
/// be added without changing the graph/spectral/walk modules.
class Manifold {
 public:
  virtual ~Manifold() = default;
  virtual const ManifoldDescriptor& descriptor() const = 0;
  /// Uniform draw with respect to the volume measure.
  virtual Eigen::VectorXd sample_uniform(Rng& rng) const = 0;
  virtual double geodesic(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const = 0;
};

class Sphere final : public Manifold {
 public:
  Sphere(int dim, double radius);
  const ManifoldDescriptor& descriptor() const override { return desc_; }
  Eigen::VectorXd sample_uniform(Rng& rng) const override;
  double geodesic(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override;

 private:
  ManifoldDescriptor desc_;
};

std::unique_ptr<Manifold> make_manifold(const ManifoldDescriptor& d);

/// Geodesic distance between two on-sphere points:
/// R * arccos(clamp(<x,y>/R^2, -1, 1)). Throws on dimension mismatch.
double geodesic_distance(const SamplePoint& x, const SamplePoint& y,
                         const ManifoldDescriptor& d);

/// The i-th distinct Laplace-Beltrami eigenvalue of S^dim(R), 1-based:
/// (i-1)(i+dim-2). This is the radius-free form; scale_by_radius divides by
/// R^2. Any i >= 1 is accepted even though the closed-form list is usually
/// quoted only up to i = dim.
double laplace_beltrami_eigenvalue(int i, const ManifoldDescriptor& d,
                                   bool scale_by_radius = false);

/// First `count` Laplace-Beltrami eigenvalues in ascending order *with
/// multiplicities* (e.g. {0, 1, 1, 4, 4, ...} on the circle), which is the
/// sequence a graph spectrum realizes.
std::vector<double> laplace_beltrami_spectrum(const ManifoldDescriptor& d, int count,
                                              bool scale_by_radius = false);

/// Farthest-point sampling over a dense uniform candidate pool until every
/// candidate lies within epsilon of a chosen vertex. Measures are left at
/// zero. Deterministic for a fixed seed.
ManifoldSampling sample_epsilon_net(const Manifold& m, double epsilon,
                                    std::uint64_t seed);

/// Monte Carlo cell measures: mc_points uniform draws, each assigned to its
/// geodesically nearest vertex (ties to the lowest index);
/// mu_i = total_volume * count_i / mc_points. Throws if a vertex receives no
/// samples. Requires mc_points >= 10*N.
ManifoldSampling estimate_voronoi_measures(const Manifold& m,
                                           const ManifoldSampling& s,
                                           long mc_points, std::uint64_t seed);

struct CoverageResult {
  bool covered = false;
  double max_gap = 0.0;  // largest observed probe-to-net distance
};

/// Statistical coverage check: true iff every probe lands within epsilon of
/// some vertex. Requires probes >= 1000.
CoverageResult verify_coverage(const Manifold& m, const ManifoldSampling& s,
                               long probes, std::uint64_t seed);

/// Exact uniform net on S^1(radius): N equally spaced vertices, each with
/// measure 2*pi*radius/N. `epsilon` defaults to the covering radius pi*R/N;
/// a larger declared epsilon is accepted (the net is still an epsilon-net).
ManifoldSampling uniform_circle(int n_points, double radius, double epsilon = 0.0);

}  // namespace mwl
