#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>

#include "mwl/graph.hpp"

namespace mwl {

enum class GapConvention {
  algebraic_second,  // second largest eigenvalue of P
  absolute_second,   // largest |eigenvalue| among non-Perron eigenvalues
};

struct SpectralSummary {
  Eigen::VectorXd laplacian_eigs;   // ascending
  Eigen::VectorXd transition_eigs;  // descending
  double second_largest = 0.0;      // lambda_{P,~i} under the active convention
  double gap = 0.0;                 // 1 - second_largest
  double gap_algebraic = 0.0;       // both conventions, always reported
  double gap_absolute = 0.0;
  Eigen::VectorXd eq7_residuals;
  double eq7_max_residual = 0.0;
  GapConvention convention = GapConvention::absolute_second;
};

/// Eigenvalues of L = D - W, ascending (dense symmetric solver).
Eigen::VectorXd laplacian_spectrum(const GraphMatrices& m);

/// Eigenvalues of P, descending, computed through the symmetric similar
/// matrix diag(d)^{-1/2} W diag(d)^{-1/2}.
Eigen::VectorXd transition_spectrum(const GraphMatrices& m);

/// Eigenvalues of diag(mu)^{-1/2} L diag(mu)^{-1/2}, ascending: the discrete
/// operator acting on functions square-integrable against the vertex
/// measures. These are the values comparable to Laplace-Beltrami eigenvalues
/// (the plain L spectrum scales with the measures). Equals laplacian_spectrum
/// when all measures are 1.
Eigen::VectorXd measure_normalized_spectrum(const WeightedGraph& g);

/// Max residual ||A x - lambda x|| over all eigenpairs, for on-demand solver
/// verification. `laplacian` selects L, otherwise the symmetrized transition.
double spectrum_residual(const GraphMatrices& m, bool laplacian = true);

/// lambda_P = 1 - lambda_L / degree. Exact when the graph is weighted-regular.
double eq7_map(double lambda_L, double degree);

/// |sorted lambda_P,i - eq7_map(sorted lambda_L,i, d_i)| with rank pairing:
/// i-th ascending Laplacian eigenvalue against i-th descending transition
/// eigenvalue, divided by the i-th vertex degree. ~0 on weighted-regular
/// graphs; quantifies how far the per-index identity drifts elsewhere.
Eigen::VectorXd eq7_residuals(const GraphMatrices& m);

SpectralSummary make_spectral_summary(
    const GraphMatrices& m, GapConvention convention = GapConvention::absolute_second);

/// Spectral envelope parameters. C_const multiplies the whole bracket; the
/// epsilon/kappa ratio is not constrained, but callers may warn when >= 1
/// (see envelope_warning).
struct EnvelopeParams {
  double C_const = 1.0;
  double epsilon = 0.0;
  double kappa = 0.0;
  double curvature_bound = 0.0;
};

/// Diagnostic message when the parameters look degenerate (epsilon/kappa >= 1);
/// empty otherwise.
std::string envelope_warning(const EnvelopeParams& p);

/// phi_{lower/upper}(lambda) = lambda -/+ C [ (eps/kappa + K kappa^2) lambda
///                                            + kappa lambda^{3/2} ].
double phi_lower(double lambda_M, const EnvelopeParams& p);
double phi_upper(double lambda_M, const EnvelopeParams& p);

enum class EnvelopeSide { lower, upper };

/// Envelope of the i-th closed-form sphere eigenvalue; identical to composing
/// laplace_beltrami_eigenvalue with phi_lower/phi_upper.
double sphere_phi(int i, const ManifoldDescriptor& d, const EnvelopeParams& p,
                  EnvelopeSide side);

struct EnvelopeFit {
  double C_const = 0.0;
  int n_observations = 0;
  bool degenerate = false;
  std::string warning;
};

/// Least-squares slope through the origin of residuals against brackets,
/// clamped at zero. The regression kernel behind fit_envelope_constant.
double fit_constant_least_squares(std::span<const double> residuals,
                                  std::span<const double> brackets);

/// Least-squares estimate (through the origin, clamped at 0) of the envelope
/// constant from |measure-normalized eigenvalue - manifold eigenvalue| against
/// the bracket term, over the first `n_eigenvalues` eigenvalues of each graph.
/// Graphs must share one manifold. When a graph does not carry its sampling
/// epsilon, the covering radius is estimated by Monte Carlo probing (seeded).
EnvelopeFit fit_envelope_constant(std::span<const WeightedGraph> graphs,
                                  int n_eigenvalues = 5,
                                  std::uint64_t probe_seed = 0x5eedu);

/// Monte Carlo covering radius of a vertex set: max over probes of the
/// distance to the nearest vertex.
double estimate_covering_radius(const WeightedGraph& g, long probes,
                                std::uint64_t seed);

}  // namespace mwl
