#include "mwl/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mwl/errors.hpp"

namespace mwl {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_sym(const Eigen::MatrixXd& a,
                                                         bool with_vectors = false) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.compute(a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::precondition,
                "symmetric eigensolver failed to converge (n=" +
                    std::to_string(a.rows()) + ", |A|_inf=" +
                    std::to_string(a.cwiseAbs().maxCoeff()) + ")");
  }
  return es;
}

Eigen::MatrixXd symmetrized_transition(const GraphMatrices& m) {
  const Eigen::VectorXd dinvsqrt = m.degrees.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd w =
      Eigen::MatrixXd(m.degrees.asDiagonal()) - m.laplacian;  // W = D - L
  return dinvsqrt.asDiagonal() * w * dinvsqrt.asDiagonal();
}

}  // namespace

Eigen::VectorXd laplacian_spectrum(const GraphMatrices& m) {
  require((m.laplacian - m.laplacian.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
          ErrorCode::precondition, "Laplacian is not symmetric");
  return solve_sym(m.laplacian).eigenvalues();
}

Eigen::VectorXd transition_spectrum(const GraphMatrices& m) {
  require(m.degrees.minCoeff() > 0.0, ErrorCode::precondition,
          "all degrees must be positive");
  const Eigen::VectorXd asc = solve_sym(symmetrized_transition(m)).eigenvalues();
  return asc.reverse();
}

Eigen::VectorXd measure_normalized_spectrum(const WeightedGraph& g) {
  require(g.measures.size() == g.n_vertices && g.measures.minCoeff() > 0.0,
          ErrorCode::precondition, "all vertex measures must be positive");
  const GraphMatrices m = assemble_matrices(g);
  const Eigen::VectorXd minvsqrt = g.measures.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd b =
      minvsqrt.asDiagonal() * m.laplacian * minvsqrt.asDiagonal();
  return solve_sym((b + b.transpose()) / 2.0).eigenvalues();
}

double spectrum_residual(const GraphMatrices& m, bool laplacian) {
  const Eigen::MatrixXd a = laplacian ? m.laplacian : symmetrized_transition(m);
  const auto es = solve_sym(a, true);
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    const double r =
        (a * es.eigenvectors().col(i) - es.eigenvalues()[i] * es.eigenvectors().col(i))
            .norm();
    worst = std::max(worst, r);
  }
  return worst;
}

double eq7_map(double lambda_L, double degree) {
  require(degree > 0.0, ErrorCode::precondition, "degree must be positive");
  return 1.0 - lambda_L / degree;
}

Eigen::VectorXd eq7_residuals(const GraphMatrices& m) {
  const Eigen::VectorXd lam_L = laplacian_spectrum(m);   // ascending
  const Eigen::VectorXd lam_P = transition_spectrum(m);  // descending
  const int n = static_cast<int>(lam_L.size());
  Eigen::VectorXd res(n);
  for (int i = 0; i < n; ++i) {
    res[i] = std::abs(lam_P[i] - eq7_map(lam_L[i], m.degrees[i]));
  }
  return res;
}

SpectralSummary make_spectral_summary(const GraphMatrices& m,
                                      GapConvention convention) {
  SpectralSummary s;
  s.convention = convention;
  s.laplacian_eigs = laplacian_spectrum(m);
  s.transition_eigs = transition_spectrum(m);

  const int n = static_cast<int>(s.transition_eigs.size());
  require(n >= 2, ErrorCode::precondition, "need at least two vertices for a gap");
  const double lam2_alg = s.transition_eigs[1];
  double lam2_abs = 0.0;
  for (int i = 1; i < n; ++i) lam2_abs = std::max(lam2_abs, std::abs(s.transition_eigs[i]));
  s.gap_algebraic = 1.0 - lam2_alg;
  s.gap_absolute = 1.0 - lam2_abs;
  if (convention == GapConvention::algebraic_second) {
    s.second_largest = lam2_alg;
    s.gap = s.gap_algebraic;
  } else {
    s.second_largest = lam2_abs;
    s.gap = s.gap_absolute;
  }

  s.eq7_residuals = eq7_residuals(m);
  s.eq7_max_residual = s.eq7_residuals.maxCoeff();
  return s;
}

std::string envelope_warning(const EnvelopeParams& p) {
  if (p.kappa > 0.0 && p.epsilon / p.kappa >= 1.0) {
    return "epsilon/kappa = " + std::to_string(p.epsilon / p.kappa) +
           " >= 1; the envelope bracket is dominated by the net spacing";
  }
  return {};
}

namespace {
double phi_bracket(double lambda_M, const EnvelopeParams& p) {
  return (p.epsilon / p.kappa + p.curvature_bound * p.kappa * p.kappa) * lambda_M +
         p.kappa * std::pow(lambda_M, 1.5);
}
}  // namespace

double phi_lower(double lambda_M, const EnvelopeParams& p) {
  require(lambda_M >= 0.0, ErrorCode::precondition, "lambda must be nonnegative");
  return lambda_M - p.C_const * phi_bracket(lambda_M, p);
}

double phi_upper(double lambda_M, const EnvelopeParams& p) {
  require(lambda_M >= 0.0, ErrorCode::precondition, "lambda must be nonnegative");
  return lambda_M + p.C_const * phi_bracket(lambda_M, p);
}

double sphere_phi(int i, const ManifoldDescriptor& d, const EnvelopeParams& p,
                  EnvelopeSide side) {
  require(d.family == ManifoldFamily::sphere, ErrorCode::precondition,
          "sphere_phi requires a sphere descriptor");
  require(std::abs(p.curvature_bound - d.curvature_bound) <=
              1e-12 * std::max(1.0, d.curvature_bound),
          ErrorCode::precondition,
          "envelope curvature bound must match the sphere's 1/R^2");
  const double lam = laplace_beltrami_eigenvalue(i, d);
  return side == EnvelopeSide::lower ? phi_lower(lam, p) : phi_upper(lam, p);
}

double estimate_covering_radius(const WeightedGraph& g, long probes,
                                std::uint64_t seed) {
  require(g.coords.rows() == g.n_vertices && g.coords.rows() > 0,
          ErrorCode::precondition,
          "covering radius estimation needs vertex coordinates");
  const auto manifold = make_manifold(g.descriptor);
  Rng rng(derive_seed(seed, "covering"));
  double max_gap = 0.0;
  for (long p = 0; p < probes; ++p) {
    const Eigen::VectorXd x = manifold->sample_uniform(rng);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.n_vertices; ++i) {
      best = std::min(best, manifold->geodesic(x, g.coords.row(i).transpose()));
    }
    max_gap = std::max(max_gap, best);
  }
  return max_gap;
}

double fit_constant_least_squares(std::span<const double> residuals,
                                  std::span<const double> brackets) {
  require(residuals.size() == brackets.size(), ErrorCode::precondition,
          "residual/bracket length mismatch");
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < residuals.size(); ++i) {
    num += residuals[i] * brackets[i];
    den += brackets[i] * brackets[i];
  }
  if (den <= 0.0) return 0.0;
  return std::max(0.0, num / den);
}

EnvelopeFit fit_envelope_constant(std::span<const WeightedGraph> graphs,
                                  int n_eigenvalues, std::uint64_t probe_seed) {
  require(graphs.size() >= 2, ErrorCode::precondition,
          "need at least two refinement levels");
  const ManifoldDescriptor& d0 = graphs[0].descriptor;
  for (const WeightedGraph& g : graphs) {
    require(g.descriptor.family == d0.family && g.descriptor.dim == d0.dim &&
                std::abs(g.descriptor.radius - d0.radius) <= 1e-12,
            ErrorCode::precondition, "graphs describe different manifolds");
  }

  EnvelopeFit fit;
  bool identical = true;
  for (size_t i = 1; i < graphs.size(); ++i) {
    if (graphs[i].n_vertices != graphs[0].n_vertices ||
        graphs[i].kappa != graphs[0].kappa)
      identical = false;
  }
  if (identical) {
    fit.degenerate = true;
    fit.warning = "all inputs share one refinement level; the fit has no leverage";
  }

  const std::vector<double> lam_M = laplace_beltrami_spectrum(d0, n_eigenvalues);
  std::vector<double> residuals, brackets;
  for (const WeightedGraph& g : graphs) {
    EnvelopeParams p;
    p.C_const = 1.0;
    p.kappa = g.kappa;
    p.curvature_bound = g.descriptor.curvature_bound;
    p.epsilon = g.epsilon > 0.0 ? g.epsilon
                                : estimate_covering_radius(g, 20000, probe_seed);
    const Eigen::VectorXd lam_L = measure_normalized_spectrum(g);
    const int count = std::min<int>(n_eigenvalues, static_cast<int>(lam_L.size()));
    for (int i = 0; i < count; ++i) {
      brackets.push_back(phi_bracket(lam_M[i], p));
      residuals.push_back(std::abs(lam_L[i] - lam_M[i]));
      ++fit.n_observations;
    }
  }
  double den = 0.0;
  for (double b : brackets) den += b * b;
  if (den <= 0.0) {
    fit.degenerate = true;
    if (fit.warning.empty())
      fit.warning = "bracket terms all vanish (only zero eigenvalues observed)";
    fit.C_const = 0.0;
    return fit;
  }
  fit.C_const = fit_constant_least_squares(residuals, brackets);
  return fit;
}

}  // namespace mwl
