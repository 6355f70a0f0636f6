#pragma once

#include <Eigen/Core>
#include <vector>

#include "mwl/manifold.hpp"

namespace mwl {

/// Weighted approximation graph: symmetric nonnegative weights with zero
/// diagonal, an edge wherever the geodesic distance is below kappa, and each
/// positive weight equal to edge_weight_constant(dim, kappa) * mu_i * mu_j.
struct WeightedGraph {
  int n_vertices = 0;
  int dim = 1;                    // manifold dimension
  double kappa = 0.0;
  Eigen::MatrixXd weights;        // N x N, symmetric, zero diagonal
  Eigen::VectorXd self_weights;   // nonzero only in the include_self_weight mode
  Eigen::VectorXd measures;       // per-vertex mu (ones for raw-weight graphs)
  Eigen::MatrixXd coords;         // N x (dim+1) vertex embedding; empty for raw graphs
  ManifoldDescriptor descriptor;  // source manifold
  double epsilon = 0.0;           // sampling epsilon; 0 when unknown
};

struct GraphMatrices {
  Eigen::VectorXd degrees;     // d_i = sum_j w_ij (+ self weight if enabled)
  Eigen::MatrixXd laplacian;   // L = diag(d) - W
  Eigen::MatrixXd transition;  // P = diag(d)^-1 W
  bool row_stochastic = true;  // false in the self-weight comparison mode
};

struct BuildOptions {
  // Counts w_ii = c * mu_i^2 into the degree (the adjacency keeps a zero
  // diagonal either way). Comparison mode: P becomes sub-stochastic.
  bool include_self_weight = false;
};

/// Edge weight constant 2(n+2)Gamma(1+n/2) / (pi^{n/2} kappa^{n+2}).
/// Gamma is std::tgamma (relative error ~1e-15 on half-integer arguments).
double edge_weight_constant(int dim, double kappa);

/// Builds the geometric graph from a measured sampling. Throws
/// ErrorCode::disconnected (with component sizes) if the graph is not
/// connected, and flags isolated vertices the same way.
WeightedGraph build_graph(const ManifoldSampling& s, double kappa,
                          const BuildOptions& opts = {});

/// Wraps a raw symmetric weight matrix as a graph (fixtures, loaded files).
/// Measures default to ones. Connectivity is enforced.
WeightedGraph graph_from_weights(const Eigen::MatrixXd& weights);

GraphMatrices assemble_matrices(const WeightedGraph& g);

/// Component id per vertex (0-based), treating w > 0 as adjacency.
std::vector<int> connected_components(const Eigen::MatrixXd& weights);

}  // namespace mwl
