#include "mwl/graph.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "mwl/errors.hpp"

namespace mwl {

namespace {

std::string component_size_summary(const std::vector<int>& labels) {
  std::map<int, int> sizes;
  for (int l : labels) ++sizes[l];
  std::string s;
  for (const auto& [label, count] : sizes) {
    if (!s.empty()) s += ", ";
    s += std::to_string(count);
  }
  return s;
}

void check_connected(const WeightedGraph& g) {
  for (int i = 0; i < g.n_vertices; ++i) {
    if (g.weights.row(i).sum() <= 0.0) {
      throw Error(ErrorCode::disconnected,
                  "vertex " + std::to_string(i) + " is isolated (degree 0)");
    }
  }
  const std::vector<int> labels = connected_components(g.weights);
  int n_comp = 0;
  for (int l : labels) n_comp = std::max(n_comp, l + 1);
  if (n_comp > 1) {
    throw Error(ErrorCode::disconnected,
                "graph is disconnected: " + std::to_string(n_comp) +
                    " components with sizes [" + component_size_summary(labels) + "]");
  }
}

}  // namespace

double edge_weight_constant(int dim, double kappa) {
  require(dim >= 1, ErrorCode::precondition, "dimension must be >= 1");
  require(kappa > 0.0, ErrorCode::precondition, "kappa must be positive");
  const double n = static_cast<double>(dim);
  return 2.0 * (n + 2.0) * std::tgamma(1.0 + n / 2.0) /
         (std::pow(std::numbers::pi, n / 2.0) * std::pow(kappa, n + 2.0));
}

WeightedGraph build_graph(const ManifoldSampling& s, double kappa,
                          const BuildOptions& opts) {
  const int n = s.size();
  require(n >= 1, ErrorCode::precondition, "empty sampling");
  require(kappa > 0.0, ErrorCode::precondition, "kappa must be positive");
  for (int i = 0; i < n; ++i) {
    require(s.points[i].measure > 0.0, ErrorCode::precondition,
            "vertex " + std::to_string(i) + " has no measure assigned");
  }

  const double c = edge_weight_constant(s.descriptor.dim, kappa);
  WeightedGraph g;
  g.n_vertices = n;
  g.dim = s.descriptor.dim;
  g.kappa = kappa;
  g.descriptor = s.descriptor;
  g.epsilon = s.epsilon;
  g.weights = Eigen::MatrixXd::Zero(n, n);
  g.self_weights = Eigen::VectorXd::Zero(n);
  g.measures.resize(n);
  g.coords.resize(n, s.descriptor.dim + 1);
  for (int i = 0; i < n; ++i) {
    g.measures[i] = s.points[i].measure;
    g.coords.row(i) = s.points[i].coords.transpose();
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dg = geodesic_distance(s.points[i], s.points[j], s.descriptor);
      if (dg < kappa) {
        const double w = c * g.measures[i] * g.measures[j];
        g.weights(i, j) = w;
        g.weights(j, i) = w;
      }
    }
    if (opts.include_self_weight) {
      g.self_weights[i] = c * g.measures[i] * g.measures[i];
    }
  }

  check_connected(g);
  return g;
}

WeightedGraph graph_from_weights(const Eigen::MatrixXd& weights) {
  const int n = static_cast<int>(weights.rows());
  require(weights.cols() == n, ErrorCode::precondition, "weight matrix must be square");
  for (int i = 0; i < n; ++i) {
    require(weights(i, i) == 0.0, ErrorCode::precondition,
            "weight matrix must have a zero diagonal");
    for (int j = i + 1; j < n; ++j) {
      require(weights(i, j) == weights(j, i), ErrorCode::precondition,
              "weight matrix must be symmetric");
      require(weights(i, j) >= 0.0, ErrorCode::precondition,
              "weights must be nonnegative");
    }
  }
  WeightedGraph g;
  g.n_vertices = n;
  g.dim = 1;
  g.kappa = 0.0;
  g.weights = weights;
  g.self_weights = Eigen::VectorXd::Zero(n);
  g.measures = Eigen::VectorXd::Ones(n);
  g.descriptor = ManifoldDescriptor::sphere(1, 1.0);
  check_connected(g);
  return g;
}

GraphMatrices assemble_matrices(const WeightedGraph& g) {
  const int n = g.n_vertices;
  GraphMatrices m;
  m.degrees = g.weights.rowwise().sum();
  const bool self =
      g.self_weights.size() == n && (g.self_weights.array() != 0.0).any();
  if (self) m.degrees += g.self_weights;
  for (int i = 0; i < n; ++i) {
    require(m.degrees[i] > 0.0, ErrorCode::disconnected,
            "vertex " + std::to_string(i) + " has zero degree; cannot invert D");
  }

  m.laplacian = Eigen::MatrixXd(m.degrees.asDiagonal()) - g.weights;
  m.transition = m.degrees.cwiseInverse().asDiagonal() * g.weights;
  m.row_stochastic = !self;

  if (m.row_stochastic) {
    // Row sums must already be 1 to rounding; anything worse is a bug in the
    // assembly, not data to be repaired.
    for (int i = 0; i < n; ++i) {
      const double rs = m.transition.row(i).sum();
      require(std::abs(rs - 1.0) <= 1e-12, ErrorCode::precondition,
              "transition row " + std::to_string(i) + " sums to " + std::to_string(rs));
      m.transition.row(i) /= rs;
    }
  }
  return m;
}

std::vector<int> connected_components(const Eigen::MatrixXd& weights) {
  const int n = static_cast<int>(weights.rows());
  std::vector<int> label(n, -1);
  int comp = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (label[s] != -1) continue;
    stack.push_back(s);
    label[s] = comp;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (weights(v, j) > 0.0 && label[j] == -1) {
          label[j] = comp;
          stack.push_back(j);
        }
      }
    }
    ++comp;
  }
  return label;
}

}  // namespace mwl
