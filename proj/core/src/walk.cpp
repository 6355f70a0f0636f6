#include "mwl/walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "mwl/errors.hpp"

namespace mwl {

ObservableKind observable_kind_from_string(const std::string& s) {
  if (s == "random") return ObservableKind::random;
  if (s == "constant") return ObservableKind::constant;
  if (s == "signed") return ObservableKind::signed_;
  throw Error(ErrorCode::parse, "unknown observable kind '" + s + "'");
}

ObservableMap make_observables(ObservableKind kind, int n_vertices,
                               TensorShape shape, double r, std::uint64_t seed) {
  require(n_vertices >= 1, ErrorCode::precondition, "need at least one vertex");
  require(r > 0.0, ErrorCode::precondition, "observable bound must be positive");
  ObservableMap obs;
  obs.bound_r = r;
  obs.shape = shape;
  obs.assignments.reserve(n_vertices);
  const int n = shape.total();
  for (int i = 0; i < n_vertices; ++i) {
    switch (kind) {
      case ObservableKind::random:
        obs.assignments.push_back(random_hermitian(shape, r, derive_seed(seed, i)));
        break;
      case ObservableKind::constant:
        obs.assignments.push_back(HermitianTensor::from_unfolding(
            Eigen::MatrixXcd::Identity(n, n) * r, shape));
        break;
      case ObservableKind::signed_:
        obs.assignments.push_back(HermitianTensor::from_unfolding(
            Eigen::MatrixXcd::Identity(n, n) * (i % 2 == 0 ? r : -r), shape));
        break;
    }
  }
  return obs;
}

ObservableMap center_observables(const ObservableMap& obs, const Eigen::VectorXd& pi) {
  const int n_vertices = static_cast<int>(obs.assignments.size());
  require(pi.size() == n_vertices, ErrorCode::precondition,
          "stationary law size mismatch");
  const int n = obs.shape.total();
  Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n_vertices; ++i) mean += pi[i] * obs.assignments[i].unfold();
  ObservableMap out;
  out.shape = obs.shape;
  out.assignments.reserve(n_vertices);
  double max_norm = 0.0;
  for (int i = 0; i < n_vertices; ++i) {
    auto t = HermitianTensor::from_unfolding(obs.assignments[i].unfold() - mean,
                                             obs.shape);
    max_norm = std::max(max_norm, spectral_norm(t));
    out.assignments.push_back(std::move(t));
  }
  out.bound_r = max_norm;
  return out;
}

Eigen::VectorXd stationary_distribution(const GraphMatrices& m) {
  require(m.degrees.minCoeff() > 0.0, ErrorCode::precondition,
          "all degrees must be positive");
  return m.degrees / m.degrees.sum();
}

WalkSampler::WalkSampler(const GraphMatrices& m) {
  const Eigen::VectorXd pi = stationary_distribution(m);
  const int n = static_cast<int>(pi.size());
  pi_cdf_.resize(n);
  row_cdf_.resize(n, n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += pi[i];
    pi_cdf_[i] = acc;
  }
  pi_cdf_[n - 1] = 1.0;  // guard against rounding at the top
  for (int i = 0; i < n; ++i) {
    acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += m.transition(i, j);
      row_cdf_(i, j) = acc;
    }
    row_cdf_(i, n - 1) = 1.0;
  }
}

namespace {
int pick(const double* cdf, int n, double u) {
  const double* it = std::upper_bound(cdf, cdf + n, u);
  const int idx = static_cast<int>(it - cdf);
  return idx >= n ? n - 1 : idx;
}
}  // namespace

void WalkSampler::sample_into(std::vector<int>& walk, int length, Rng& rng) const {
  require(length >= 1, ErrorCode::precondition, "walk length must be >= 1");
  const int n = n_vertices();
  walk.resize(length);
  walk[0] = pick(pi_cdf_.data(), n, rng.uniform());
  // row_cdf_ is column-major; gather the row into a scratch buffer once per
  // step to keep upper_bound on contiguous memory
  std::vector<double> row(n);
  for (int t = 1; t < length; ++t) {
    const int v = walk[t - 1];
    for (int j = 0; j < n; ++j) row[j] = row_cdf_(v, j);
    walk[t] = pick(row.data(), n, rng.uniform());
  }
}

std::vector<int> sample_walk(const GraphMatrices& m, int length, std::uint64_t seed) {
  WalkSampler sampler(m);
  Rng rng(seed);
  std::vector<int> walk;
  sampler.sample_into(walk, length, rng);
  return walk;
}

double walk_statistic(std::span<const int> walk, const ObservableMap& obs,
                      const PolynomialSpec& poly, int ky_fan_k) {
  require(!walk.empty(), ErrorCode::precondition, "empty walk");
  const int n = obs.shape.total();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
  for (int v : walk) {
    require(v >= 0 && v < static_cast<int>(obs.assignments.size()),
            ErrorCode::precondition, "walk visits a vertex with no observable");
    sum += obs.assignments[v].unfold();
  }
  const auto total = HermitianTensor::from_unfolding(sum, obs.shape);
  return ky_fan_norm(apply_polynomial(total, poly), ky_fan_k);
}

WilsonInterval wilson_interval(long successes, long trials) {
  require(trials > 0 && successes >= 0 && successes <= trials,
          ErrorCode::precondition, "bad binomial counts");
  constexpr double z = 1.959963984540054;  // 97.5th normal quantile
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // the interval must contain p-hat; rounding can push the closed endpoint
  // past it at the extremes
  const double low = successes == 0 ? 0.0 : std::min(std::max(0.0, center - half), p);
  const double high =
      successes == trials ? 1.0 : std::max(std::min(1.0, center + half), p);
  return {low, high};
}

TailEstimate estimate_tail(const GraphMatrices& m, const ObservableMap& obs,
                           const PolynomialSpec& poly, int length, int trials,
                           std::span<const double> thresholds, int ky_fan_k,
                           std::uint64_t seed, int threads) {
  require(trials >= 100, ErrorCode::precondition, "need at least 100 trials");
  require(!thresholds.empty(), ErrorCode::precondition, "need thresholds");
  for (size_t i = 1; i < thresholds.size(); ++i) {
    require(thresholds[i] >= thresholds[i - 1], ErrorCode::precondition,
            "thresholds must be ascending");
  }

  const WalkSampler sampler(m);
  std::vector<double> stats(trials);
  const int n_threads = std::min(thread_budget(threads), trials);

  auto run_range = [&](int lo, int hi) {
    std::vector<int> walk;
    for (int t = lo; t < hi; ++t) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
      sampler.sample_into(walk, length, rng);
      stats[t] = walk_statistic(walk, obs, poly, ky_fan_k);
    }
  };

  if (n_threads <= 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    const int chunk = (trials + n_threads - 1) / n_threads;
    for (int w = 0; w < n_threads; ++w) {
      const int lo = w * chunk;
      const int hi = std::min(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (std::thread& th : pool) th.join();
  }

  // Counts drive the probabilities, so the merge is order-independent.
  TailEstimate est;
  est.thresholds.assign(thresholds.begin(), thresholds.end());
  est.trials = trials;
  est.walk_length = length;
  est.ky_fan_k = ky_fan_k;
  std::vector<double> sorted = stats;
  std::sort(sorted.begin(), sorted.end());
  for (double theta : thresholds) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), theta);
    const long exceed = static_cast<long>(sorted.end() - it);
    est.probabilities.push_back(static_cast<double>(exceed) / trials);
    const WilsonInterval w = wilson_interval(exceed, trials);
    est.ci_low.push_back(w.low);
    est.ci_high.push_back(w.high);
  }
  return est;
}

ExpInequalityCheck exp_inequality_spot_check(const GraphMatrices& m,
                                             const ObservableMap& obs,
                                             const PolynomialSpec& poly, int length,
                                             std::span<const double> t_values,
                                             int n_walks, std::uint64_t seed) {
  require(n_walks >= 1, ErrorCode::precondition, "need at least one walk");
  const WalkSampler sampler(m);
  const int n = obs.shape.total();
  ExpInequalityCheck out;
  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  std::vector<int> walk;
  const std::uint64_t base = derive_seed(seed, "expcheck");
  for (int w = 0; w < n_walks; ++w) {
    Rng rng(derive_seed(base, static_cast<std::uint64_t>(w)));
    sampler.sample_into(walk, length, rng);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
    for (int v : walk) sum += obs.assignments[v].unfold();
    const auto total = HermitianTensor::from_unfolding(sum, obs.shape);
    const auto f_total = apply_polynomial(total, poly);
    for (double t : t_values) {
      const auto lhs = apply_polynomial(tensor_exponential(total, t), poly);
      const auto rhs = tensor_exponential(f_total, t);
      const auto diff =
          HermitianTensor::from_unfolding(lhs.unfold() - rhs.unfold(), obs.shape);
      const Eigen::VectorXd ev = eigenvalues(diff);
      const double min_ev = ev[ev.size() - 1];
      out.min_eigenvalue = std::min(out.min_eigenvalue, min_ev);
      ++out.checked;
      if (min_ev < -1e-8) ++out.violations;
    }
  }
  return out;
}

}  // namespace mwl
