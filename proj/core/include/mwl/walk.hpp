#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mwl/graph.hpp"
#include "mwl/tensor.hpp"

namespace mwl {

/// Per-vertex Hermitian observables, all of one shape, each with spectral
/// norm at most bound_r.
struct ObservableMap {
  std::vector<HermitianTensor> assignments;
  double bound_r = 0.0;
  TensorShape shape;
};

enum class ObservableKind {
  random,    // independent random Hermitian draws, spectral norm exactly r
  constant,  // r * identity at every vertex
  signed_,   // +/- r * identity by vertex parity
};

ObservableKind observable_kind_from_string(const std::string& s);

ObservableMap make_observables(ObservableKind kind, int n_vertices,
                               TensorShape shape, double r, std::uint64_t seed);

/// Subtracts sum_i pi_i g(v_i) from every assignment (exploratory mode; the
/// bound machinery does not assume centered observables).
ObservableMap center_observables(const ObservableMap& obs, const Eigen::VectorXd& pi);

/// pi_i = d_i / sum_j d_j; the stationary (and reversible) law of P.
Eigen::VectorXd stationary_distribution(const GraphMatrices& m);

/// Precomputed inverse-CDF tables for repeated walk sampling.
class WalkSampler {
 public:
  explicit WalkSampler(const GraphMatrices& m);
  int n_vertices() const { return static_cast<int>(pi_cdf_.size()); }
  /// v_1 ~ pi, v_{t+1} ~ row v_t of P. Exactly K uniforms are consumed.
  void sample_into(std::vector<int>& walk, int length, Rng& rng) const;

 private:
  Eigen::VectorXd pi_cdf_;
  Eigen::MatrixXd row_cdf_;
};

/// One stationary walk of the given length (deterministic per seed).
std::vector<int> sample_walk(const GraphMatrices& m, int length, std::uint64_t seed);

/// || f( sum_t g(v_t) ) ||_(k): the Ky Fan norm of the polynomial image of the
/// summed observables along a walk.
double walk_statistic(std::span<const int> walk, const ObservableMap& obs,
                      const PolynomialSpec& poly, int ky_fan_k);

struct TailEstimate {
  std::vector<double> thresholds;     // ascending
  std::vector<double> probabilities;  // exceedance frequencies, nonincreasing
  std::vector<double> ci_low;         // 95% Wilson
  std::vector<double> ci_high;
  int trials = 0;
  int walk_length = 0;
  int ky_fan_k = 0;
};

/// Monte Carlo exceedance probabilities Pr(statistic >= theta) over
/// independent trials with substream seeds derive_seed(seed, trial). Trials
/// may run on several threads (threads = 0 defers to MWL_THREADS); results
/// are bit-identical to a sequential run because each trial owns its stream
/// and the merge is a count.
TailEstimate estimate_tail(const GraphMatrices& m, const ObservableMap& obs,
                           const PolynomialSpec& poly, int length, int trials,
                           std::span<const double> thresholds, int ky_fan_k,
                           std::uint64_t seed, int threads = 0);

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};

/// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(long successes, long trials);

struct ExpInequalityCheck {
  int checked = 0;
  int violations = 0;
  double min_eigenvalue = 0.0;  // most negative eigenvalue of the difference seen
};

/// Numerically spot-checks f(exp(t*S)) - exp(t*f(S)) >= 0 (min eigenvalue
/// >= -1e-8) on sampled walks, where S = sum_t g(v_t). The inequality is an
/// assumption of the bound, not a theorem, so violations are reported rather
/// than asserted.
ExpInequalityCheck exp_inequality_spot_check(const GraphMatrices& m,
                                             const ObservableMap& obs,
                                             const PolynomialSpec& poly, int length,
                                             std::span<const double> t_values,
                                             int n_walks, std::uint64_t seed);

}  // namespace mwl
