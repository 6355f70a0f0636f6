#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwl/chernoff.hpp"
#include "mwl/graph.hpp"
#include "mwl/spectral.hpp"
#include "mwl/walk.hpp"

namespace mwl {

/// One config file drives the whole pipeline; every random choice flows from
/// the seeds recorded here, so a config echo reproduces a run exactly.
struct ExperimentConfig {
  struct ManifoldBlock {
    std::string family = "sphere";
    int dim = 1;
    double radius = 1.0;
  } manifold;

  struct SamplingBlock {
    double epsilon = 0.1;
    long mc_points = 100000;
    std::uint64_t seed = 1;
  } sampling;

  struct GraphBlock {
    std::optional<double> kappa;  // explicit kappa wins over the factor
    double kappa_factor = 4.0;
    bool include_self_weight = false;
  } graph;

  struct WalkBlock {
    int length = 4;  // K
    int trials = 10000;
    std::string observable = "random";
    double r = 1.0;
    std::vector<int> shape = {2};
    std::uint64_t seed = 2;
    bool center = false;
  } walk;

  struct PolynomialBlock {
    std::vector<double> coeffs = {0.0, 1.0};
    int s = 1;
  } polynomial;

  struct BoundBlock {
    double C_env = 1.0;
    double sigma = 1.0;
    int ky_fan_k = 1;
    std::vector<double> thetas;  // empty = default 50-point grid [0, K*r*f(1)]
    double t_max = 10.0;
    std::string gap_convention = "absolute_second";
    double envelope_C = 1.0;
  } bound;

  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
  /// Full echo with every default materialized.
  std::string to_json() const;

  double resolved_kappa() const;
  GapConvention resolved_convention() const;
  std::vector<double> resolved_thetas() const;
  void validate() const;
};

struct StageTimings {
  std::vector<std::pair<std::string, long>> ms;  // stage name -> wall-clock ms
};

struct ExperimentResult {
  WeightedGraph graph;
  GraphMatrices matrices;
  SpectralSummary summary;
  CoverageResult coverage;
  TailEstimate tail;
  std::vector<BoundReport> bounds;
  ExpInequalityCheck assumption_check;
  std::vector<double> check_t_values;
  StageTimings timings;
};

/// Full pipeline: net -> measures -> coverage -> graph -> spectra -> walks ->
/// bounds -> assumption spot check.
ExperimentResult run_experiment_pipeline(const ExperimentConfig& cfg);

/// Report JSON for a finished run (timings included; they are the only
/// fields that differ between reruns).
std::string experiment_report_json(const ExperimentConfig& cfg,
                                   const ExperimentResult& res);

/// Line chart: empirical tail with CI band plus one curve per gap source,
/// log-probability on y. Pure generated markup.
std::string render_tail_svg(const TailEstimate& tail,
                            std::span<const BoundReport> bounds);

/// Command bodies shared by the CLI (each throws mwl::Error on failure).
void cmd_build_graph(const ExperimentConfig& cfg, const std::string& out_path);
void cmd_spectrum(const std::string& graph_path, const std::string& out_path);
void cmd_walk(const std::string& graph_path, const ExperimentConfig& cfg,
              const std::string& out_csv);
void cmd_bound(const std::string& graph_path, const ExperimentConfig& cfg,
               const std::string& out_csv);
void cmd_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                    bool svg);
EnvelopeFit cmd_fit_envelope(std::span<const std::string> graph_paths,
                             const std::string& out_path);

/// Bound rows for every (theta, gap source) combination. The gap sources are
/// the measured spectrum (active convention), the per-index eigenvalue map,
/// and the two spectral envelopes around the first nonzero manifold
/// eigenvalue.
std::vector<BoundReport> bound_table(const ExperimentConfig& cfg,
                                     const WeightedGraph& g,
                                     const GraphMatrices& m,
                                     const SpectralSummary& summary);

}  // namespace mwl
