#include "mwl/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mwl/errors.hpp"
#include "mwl/io.hpp"

namespace mwl {

namespace {

using nlohmann::json;

json parse_config_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("config: ") + e.what());
  }
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse,
                std::string("config field '") + key + "': " + e.what());
  }
}

class StageClock {
 public:
  explicit StageClock(StageTimings& sink) : sink_(sink) {}
  template <typename F>
  auto run(const std::string& name, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(f())>) {
        f();
        record(name, t0);
      } else {
        auto out = f();
        record(name, t0);
        return out;
      }
    } catch (const Error& e) {
      throw Error(e.code(), "stage " + name + ": " + e.what());
    }
  }

 private:
  void record(const std::string& name, std::chrono::steady_clock::time_point t0) {
    const auto dt = std::chrono::steady_clock::now() - t0;
    sink_.ms.emplace_back(
        name, std::chrono::duration_cast<std::chrono::milliseconds>(dt).count());
  }
  StageTimings& sink_;
};

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  const json j = parse_config_json(text);
  int version = 1;
  read_if(j, "version", version);
  require(version == 1, ErrorCode::parse,
          "unsupported config version " + std::to_string(version));

  ExperimentConfig c;
  if (j.contains("manifold")) {
    const json& m = j.at("manifold");
    read_if(m, "family", c.manifold.family);
    read_if(m, "dim", c.manifold.dim);
    read_if(m, "radius", c.manifold.radius);
  }
  if (j.contains("sampling")) {
    const json& s = j.at("sampling");
    read_if(s, "epsilon", c.sampling.epsilon);
    read_if(s, "mc_points", c.sampling.mc_points);
    read_if(s, "seed", c.sampling.seed);
  }
  if (j.contains("graph")) {
    const json& g = j.at("graph");
    if (g.contains("kappa")) {
      double k = 0;
      read_if(g, "kappa", k);
      c.graph.kappa = k;
    }
    read_if(g, "kappa_factor", c.graph.kappa_factor);
    read_if(g, "include_self_weight", c.graph.include_self_weight);
  }
  if (j.contains("walk")) {
    const json& w = j.at("walk");
    read_if(w, "K", c.walk.length);
    read_if(w, "trials", c.walk.trials);
    read_if(w, "observable", c.walk.observable);
    read_if(w, "r", c.walk.r);
    read_if(w, "shape", c.walk.shape);
    read_if(w, "seed", c.walk.seed);
    read_if(w, "center", c.walk.center);
  }
  if (j.contains("polynomial")) {
    const json& p = j.at("polynomial");
    read_if(p, "coeffs", c.polynomial.coeffs);
    read_if(p, "s", c.polynomial.s);
  }
  if (j.contains("bound")) {
    const json& b = j.at("bound");
    read_if(b, "C", c.bound.C_env);
    read_if(b, "sigma", c.bound.sigma);
    read_if(b, "ky_fan_k", c.bound.ky_fan_k);
    read_if(b, "thetas", c.bound.thetas);
    read_if(b, "t_max", c.bound.t_max);
    read_if(b, "gap_convention", c.bound.gap_convention);
    read_if(b, "envelope_C", c.bound.envelope_C);
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  return from_json(read_text_file(path));
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["version"] = 1;
  j["manifold"] = {{"family", manifold.family},
                   {"dim", manifold.dim},
                   {"radius", manifold.radius}};
  j["sampling"] = {{"epsilon", sampling.epsilon},
                   {"mc_points", sampling.mc_points},
                   {"seed", sampling.seed}};
  j["graph"] = {{"kappa", resolved_kappa()},
                {"kappa_factor", graph.kappa_factor},
                {"include_self_weight", graph.include_self_weight}};
  j["walk"] = {{"K", walk.length},     {"trials", walk.trials},
               {"observable", walk.observable}, {"r", walk.r},
               {"shape", walk.shape},  {"seed", walk.seed},
               {"center", walk.center}};
  j["polynomial"] = {{"coeffs", polynomial.coeffs}, {"s", polynomial.s}};
  j["bound"] = {{"C", bound.C_env},
                {"sigma", bound.sigma},
                {"ky_fan_k", bound.ky_fan_k},
                {"thetas", resolved_thetas()},
                {"t_max", bound.t_max},
                {"gap_convention", bound.gap_convention},
                {"envelope_C", bound.envelope_C}};
  return j.dump(2);
}

double ExperimentConfig::resolved_kappa() const {
  return graph.kappa.value_or(graph.kappa_factor * sampling.epsilon);
}

GapConvention ExperimentConfig::resolved_convention() const {
  if (bound.gap_convention == "algebraic_second")
    return GapConvention::algebraic_second;
  if (bound.gap_convention == "absolute_second")
    return GapConvention::absolute_second;
  throw Error(ErrorCode::parse,
              "unknown gap convention '" + bound.gap_convention + "'");
}

std::vector<double> ExperimentConfig::resolved_thetas() const {
  if (!bound.thetas.empty()) return bound.thetas;
  const PolynomialSpec poly(polynomial.coeffs, polynomial.s);
  const double span = walk.length * walk.r * poly.eval(1.0);
  std::vector<double> out;
  out.reserve(50);
  for (int i = 0; i < 50; ++i) out.push_back(span * (i + 1) / 50.0);
  return out;
}

void ExperimentConfig::validate() const {
  require(manifold.family == "sphere", ErrorCode::precondition,
          "unsupported manifold family '" + manifold.family + "'");
  require(manifold.dim >= 1, ErrorCode::precondition, "manifold dim must be >= 1");
  require(manifold.radius > 0.0, ErrorCode::precondition, "radius must be positive");
  const ManifoldDescriptor d = ManifoldDescriptor::sphere(manifold.dim, manifold.radius);
  require(sampling.epsilon > 0.0 && sampling.epsilon < d.diameter,
          ErrorCode::precondition, "sampling epsilon must lie in (0, diameter)");
  require(sampling.mc_points > 0, ErrorCode::precondition,
          "mc_points must be positive");
  require(resolved_kappa() > 0.0, ErrorCode::precondition, "kappa must be positive");
  require(walk.length >= 1, ErrorCode::precondition, "walk K must be >= 1");
  require(walk.trials >= 100, ErrorCode::precondition, "trials must be >= 100");
  require(walk.r > 0.0, ErrorCode::precondition, "observable bound r must be positive");
  observable_kind_from_string(walk.observable);

  // This also pins down the polynomial invariants and K <= I_1^M.
  BoundParams bp;
  bp.walk_length = walk.length;
  bp.observable_bound = walk.r;
  bp.poly = PolynomialSpec(polynomial.coeffs, polynomial.s);
  bp.C_env = bound.C_env;
  bp.sigma = bound.sigma;
  bp.shape = TensorShape{walk.shape};
  bp.ky_fan_k = bound.ky_fan_k;
  bp.theta = 1.0;
  bp.validate();
  require(bound.t_max > 0.0, ErrorCode::precondition, "t_max must be positive");
  resolved_convention();
  for (double th : bound.thetas)
    require(th >= 0.0, ErrorCode::precondition, "thetas must be nonnegative");
  require(std::is_sorted(bound.thetas.begin(), bound.thetas.end()),
          ErrorCode::precondition, "thetas must be ascending");
  require(bound.envelope_C >= 0.0, ErrorCode::precondition,
          "envelope_C must be nonnegative");
}

std::vector<BoundReport> bound_table(const ExperimentConfig& cfg,
                                     const WeightedGraph& g,
                                     const GraphMatrices& m,
                                     const SpectralSummary& summary) {
  BoundParams bp;
  bp.walk_length = cfg.walk.length;
  bp.observable_bound = cfg.walk.r;
  bp.poly = PolynomialSpec(cfg.polynomial.coeffs, cfg.polynomial.s);
  bp.C_env = cfg.bound.C_env;
  bp.sigma = cfg.bound.sigma;
  bp.shape = TensorShape{cfg.walk.shape};
  bp.ky_fan_k = cfg.bound.ky_fan_k;

  // Rank pairing throughout: the second sorted eigenvalue goes with the
  // second vertex degree (exact on weighted-regular graphs).
  const double lam_L2 = summary.laplacian_eigs[1];
  const double degree2 = m.degrees[1];
  const double eq7_gap = lam_L2 / degree2;

  EnvelopeParams env;
  env.C_const = cfg.bound.envelope_C;
  env.epsilon = g.epsilon > 0.0 ? g.epsilon : cfg.sampling.epsilon;
  env.kappa = g.kappa;
  env.curvature_bound = g.descriptor.curvature_bound;
  const double lam_M2 = laplace_beltrami_eigenvalue(2, g.descriptor);

  std::vector<BoundReport> rows;
  for (double theta : cfg.resolved_thetas()) {
    if (theta <= 0.0) continue;  // the bound needs theta > 0; Pr(>=0) is 1 anyway
    bp.theta = theta;

    rows.push_back(theorem1_bound(bp, summary));

    BoundReport eq7;
    eq7.theta = theta;
    eq7.source.kind = GapKind::eq7_formula;
    eq7.source.gap_value = eq7_gap;
    eq7.source.provenance = "lambda_L[1]/degree[1]";
    eq7.opt = minimize_bound(bp, eq7_gap, cfg.bound.t_max);
    rows.push_back(eq7);

    EnvelopeBounds envb = corollary_bounds(bp, lam_M2, env, degree2);
    rows.push_back(envb.lower_env);
    rows.push_back(envb.upper_env);
  }
  return rows;
}

ExperimentResult run_experiment_pipeline(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  StageClock clock(res.timings);

  const auto manifold = make_manifold(
      ManifoldDescriptor::sphere(cfg.manifold.dim, cfg.manifold.radius));

  ManifoldSampling net = clock.run("sample_net", [&] {
    return sample_epsilon_net(*manifold, cfg.sampling.epsilon, cfg.sampling.seed);
  });
  const long mc = std::max<long>(cfg.sampling.mc_points, 10L * net.size());
  net = clock.run("estimate_measures", [&] {
    return estimate_voronoi_measures(*manifold, net, mc, cfg.sampling.seed);
  });
  res.coverage = clock.run("verify_coverage", [&] {
    return verify_coverage(*manifold, net, std::max(1000L, mc / 10), cfg.sampling.seed);
  });
  if (!res.coverage.covered) {
    throw Error(ErrorCode::coverage,
                "coverage check failed: max probe gap " +
                    std::to_string(res.coverage.max_gap) + " exceeds epsilon " +
                    std::to_string(net.epsilon));
  }
  net.coverage_verified = true;

  res.graph = clock.run("build_graph", [&] {
    BuildOptions opts;
    opts.include_self_weight = cfg.graph.include_self_weight;
    return build_graph(net, cfg.resolved_kappa(), opts);
  });
  res.matrices = clock.run("assemble", [&] { return assemble_matrices(res.graph); });
  res.summary = clock.run("spectra", [&] {
    return make_spectral_summary(res.matrices, cfg.resolved_convention());
  });

  // Observables and walk trials live on separate substreams of the one
  // walk seed.
  ObservableMap obs = clock.run("observables", [&] {
    ObservableMap o = make_observables(observable_kind_from_string(cfg.walk.observable),
                                       res.graph.n_vertices, TensorShape{cfg.walk.shape},
                                       cfg.walk.r, derive_seed(cfg.walk.seed, "observables"));
    if (cfg.walk.center)
      o = center_observables(o, stationary_distribution(res.matrices));
    return o;
  });

  const PolynomialSpec poly(cfg.polynomial.coeffs, cfg.polynomial.s);
  const std::vector<double> thetas = cfg.resolved_thetas();
  res.tail = clock.run("walks", [&] {
    return estimate_tail(res.matrices, obs, poly, cfg.walk.length, cfg.walk.trials,
                         thetas, cfg.bound.ky_fan_k,
                         derive_seed(cfg.walk.seed, "trials"));
  });

  {
    EnvelopeParams env;
    env.epsilon = res.graph.epsilon;
    env.kappa = res.graph.kappa;
    const std::string warn = envelope_warning(env);
    if (!warn.empty()) std::fprintf(stderr, "warning: %s\n", warn.c_str());
  }
  res.bounds = clock.run("bounds", [&] {
    return bound_table(cfg, res.graph, res.matrices, res.summary);
  });

  // Spot-check the operator inequality at the optimizer's own t values.
  std::set<double> t_set;
  for (const BoundReport& r : res.bounds) {
    if (r.source.kind == GapKind::exact_spectrum) t_set.insert(r.opt.t_star);
    if (t_set.size() >= 5) break;
  }
  if (t_set.empty()) t_set.insert(0.1);
  res.check_t_values.assign(t_set.begin(), t_set.end());
  res.assumption_check = clock.run("assumption_check", [&] {
    return exp_inequality_spot_check(res.matrices, obs, poly, cfg.walk.length,
                                     res.check_t_values, 5, cfg.walk.seed);
  });
  return res;
}

std::string experiment_report_json(const ExperimentConfig& cfg,
                                   const ExperimentResult& res) {
  json j;
  j["version"] = 1;
  j["config"] = json::parse(cfg.to_json());

  int n_edges = 0;
  for (int i = 0; i < res.graph.n_vertices; ++i)
    for (int k = i + 1; k < res.graph.n_vertices; ++k)
      if (res.graph.weights(i, k) > 0.0) ++n_edges;
  j["graph"] = {{"n_vertices", res.graph.n_vertices},
                {"n_edges", n_edges},
                {"degree_min", res.matrices.degrees.minCoeff()},
                {"degree_mean", res.matrices.degrees.mean()},
                {"degree_max", res.matrices.degrees.maxCoeff()}};

  auto vec = [](const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  j["coverage"] = {{"verified", res.coverage.covered},
                   {"max_gap", res.coverage.max_gap}};
  j["spectral"] = {
      {"laplacian_eigs", vec(res.summary.laplacian_eigs)},
      {"transition_eigs", vec(res.summary.transition_eigs)},
      {"measure_normalized_eigs", vec(measure_normalized_spectrum(res.graph))},
      {"gap", res.summary.gap},
      {"gap_algebraic", res.summary.gap_algebraic},
      {"gap_absolute", res.summary.gap_absolute},
      {"gap_convention", res.summary.convention == GapConvention::algebraic_second
                             ? "algebraic_second"
                             : "absolute_second"},
      {"eq7_max_residual", res.summary.eq7_max_residual}};
  j["tail"] = {{"thetas", res.tail.thresholds},
               {"prob", res.tail.probabilities},
               {"ci_low", res.tail.ci_low},
               {"ci_high", res.tail.ci_high},
               {"trials", res.tail.trials},
               {"K", res.tail.walk_length},
               {"k", res.tail.ky_fan_k}};

  json rows = json::array();
  for (const BoundReport& r : res.bounds) {
    json row = {{"theta", r.theta},
                {"gap_source", to_string(r.source.kind)},
                {"gap_value", r.source.gap_value},
                {"provenance", r.source.provenance},
                {"clamped", r.source.clamped},
                {"t_star", r.opt.t_star},
                {"log_bound", r.opt.log_value},
                {"bound_capped", r.opt.value_capped},
                {"boundary", r.opt.boundary == BoundaryFlag::interior ? "interior"
                             : r.opt.boundary == BoundaryFlag::at_lower ? "t_min"
                                                                        : "t_max"}};
    if (std::isfinite(r.opt.value_raw))
      row["bound_raw"] = r.opt.value_raw;
    else
      row["bound_raw"] = nullptr;  // symbolic overflow; log_bound stays exact
    rows.push_back(row);
  }
  j["bounds"] = rows;

  j["assumption_check"] = {{"checked", res.assumption_check.checked},
                           {"violations", res.assumption_check.violations},
                           {"min_eigenvalue", res.assumption_check.min_eigenvalue},
                           {"t_values", res.check_t_values}};

  json timings;
  for (const auto& [name, ms] : res.timings.ms) timings[name] = ms;
  j["timings"] = timings;
  return j.dump(2);
}

std::string render_tail_svg(const TailEstimate& tail,
                            std::span<const BoundReport> bounds) {
  constexpr double W = 800, H = 500, ML = 70, MR = 20, MT = 20, MB = 50;
  constexpr double floor_log = -8.0;  // probabilities clamp at 1e-8 for display
  const double x0 = tail.thresholds.front(), x1 = tail.thresholds.back();
  const double xspan = x1 > x0 ? x1 - x0 : 1.0;

  auto px = [&](double theta) {
    return ML + (theta - x0) / xspan * (W - ML - MR);
  };
  auto py = [&](double p) {
    const double lp = std::max(floor_log, std::log10(std::max(p, 1e-300)));
    return MT + (0.0 - lp) / (0.0 - floor_log) * (H - MT - MB);
  };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << " " << H
    << "\">\n";
  s << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  // axes
  s << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\""
    << H - MB << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR
    << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n";
  s << "<text x=\"" << (W / 2) << "\" y=\"" << (H - 12)
    << "\" text-anchor=\"middle\" font-size=\"14\">threshold</text>\n";
  s << "<text x=\"16\" y=\"" << (H / 2)
    << "\" font-size=\"14\" transform=\"rotate(-90 16 " << (H / 2)
    << ")\" text-anchor=\"middle\">log10 probability</text>\n";
  for (int d = 0; d >= static_cast<int>(floor_log); d -= 2) {
    s << "<text x=\"" << (ML - 8) << "\" y=\"" << py(std::pow(10.0, d)) + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << d << "</text>\n";
  }

  // CI band: upper edge forward, lower edge backward
  s << "<polygon fill=\"#b3cde3\" fill-opacity=\"0.6\" stroke=\"none\" points=\"";
  for (size_t i = 0; i < tail.thresholds.size(); ++i)
    s << px(tail.thresholds[i]) << "," << py(tail.ci_high[i]) << " ";
  for (size_t i = tail.thresholds.size(); i-- > 0;)
    s << px(tail.thresholds[i]) << "," << py(tail.ci_low[i]) << " ";
  s << "\"/>\n";

  // empirical curve
  s << "<polyline fill=\"none\" stroke=\"#045a8d\" stroke-width=\"2\" points=\"";
  for (size_t i = 0; i < tail.thresholds.size(); ++i)
    s << px(tail.thresholds[i]) << "," << py(tail.probabilities[i]) << " ";
  s << "\"/>\n";

  const char* colors[] = {"#d95f02", "#7570b3", "#e7298a", "#66a61e"};
  const GapKind kinds[] = {GapKind::exact_spectrum, GapKind::eq7_formula,
                           GapKind::envelope_lower, GapKind::envelope_upper};
  double legend_y = MT + 16;
  s << "<text x=\"" << (ML + 10) << "\" y=\"" << legend_y
    << "\" font-size=\"12\" fill=\"#045a8d\">empirical (95% CI band)</text>\n";
  for (int ki = 0; ki < 4; ++ki) {
    s << "<polyline fill=\"none\" stroke=\"" << colors[ki]
      << "\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\" points=\"";
    for (const BoundReport& r : bounds) {
      if (r.source.kind != kinds[ki]) continue;
      s << px(r.theta) << "," << py(r.opt.value_capped) << " ";
    }
    s << "\"/>\n";
    legend_y += 16;
    s << "<text x=\"" << (ML + 10) << "\" y=\"" << legend_y
      << "\" font-size=\"12\" fill=\"" << colors[ki] << "\">bound: "
      << to_string(kinds[ki]) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void cmd_build_graph(const ExperimentConfig& cfg, const std::string& out_path) {
  cfg.validate();
  const auto manifold = make_manifold(
      ManifoldDescriptor::sphere(cfg.manifold.dim, cfg.manifold.radius));
  ManifoldSampling net =
      sample_epsilon_net(*manifold, cfg.sampling.epsilon, cfg.sampling.seed);
  const long mc = std::max<long>(cfg.sampling.mc_points, 10L * net.size());
  net = estimate_voronoi_measures(*manifold, net, mc, cfg.sampling.seed);
  const CoverageResult cov =
      verify_coverage(*manifold, net, std::max(1000L, mc / 10), cfg.sampling.seed);
  if (!cov.covered) {
    throw Error(ErrorCode::coverage, "coverage check failed: max probe gap " +
                                         std::to_string(cov.max_gap));
  }
  BuildOptions opts;
  opts.include_self_weight = cfg.graph.include_self_weight;
  const WeightedGraph g = build_graph(net, cfg.resolved_kappa(), opts);
  write_graph_file(g, out_path);
}

void cmd_spectrum(const std::string& graph_path, const std::string& out_path) {
  const WeightedGraph g = read_graph_file(graph_path);
  const GraphMatrices m = assemble_matrices(g);
  const SpectralSummary s = make_spectral_summary(m);
  write_text_file(out_path, spectrum_report_json(s) + "\n");
}

void cmd_walk(const std::string& graph_path, const ExperimentConfig& cfg,
              const std::string& out_csv) {
  cfg.validate();
  const WeightedGraph g = read_graph_file(graph_path);
  const GraphMatrices m = assemble_matrices(g);
  ObservableMap obs = make_observables(observable_kind_from_string(cfg.walk.observable),
                                       g.n_vertices, TensorShape{cfg.walk.shape},
                                       cfg.walk.r,
                                       derive_seed(cfg.walk.seed, "observables"));
  if (cfg.walk.center) obs = center_observables(obs, stationary_distribution(m));
  const PolynomialSpec poly(cfg.polynomial.coeffs, cfg.polynomial.s);
  const TailEstimate tail =
      estimate_tail(m, obs, poly, cfg.walk.length, cfg.walk.trials,
                    cfg.resolved_thetas(), cfg.bound.ky_fan_k,
                    derive_seed(cfg.walk.seed, "trials"));
  write_text_file(out_csv, tail_csv(tail));
}

void cmd_bound(const std::string& graph_path, const ExperimentConfig& cfg,
               const std::string& out_csv) {
  cfg.validate();
  const WeightedGraph g = read_graph_file(graph_path);
  const GraphMatrices m = assemble_matrices(g);
  const SpectralSummary s = make_spectral_summary(m, cfg.resolved_convention());

  EnvelopeParams env;
  env.epsilon = g.epsilon > 0.0 ? g.epsilon : cfg.sampling.epsilon;
  env.kappa = g.kappa;
  const std::string warn = envelope_warning(env);
  if (!warn.empty()) std::fprintf(stderr, "warning: %s\n", warn.c_str());

  const std::vector<BoundReport> rows = bound_table(cfg, g, m, s);
  write_text_file(out_csv, bound_csv(rows));
}

void cmd_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                    bool svg) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create '" + out_dir + "': " + ec.message());

  const ExperimentResult res = run_experiment_pipeline(cfg);
  const std::filesystem::path dir(out_dir);
  write_text_file((dir / "tail.csv").string(), tail_csv(res.tail));
  write_text_file((dir / "bounds.csv").string(), bound_csv(res.bounds));
  write_text_file((dir / "report.json").string(),
                  experiment_report_json(cfg, res) + "\n");
  if (svg) {
    write_text_file((dir / "chart.svg").string(),
                    render_tail_svg(res.tail, res.bounds));
  }
}

EnvelopeFit cmd_fit_envelope(std::span<const std::string> graph_paths,
                             const std::string& out_path) {
  require(graph_paths.size() >= 2, ErrorCode::precondition,
          "fit-envelope needs at least two graph files");
  std::vector<WeightedGraph> graphs;
  graphs.reserve(graph_paths.size());
  for (const std::string& p : graph_paths) graphs.push_back(read_graph_file(p));
  const EnvelopeFit fit = fit_envelope_constant(graphs);

  json j;
  j["C_const"] = fit.C_const;
  j["label"] = "empirical";
  j["n_observations"] = fit.n_observations;
  j["degenerate"] = fit.degenerate;
  if (!fit.warning.empty()) j["warning"] = fit.warning;
  write_text_file(out_path, j.dump(2) + "\n");
  return fit;
}

}  // namespace mwl
