// mwl: build manifold-approximation graphs, inspect their spectra, run
// stationary tensor-observable walks, and evaluate the matching tail bounds.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "mwl/errors.hpp"
#include "mwl/experiment.hpp"

namespace {

int run(int argc, char** argv) {
  CLI::App app{"manifold walk laboratory"};
  app.require_subcommand(1);

  std::string config_path, graph_path, out_path, out_dir;
  std::vector<std::string> graph_paths;
  bool svg = false;

  auto* build = app.add_subcommand("build-graph", "sample a net and write the graph file");
  build->add_option("--config", config_path, "experiment config (JSON)")->required();
  build->add_option("--out", out_path, "output graph file")->required();

  auto* spectrum = app.add_subcommand("spectrum", "spectra and gap of a graph file");
  spectrum->add_option("--graph", graph_path, "graph file")->required();
  spectrum->add_option("--out", out_path, "output spectrum JSON")->required();

  auto* walk = app.add_subcommand("walk", "Monte Carlo tail estimate over walks");
  walk->add_option("--graph", graph_path, "graph file")->required();
  walk->add_option("--config", config_path, "experiment config (JSON)")->required();
  walk->add_option("--out", out_path, "output tail CSV")->required();

  auto* bound = app.add_subcommand("bound", "tail bounds per threshold and gap source");
  bound->add_option("--graph", graph_path, "graph file")->required();
  bound->add_option("--config", config_path, "experiment config (JSON)")->required();
  bound->add_option("--out", out_path, "output bound CSV")->required();

  auto* experiment = app.add_subcommand("experiment", "full pipeline into a directory");
  experiment->add_option("--config", config_path, "experiment config (JSON)")->required();
  experiment->add_option("--out-dir", out_dir, "output directory")->required();
  experiment->add_flag("--svg", svg, "also render chart.svg");

  auto* fit = app.add_subcommand("fit-envelope",
                                 "least-squares envelope constant from refinements");
  fit->add_option("--graphs", graph_paths, "two or more graph files")
      ->required()
      ->expected(-2);
  fit->add_option("--out", out_path, "output JSON")->required();

  CLI11_PARSE(app, argc, argv);

  if (build->parsed()) {
    mwl::cmd_build_graph(mwl::ExperimentConfig::from_file(config_path), out_path);
  } else if (spectrum->parsed()) {
    mwl::cmd_spectrum(graph_path, out_path);
  } else if (walk->parsed()) {
    mwl::cmd_walk(graph_path, mwl::ExperimentConfig::from_file(config_path), out_path);
  } else if (bound->parsed()) {
    mwl::cmd_bound(graph_path, mwl::ExperimentConfig::from_file(config_path), out_path);
  } else if (experiment->parsed()) {
    mwl::cmd_experiment(mwl::ExperimentConfig::from_file(config_path), out_dir, svg);
  } else if (fit->parsed()) {
    const mwl::EnvelopeFit f = mwl::cmd_fit_envelope(graph_paths, out_path);
    if (!f.warning.empty()) std::fprintf(stderr, "warning: %s\n", f.warning.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mwl::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
