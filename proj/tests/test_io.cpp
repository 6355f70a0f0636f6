#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "mwl/errors.hpp"
#include "mwl/io.hpp"
#include "test_util.hpp"

using namespace mwl;

namespace {
std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "mwl_io_tests";
  std::filesystem::create_directories(dir);
  return dir;
}
}  // namespace

TEST_CASE("format_real round-trips doubles") {
  for (double x : {0.1, 1.0 / 3.0, 2.4261226388505337, 1e-300, -3.25, 0.0}) {
    CHECK(std::stod(format_real(x)) == x);
  }
}

TEST_CASE("graph file round-trip is exact and deterministic") {
  const auto g = build_graph(uniform_circle(12, 1.0, 0.3), 1.1);
  const std::string text = graph_to_json(g);
  const WeightedGraph back = graph_from_json(text);

  CHECK(back.n_vertices == g.n_vertices);
  CHECK(back.dim == g.dim);
  CHECK(back.kappa == g.kappa);
  CHECK(back.descriptor.radius == g.descriptor.radius);
  CHECK((back.weights - g.weights).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.measures - g.measures).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.coords - g.coords).cwiseAbs().maxCoeff() == 0.0);

  CHECK(graph_to_json(back) == text);  // byte-identical re-serialization

  // pinned surface details
  CHECK(text.find("\"version\":1") != std::string::npos);
  CHECK(text.find("\"i\":0,\"j\":1") != std::string::npos);
  CHECK(text.find("\"i\":1,\"j\":0") == std::string::npos);  // i < j only
}

TEST_CASE("graph file I/O on disk") {
  const auto dir = scratch_dir();
  const auto g = build_graph(uniform_circle(6, 1.0), 2.2);
  const std::string path = (dir / "graph.json").string();
  write_graph_file(g, path);
  const WeightedGraph back = read_graph_file(path);
  CHECK((back.weights - g.weights).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(read_graph_file((dir / "missing.json").string()), Error);
  try {
    read_graph_file((dir / "missing.json").string());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
}

TEST_CASE("malformed graph files report line and column") {
  const std::string truncated = "{\"version\":1,\n\"dim\":1,";
  try {
    graph_from_json(truncated);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    CHECK(std::string(e.what()).find("line") != std::string::npos);
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }

  CHECK_THROWS_AS(graph_from_json("{\"version\":2,\"dim\":1,\"kappa\":1,"
                                  "\"radius\":1,\"vertices\":[]}"),
                  Error);

  // edge with i >= j violates the format
  const std::string bad_edge =
      "{\"version\":1,\"dim\":1,\"kappa\":1,\"radius\":1,"
      "\"vertices\":[{\"coords\":[1,0],\"measure\":1},"
      "{\"coords\":[0,1],\"measure\":1}],"
      "\"edges\":[{\"i\":1,\"j\":0,\"w\":0.5}]}";
  CHECK_THROWS_AS(graph_from_json(bad_edge), Error);
}

TEST_CASE("spectrum report carries the pinned fields") {
  const auto g = build_graph(uniform_circle(5, 1.0), 2.0);
  const auto s = make_spectral_summary(assemble_matrices(g));
  const std::string j = spectrum_report_json(s);
  for (const char* key : {"\"laplacian_eigs\"", "\"transition_eigs\"",
                          "\"gap_algebraic\"", "\"gap_absolute\"",
                          "\"eq7_max_residual\""}) {
    CHECK(j.find(key) != std::string::npos);
  }
}

TEST_CASE("csv headers and shapes") {
  TailEstimate t;
  t.thresholds = {0.5, 1.0};
  t.probabilities = {0.25, 0.0};
  t.ci_low = {0.2, 0.0};
  t.ci_high = {0.3, 0.01};
  t.trials = 100;
  t.walk_length = 4;
  t.ky_fan_k = 1;
  const std::string csv = tail_csv(t);
  CHECK(csv.rfind("theta,prob,ci_low,ci_high,trials,K,k\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  BoundReport row;
  row.theta = 2.0;
  row.source.kind = GapKind::exact_spectrum;
  row.source.gap_value = 0.5;
  row.opt.t_star = 0.1;
  row.opt.value_raw = 1.5;
  row.opt.value_capped = 1.0;
  const std::vector<BoundReport> rows = {row};
  const std::string bcsv = bound_csv(rows);
  CHECK(bcsv.rfind("theta,gap_source,gap_value,t_star,bound_raw,bound_capped\n", 0) ==
        0);
  CHECK(bcsv.find("exact_spectrum") != std::string::npos);
}

TEST_CASE("tensor literal round-trip") {
  const auto t = random_hermitian(TensorShape{{2, 2}}, 1.0, 77);
  const std::string j = tensor_to_json(t);
  const Tensor back = tensor_from_json(j);
  CHECK(back.shape() == t.shape());
  CHECK(back.entries() == t.entries());

  CHECK_THROWS_AS(tensor_from_json("{\"shape\":[2],\"re\":[1,2,3],\"im\":[0,0,0]}"),
                  Error);  // wrong entry count
  CHECK_THROWS_AS(tensor_from_json("{\"shape\":[2],\"re\":[1,2,3,4],\"im\":[0]}"),
                  Error);  // re/im mismatch
}
