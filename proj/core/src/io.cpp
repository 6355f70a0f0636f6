#include "mwl/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mwl/errors.hpp"

namespace mwl {

namespace {

using nlohmann::json;

// Translates nlohmann's byte offset into line/column for parse diagnostics.
[[noreturn]] void rethrow_parse(const nlohmann::json::parse_error& e,
                                const std::string& text, const std::string& origin) {
  std::size_t line = 1, col = 1;
  const std::size_t stop = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
  for (std::size_t i = 0; i < stop; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw Error(ErrorCode::parse, origin + ": " + e.what() + " (line " +
                                    std::to_string(line) + ", column " +
                                    std::to_string(col) + ")");
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    rethrow_parse(e, text, origin);
  }
}

template <typename T>
T get_field(const json& j, const char* key, const std::string& origin) {
  if (!j.contains(key)) {
    throw Error(ErrorCode::parse, origin + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, origin + ": bad field '" + key + "': " + e.what());
  }
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string graph_to_json(const WeightedGraph& g) {
  std::ostringstream out;
  out << "{\"version\":1,\"dim\":" << g.dim << ",\"kappa\":" << format_real(g.kappa)
      << ",\"radius\":" << format_real(g.descriptor.radius) << ",\"vertices\":[";
  for (int i = 0; i < g.n_vertices; ++i) {
    if (i) out << ",";
    out << "{\"coords\":[";
    for (int c = 0; c < g.coords.cols(); ++c) {
      if (c) out << ",";
      out << format_real(g.coords(i, c));
    }
    out << "],\"measure\":" << format_real(g.measures[i]) << "}";
  }
  out << "],\"edges\":[";
  bool first = true;
  for (int i = 0; i < g.n_vertices; ++i) {
    for (int j = i + 1; j < g.n_vertices; ++j) {
      if (g.weights(i, j) > 0.0) {
        if (!first) out << ",";
        first = false;
        out << "{\"i\":" << i << ",\"j\":" << j
            << ",\"w\":" << format_real(g.weights(i, j)) << "}";
      }
    }
  }
  out << "]}";
  return out.str();
}

WeightedGraph graph_from_json(const std::string& text) {
  const json j = parse_json(text, "graph file");
  const int version = get_field<int>(j, "version", "graph file");
  require(version == 1, ErrorCode::parse,
          "unsupported graph file version " + std::to_string(version));
  const int dim = get_field<int>(j, "dim", "graph file");
  const double kappa = get_field<double>(j, "kappa", "graph file");
  const double radius = get_field<double>(j, "radius", "graph file");

  const json& verts = j.at("vertices");
  require(verts.is_array() && !verts.empty(), ErrorCode::parse,
          "graph file: vertices must be a non-empty array");
  const int n = static_cast<int>(verts.size());

  WeightedGraph g;
  g.n_vertices = n;
  g.dim = dim;
  g.kappa = kappa;
  g.descriptor = ManifoldDescriptor::sphere(dim, radius);
  g.weights = Eigen::MatrixXd::Zero(n, n);
  g.self_weights = Eigen::VectorXd::Zero(n);
  g.measures.resize(n);
  g.coords.resize(n, dim + 1);
  for (int i = 0; i < n; ++i) {
    const auto coords = get_field<std::vector<double>>(verts[i], "coords", "vertex");
    require(static_cast<int>(coords.size()) == dim + 1, ErrorCode::parse,
            "vertex " + std::to_string(i) + ": expected " + std::to_string(dim + 1) +
                " coordinates");
    for (int c = 0; c <= dim; ++c) g.coords(i, c) = coords[c];
    g.measures[i] = get_field<double>(verts[i], "measure", "vertex");
  }

  if (j.contains("edges")) {
    for (const json& e : j.at("edges")) {
      const int a = get_field<int>(e, "i", "edge");
      const int b = get_field<int>(e, "j", "edge");
      const double w = get_field<double>(e, "w", "edge");
      require(a >= 0 && b >= 0 && a < n && b < n && a < b, ErrorCode::parse,
              "edge endpoints out of order or out of range");
      require(w > 0.0, ErrorCode::parse, "edge weights must be positive");
      g.weights(a, b) = w;
      g.weights(b, a) = w;
    }
  }
  return g;
}

void write_graph_file(const WeightedGraph& g, const std::string& path) {
  write_text_file(path, graph_to_json(g) + "\n");
}

WeightedGraph read_graph_file(const std::string& path) {
  return graph_from_json(read_text_file(path));
}

namespace {
void append_real_array(std::ostringstream& out, const Eigen::VectorXd& v) {
  out << "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i) out << ",";
    out << format_real(v[i]);
  }
  out << "]";
}
}  // namespace

std::string spectrum_report_json(const SpectralSummary& s) {
  std::ostringstream out;
  out << "{\"laplacian_eigs\":";
  append_real_array(out, s.laplacian_eigs);
  out << ",\"transition_eigs\":";
  append_real_array(out, s.transition_eigs);
  out << ",\"gap_algebraic\":" << format_real(s.gap_algebraic)
      << ",\"gap_absolute\":" << format_real(s.gap_absolute)
      << ",\"eq7_max_residual\":" << format_real(s.eq7_max_residual) << "}";
  return out.str();
}

std::string tail_csv(const TailEstimate& t) {
  std::ostringstream out;
  out << "theta,prob,ci_low,ci_high,trials,K,k\n";
  for (size_t i = 0; i < t.thresholds.size(); ++i) {
    out << format_real(t.thresholds[i]) << "," << format_real(t.probabilities[i])
        << "," << format_real(t.ci_low[i]) << "," << format_real(t.ci_high[i]) << ","
        << t.trials << "," << t.walk_length << "," << t.ky_fan_k << "\n";
  }
  return out.str();
}

std::string bound_csv(std::span<const BoundReport> rows) {
  std::ostringstream out;
  out << "theta,gap_source,gap_value,t_star,bound_raw,bound_capped\n";
  for (const BoundReport& r : rows) {
    out << format_real(r.theta) << "," << to_string(r.source.kind) << ","
        << format_real(r.source.gap_value) << "," << format_real(r.opt.t_star) << ","
        << format_real(r.opt.value_raw) << "," << format_real(r.opt.value_capped)
        << "\n";
  }
  return out.str();
}

std::string tensor_to_json(const Tensor& t) {
  std::ostringstream out;
  out << "{\"shape\":[";
  for (size_t i = 0; i < t.shape().mode_dims.size(); ++i) {
    if (i) out << ",";
    out << t.shape().mode_dims[i];
  }
  out << "],\"re\":[";
  for (size_t i = 0; i < t.entries().size(); ++i) {
    if (i) out << ",";
    out << format_real(t.entries()[i].real());
  }
  out << "],\"im\":[";
  for (size_t i = 0; i < t.entries().size(); ++i) {
    if (i) out << ",";
    out << format_real(t.entries()[i].imag());
  }
  out << "]}";
  return out.str();
}

Tensor tensor_from_json(const std::string& text) {
  const json j = parse_json(text, "tensor literal");
  const auto dims = get_field<std::vector<int>>(j, "shape", "tensor literal");
  const auto re = get_field<std::vector<double>>(j, "re", "tensor literal");
  const auto im = get_field<std::vector<double>>(j, "im", "tensor literal");
  require(re.size() == im.size(), ErrorCode::parse,
          "tensor literal: re/im lengths differ");
  TensorShape shape{dims};
  const size_t want = static_cast<size_t>(shape.total()) * shape.total();
  require(re.size() == want, ErrorCode::parse,
          "tensor literal: expected " + std::to_string(want) + " entries");
  std::vector<std::complex<double>> entries(want);
  for (size_t i = 0; i < want; ++i) entries[i] = {re[i], im[i]};
  return Tensor(std::move(shape), std::move(entries));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io, "read failure on '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::io, "write failure on '" + path + "'");
}

}  // namespace mwl
