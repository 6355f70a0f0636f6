#pragma once

#include <span>
#include <string>
#include <vector>

#include "mwl/chernoff.hpp"
#include "mwl/graph.hpp"
#include "mwl/spectral.hpp"
#include "mwl/tensor.hpp"
#include "mwl/walk.hpp"

namespace mwl {

/// Shortest text that round-trips the double exactly (17 significant digits).
std::string format_real(double x);

/// Graph file: a single JSON document
///   {"version":1,"dim":n,"kappa":k,"radius":R,
///    "vertices":[{"coords":[...],"measure":m},...],
///    "edges":[{"i":int,"j":int,"w":real},...]}
/// with i < j, one record per positive weight, reals at 17 significant
/// digits. The writer emits keys in exactly this order so re-runs are
/// byte-identical.
std::string graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const std::string& text);

void write_graph_file(const WeightedGraph& g, const std::string& path);
WeightedGraph read_graph_file(const std::string& path);

/// Spectrum report:
///   {"laplacian_eigs":[...],"transition_eigs":[...],
///    "gap_algebraic":x,"gap_absolute":y,"eq7_max_residual":z}
std::string spectrum_report_json(const SpectralSummary& s);

/// Tail CSV: header theta,prob,ci_low,ci_high,trials,K,k
std::string tail_csv(const TailEstimate& t);

/// Bound CSV: header theta,gap_source,gap_value,t_star,bound_raw,bound_capped
std::string bound_csv(std::span<const BoundReport> rows);

/// Tensor literal {"shape":[...],"re":[...],"im":[...]} with entries in
/// unfolding row-major order.
std::string tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mwl
