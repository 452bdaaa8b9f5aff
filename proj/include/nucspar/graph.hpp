#pragma once

#include "nucspar/common.hpp"
#include "nucspar/sparse_sym.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nucspar {

struct Edge {
  Index u = 0;
  Index v = 0;
  double weight = 1.0;
  bool operator==(const Edge&) const = default;
};

struct Neighbor {
  Index vertex = 0;
  double weight = 0.0;
  bool operator==(const Neighbor&) const = default;
};

/// Undirected graph with positive edge weights and dense 0-based vertex ids.
///
/// Every adjacency list is sorted by weight descending, ties by ascending
/// neighbor id; this is the order the i-th-largest-edge oracle reads. The graph
/// is immutable once built and safe to share across threads.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Validates and builds. Rejects out-of-range ids, self-loops, duplicate
  /// undirected edges and weights that are not finite and positive.
  static WeightedGraph from_edges(Index n, std::span<const Edge> edges);

  Index num_vertices() const noexcept { return static_cast<Index>(degrees_.size()); }
  Index num_edges() const noexcept { return static_cast<Index>(by_weight_.size() / 2); }

  /// Neighbors of v, heaviest first.
  std::span<const Neighbor> neighbors(Index v) const;
  double degree(Index v) const;
  const std::vector<double>& degrees() const noexcept { return degrees_; }

  std::optional<double> edge_weight(Index u, Index v) const;
  bool has_edge(Index u, Index v) const { return edge_weight(u, v).has_value(); }

  /// Edges with u < v, sorted by (u, v).
  std::vector<Edge> edges() const;

  bool operator==(const WeightedGraph& other) const {
    return offsets_ == other.offsets_ && by_weight_ == other.by_weight_;
  }

 private:
  void check_vertex(Index v) const;

  std::vector<Index> offsets_;       // n + 1
  std::vector<Neighbor> by_weight_;  // per-vertex runs, weight desc then id asc
  std::vector<Neighbor> by_id_;      // per-vertex runs, id asc (membership lookups)
  std::vector<double> degrees_;
};

/// Parses the edge-list text format: "u v [w]" per line, '#' starts a comment,
/// and a "#n N" line fixes the vertex count. Errors carry the line number.
WeightedGraph load_edge_list(std::istream& in);
WeightedGraph load_edge_list_file(const std::string& path);

/// Canonical form: "#n N" header, edges sorted by (min, max), weights at 17
/// significant digits.
void write_edge_list(std::ostream& out, const WeightedGraph& g);

/// D^{-1/2} A D^{-1/2}. Rejects graphs with an isolated vertex.
SparseSymMatrixd normalized_adjacency(const WeightedGraph& g);

/// x^T (I - N_G) x, with isolated vertices contributing only x_v^2.
double normalized_laplacian_form(const WeightedGraph& g, const Eigen::VectorXd& x);

}  // namespace nucspar
