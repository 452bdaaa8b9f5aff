#pragma once

#include "nucspar/common.hpp"
#include "nucspar/graph.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace nucspar {

struct NeighborAnswer {
  double degree = 0.0;
  std::optional<Neighbor> edge;  // empty when the vertex has fewer than i edges
};

struct RandomEdge {
  Index b = 0;
  double deg_a = 0.0;
  double deg_b = 0.0;
};

struct RandomNeighborAnswer {
  Index a = 0;
  std::optional<RandomEdge> edge;  // empty when a is isolated
};

struct QueryCounts {
  std::uint64_t neighbor = 0;
  std::uint64_t edge = 0;
  std::uint64_t random = 0;
  std::uint64_t total() const noexcept { return neighbor + edge + random; }
};

/// Counting front-end to a shared graph. Each oracle call bumps its counter by
/// exactly one. Single owner; run concurrent pipelines on separate sessions.
class QuerySession {
 public:
  explicit QuerySession(std::shared_ptr<const WeightedGraph> graph, std::uint64_t seed = 0);
  /// Borrows the graph; it must outlive the session.
  QuerySession(const WeightedGraph& graph, std::uint64_t seed = 0);
  /// Takes ownership of a temporary graph.
  QuerySession(WeightedGraph&& graph, std::uint64_t seed = 0);

  Index num_vertices() const noexcept { return graph_->num_vertices(); }

  /// Degree of a and its i-th heaviest incident edge (i is 1-based).
  NeighborAnswer get_neighbor(Index a, Index i);

  bool get_edge(Index u, Index v);

  /// Uniform vertex a, then a neighbor drawn proportionally to edge weight.
  RandomNeighborAnswer random_neighbor();

  const QueryCounts& counts() const noexcept { return counts_; }
  const WeightedGraph& graph() const noexcept { return *graph_; }

 private:
  const std::vector<double>& prefix(Index a);

  std::shared_ptr<const WeightedGraph> graph_;
  std::mt19937_64 rng_;
  QueryCounts counts_;
  std::vector<std::vector<double>> prefix_;
};

}  // namespace nucspar
