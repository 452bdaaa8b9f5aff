#include "nucspar/query.hpp"

#include <algorithm>
#include <string>

namespace nucspar {

QuerySession::QuerySession(std::shared_ptr<const WeightedGraph> graph, std::uint64_t seed)
    : graph_(std::move(graph)), rng_(seed) {
  if (!graph_) throw InvalidInput("QuerySession: null graph");
  prefix_.resize(static_cast<std::size_t>(graph_->num_vertices()));
}

QuerySession::QuerySession(const WeightedGraph& graph, std::uint64_t seed)
    : QuerySession(std::shared_ptr<const WeightedGraph>(&graph, [](const WeightedGraph*) {}), seed) {}

QuerySession::QuerySession(WeightedGraph&& graph, std::uint64_t seed)
    : QuerySession(std::make_shared<const WeightedGraph>(std::move(graph)), seed) {}

NeighborAnswer QuerySession::get_neighbor(Index a, Index i) {
  if (i < 1) throw InvalidInput("get_neighbor: rank must be >= 1, got " + std::to_string(i));
  auto nbrs = graph_->neighbors(a);
  ++counts_.neighbor;
  NeighborAnswer out{graph_->degree(a), std::nullopt};
  if (i <= static_cast<Index>(nbrs.size())) out.edge = nbrs[static_cast<std::size_t>(i - 1)];
  return out;
}

bool QuerySession::get_edge(Index u, Index v) {
  if (u == v) throw InvalidInput("get_edge: u and v must differ (" + std::to_string(u) + ")");
  const bool present = graph_->has_edge(u, v);
  ++counts_.edge;
  return present;
}

const std::vector<double>& QuerySession::prefix(Index a) {
  auto& p = prefix_[static_cast<std::size_t>(a)];
  if (p.empty()) {
    auto nbrs = graph_->neighbors(a);
    p.reserve(nbrs.size());
    double acc = 0.0;
    for (const auto& nb : nbrs) p.push_back(acc += nb.weight);
  }
  return p;
}

RandomNeighborAnswer QuerySession::random_neighbor() {
  const Index n = graph_->num_vertices();
  if (n == 0) throw InvalidInput("random_neighbor: empty graph");
  ++counts_.random;
  std::uniform_int_distribution<Index> pick_vertex(0, n - 1);
  RandomNeighborAnswer out;
  out.a = pick_vertex(rng_);
  auto nbrs = graph_->neighbors(out.a);
  if (nbrs.empty()) return out;

  const auto& p = prefix(out.a);
  const double u = std::uniform_real_distribution<double>(0.0, p.back())(rng_);
  auto it = std::upper_bound(p.begin(), p.end(), u);
  if (it == p.end()) --it;
  const auto& nb = nbrs[static_cast<std::size_t>(it - p.begin())];
  out.edge = RandomEdge{nb.vertex, graph_->degree(out.a), graph_->degree(nb.vertex)};
  return out;
}

}  // namespace nucspar
