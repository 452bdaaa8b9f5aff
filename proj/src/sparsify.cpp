#include "nucspar/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace nucspar {

namespace {

void check_eps(double eps, const char* what) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput(std::string(what) + ": eps must lie in (0, 1)");
}

}  // namespace

bool edge_keep_predicate(double w, double deg_u, double deg_v, double eps) {
  return w >= eps * eps / 2.0 * std::max(deg_u, deg_v);
}

SparseSymMatrixd greedy_nuclear_sparsify(QuerySession& session, double eps) {
  check_eps(eps, "greedy_nuclear_sparsify");
  const Index n = session.num_vertices();

  // One rank-1 query per vertex yields every degree; the answer doubles as
  // the first step of that vertex's scan below.
  std::vector<NeighborAnswer> first(static_cast<std::size_t>(n));
  std::vector<double> deg(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v) {
    first[v] = session.get_neighbor(v, 1);
    deg[v] = first[v].degree;
    if (!(deg[v] > 0.0)) throw InvalidInput("greedy_nuclear_sparsify: vertex " + std::to_string(v) + " is isolated");
  }

  SparseSymMatrixd out(n);
  for (Index v = 0; v < n; ++v) {
    NeighborAnswer ans = first[v];
    for (Index c = 1; ans.edge && edge_keep_predicate(ans.edge->weight, deg[v], 0.0, eps); ++c) {
      const Index u = ans.edge->vertex;
      const double w = ans.edge->weight;
      if (edge_keep_predicate(w, deg[v], deg[u], eps)) out.set(v, u, w / std::sqrt(deg[v] * deg[u]));
      ans = session.get_neighbor(v, c + 1);
    }
  }
  return out;
}

WeightedGraph graphicalize(const SparseSymMatrixd& m, const WeightedGraph& graph, double eps) {
  check_eps(eps, "graphicalize");
  const Index n = graph.num_vertices();
  if (m.rows() != n) throw InvalidInput("graphicalize: matrix and graph dimensions differ");
  if (n == 0) return graph;
  const auto& deg = graph.degrees();
  for (Index v = 0; v < n; ++v) {
    if (!(deg[v] > 0.0)) throw InvalidInput("graphicalize: vertex " + std::to_string(v) + " is isolated");
  }

  // ||N - m||_F^2 over the union of both supports.
  double err2 = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (const auto& e : m.row(i)) {
      if (e.col == i && e.value != 0.0) throw InvalidInput("graphicalize: nonzero diagonal entry at " + std::to_string(i));
      if (e.value < 0.0) {
        throw InvalidInput("graphicalize: negative entry at (" + std::to_string(i) + ", " + std::to_string(e.col) + ")");
      }
      const auto w = graph.edge_weight(i, e.col);
      const double nij = w ? *w / std::sqrt(deg[i] * deg[e.col]) : 0.0;
      err2 += (nij - e.value) * (nij - e.value);
    }
    for (const auto& nb : graph.neighbors(i)) {
      if (!m.contains(i, nb.vertex)) err2 += nb.weight * nb.weight / (deg[i] * deg[nb.vertex]);
    }
  }
  if (err2 > static_cast<double>(n) * eps * eps * (1.0 + 1e-12)) {
    throw InvalidInput("graphicalize: ||N - m||_F^2 = " + std::to_string(err2) + " exceeds n * eps^2 = " +
                       std::to_string(static_cast<double>(n) * eps * eps));
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return deg[a] > deg[b]; });
  const Index last = order.back();

  std::vector<Edge> edges;
  for (Index u = 0; u < n; ++u) {
    if (u == last) continue;
    double row_sum = 0.0;
    for (const auto& e : m.row(u)) {
      if (e.col == last) continue;
      const double q = e.value * std::sqrt(deg[u] * deg[e.col]);
      if (q < 1e-15) continue;
      row_sum += q;
      if (e.col > u) edges.push_back({u, e.col, q});
    }
    const double slack = deg[u] - row_sum;
    const double tol = 1e-12 * std::max(1.0, deg[u]);
    if (slack < -tol) {
      throw InvalidInput("graphicalize: row " + std::to_string(u) + " exceeds its degree by " + std::to_string(-slack));
    }
    if (slack > tol) edges.push_back({std::min(u, last), std::max(u, last), slack});
  }
  return WeightedGraph::from_edges(n, edges);
}

}  // namespace nucspar
