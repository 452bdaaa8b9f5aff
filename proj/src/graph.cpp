#include "nucspar/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace nucspar {

namespace {

bool heavier_first(const Neighbor& a, const Neighbor& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  return a.vertex < b.vertex;
}

}  // namespace

WeightedGraph WeightedGraph::from_edges(Index n, std::span<const Edge> edges) {
  if (n < 0) throw InvalidInput("WeightedGraph: negative vertex count");
  std::vector<Index> count(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw InvalidInput("WeightedGraph: edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                         ") has a vertex outside [0, " + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw InvalidInput("WeightedGraph: self-loop at vertex " + std::to_string(e.u));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InvalidInput("WeightedGraph: edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                         ") has non-positive or non-finite weight");
    }
    ++count[static_cast<std::size_t>(e.u)];
    ++count[static_cast<std::size_t>(e.v)];
  }

  WeightedGraph g;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Index v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + count[static_cast<std::size_t>(v)];
  g.by_id_.resize(static_cast<std::size_t>(g.offsets_.back()));
  std::vector<Index> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : edges) {
    g.by_id_[static_cast<std::size_t>(cursor[e.u]++)] = {e.v, e.weight};
    g.by_id_[static_cast<std::size_t>(cursor[e.v]++)] = {e.u, e.weight};
  }

  g.degrees_.assign(static_cast<std::size_t>(n), 0.0);
  g.by_weight_ = g.by_id_;
  for (Index v = 0; v < n; ++v) {
    auto first = g.by_id_.begin() + g.offsets_[v];
    auto last = g.by_id_.begin() + g.offsets_[v + 1];
    std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    for (auto it = first; it != last; ++it) {
      if (it != first && std::prev(it)->vertex == it->vertex) {
        throw InvalidInput("WeightedGraph: duplicate edge (" + std::to_string(std::min(v, it->vertex)) + ", " +
                           std::to_string(std::max(v, it->vertex)) + ")");
      }
    }
    // Degree is summed in id order so it does not depend on input edge order.
    double deg = 0.0;
    for (auto it = first; it != last; ++it) deg += it->weight;
    g.degrees_[static_cast<std::size_t>(v)] = deg;

    std::copy(first, last, g.by_weight_.begin() + g.offsets_[v]);
    std::sort(g.by_weight_.begin() + g.offsets_[v], g.by_weight_.begin() + g.offsets_[v + 1], heavier_first);
  }
  return g;
}

void WeightedGraph::check_vertex(Index v) const {
  if (v < 0 || v >= num_vertices()) {
    throw InvalidInput("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(num_vertices()) + ")");
  }
}

std::span<const Neighbor> WeightedGraph::neighbors(Index v) const {
  check_vertex(v);
  return {by_weight_.data() + offsets_[v], static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
}

double WeightedGraph::degree(Index v) const {
  check_vertex(v);
  return degrees_[static_cast<std::size_t>(v)];
}

std::optional<double> WeightedGraph::edge_weight(Index u, Index v) const {
  check_vertex(u);
  check_vertex(v);
  auto first = by_id_.begin() + offsets_[u];
  auto last = by_id_.begin() + offsets_[u + 1];
  auto it = std::lower_bound(first, last, v, [](const Neighbor& a, Index x) { return a.vertex < x; });
  if (it != last && it->vertex == v) return it->weight;
  return std::nullopt;
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(num_edges()));
  for (Index u = 0; u < num_vertices(); ++u) {
    for (Index k = offsets_[u]; k < offsets_[u + 1]; ++k) {
      const auto& nb = by_id_[static_cast<std::size_t>(k)];
      if (nb.vertex > u) out.push_back({u, nb.vertex, nb.weight});
    }
  }
  return out;
}

WeightedGraph load_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::set<std::pair<Index, Index>> seen;
  Index declared = -1;
  std::size_t declared_line = 0;
  Index max_id = -1;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream header(line);
    std::string tok;
    if (header >> tok && tok == "#n") {
      long long n = -1;
      if (!(header >> n) || n < 0) throw ParseError(line_no, "malformed \"#n N\" header");
      declared = static_cast<Index>(n);
      declared_line = line_no;
      continue;
    }
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);

    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() != 2 && tokens.size() != 3) throw ParseError(line_no, "expected \"u v [w]\"");

    auto parse_id = [&](const std::string& s) {
      std::size_t used = 0;
      long long x = 0;
      try {
        x = std::stoll(s, &used);
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad vertex id \"" + s + "\"");
      }
      if (used != s.size() || x < 0) throw ParseError(line_no, "bad vertex id \"" + s + "\"");
      return static_cast<Index>(x);
    };
    Edge e;
    e.u = parse_id(tokens[0]);
    e.v = parse_id(tokens[1]);
    if (tokens.size() == 3) {
      std::size_t used = 0;
      try {
        e.weight = std::stod(tokens[2], &used);
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad weight \"" + tokens[2] + "\"");
      }
      if (used != tokens[2].size()) throw ParseError(line_no, "bad weight \"" + tokens[2] + "\"");
    }
    if (e.u == e.v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(e.u));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) throw ParseError(line_no, "non-positive weight");
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw ParseError(line_no, "duplicate edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    }
    max_id = std::max({max_id, e.u, e.v});
    edges.push_back(e);
  }

  Index n = max_id + 1;
  if (declared >= 0) {
    if (declared < n) throw ParseError(declared_line, "#n header smaller than the largest vertex id + 1");
    n = declared;
  }
  return WeightedGraph::from_edges(n, edges);
}

WeightedGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open edge list \"" + path + "\"");
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << "#n " << g.num_vertices() << '\n';
  char buf[96];
  for (const auto& e : g.edges()) {
    std::snprintf(buf, sizeof buf, "%lld %lld %.17g\n", static_cast<long long>(e.u), static_cast<long long>(e.v),
                  e.weight);
    out << buf;
  }
}

SparseSymMatrixd normalized_adjacency(const WeightedGraph& g) {
  const Index n = g.num_vertices();
  for (Index v = 0; v < n; ++v) {
    if (!(g.degree(v) > 0.0)) throw InvalidInput("normalized_adjacency: vertex " + std::to_string(v) + " is isolated");
  }
  SparseSymMatrixd out(n);
  for (const auto& e : g.edges()) {
    out.set(e.u, e.v, e.weight / std::sqrt(g.degree(e.u) * g.degree(e.v)));
  }
  return out;
}

double normalized_laplacian_form(const WeightedGraph& g, const Eigen::VectorXd& x) {
  if (x.size() != g.num_vertices()) throw InvalidInput("normalized_laplacian_form: dimension mismatch");
  double acc = x.squaredNorm();
  for (const auto& e : g.edges()) {
    acc -= 2.0 * x(e.u) * x(e.v) * e.weight / std::sqrt(g.degree(e.u) * g.degree(e.v));
  }
  return acc;
}

}  // namespace nucspar
