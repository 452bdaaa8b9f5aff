#include "nucspar/hard_instances.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace nucspar {

namespace {

// Partner group under the fixed involution (2, 1, 4, 3), 1-based.
constexpr int kPartner[5] = {0, 2, 1, 4, 3};

int group_of(Index v) { return static_cast<int>(v % 4) + 1; }
Index index_of(Index v) { return v / 4 + 1; }

}  // namespace

ResistingOracle::ResistingOracle(Index m)
    : m_(m), cursor_(static_cast<std::size_t>(4 * std::max<Index>(m, 0)), 1),
      revealed_(static_cast<std::size_t>(std::max<Index>(m, 0) * std::max<Index>(m, 0)), 0) {
  if (m < 1) throw InvalidInput("ResistingOracle: m must be >= 1");
}

void ResistingOracle::check_vertex(Index v) const {
  if (v < 0 || v >= num_vertices()) {
    throw InvalidInput("ResistingOracle: vertex " + std::to_string(v) + " out of range [0, " +
                       std::to_string(num_vertices()) + ")");
  }
}

void ResistingOracle::reveal(Index k, Index j) {
  auto& a = revealed_[static_cast<std::size_t>((k - 1) * m_ + (j - 1))];
  if (a) return;
  a = 1;
  revealed_[static_cast<std::size_t>((j - 1) * m_ + (k - 1))] = 1;
  ++revealed_count_;
}

NeighborAnswer ResistingOracle::get_neighbor(Index u) {
  return step(Query{false, u, 0}).neighbor;
}

bool ResistingOracle::get_edge(Index u, Index v) {
  return step(Query{true, u, v}).edge;
}

const ResistingOracle::Record& ResistingOracle::step(const Query& q) {
  check_vertex(q.u);
  Record rec;
  rec.query = q;
  const int i = group_of(q.u);
  const Index k = index_of(q.u);

  if (!q.is_edge) {
    const Index j = cursor_[static_cast<std::size_t>(q.u)]++;
    rec.rank = j;
    rec.neighbor.degree = static_cast<double>(m_);
    if (j <= m_) {
      reveal(k, j);
      rec.neighbor.edge = Neighbor{vertex(kPartner[i], j), 1.0};
    }
  } else {
    check_vertex(q.v);
    if (q.u == q.v) throw InvalidInput("ResistingOracle: edge query on a single vertex");
    const int t = group_of(q.v);
    const Index j = index_of(q.v);
    const int lo = std::min(i, t);
    const int hi = std::max(i, t);
    if ((lo == 1 && hi == 2) || (lo == 3 && hi == 4)) {
      reveal(k, j);
      rec.edge = true;
    } else if ((lo == 1 && hi == 3) || (lo == 2 && hi == 4)) {
      // Only an unrevealed gadget would carry this pair, so pin the gadget.
      reveal(k, j);
    }
  }
  transcript_.push_back(rec);
  return transcript_.back();
}

std::pair<WeightedGraph, WeightedGraph> ResistingOracle::finalize() const {
  std::vector<Edge> e1;
  std::set<std::pair<Index, Index>> e2;
  auto add2 = [&](Index x, Index y) { e2.emplace(std::min(x, y), std::max(x, y)); };
  for (Index k = 1; k <= m_; ++k) {
    for (Index j = 1; j <= m_; ++j) {
      e1.push_back({vertex(1, k), vertex(2, j), 1.0});
      e1.push_back({vertex(3, k), vertex(4, j), 1.0});
      if (revealed_[static_cast<std::size_t>((k - 1) * m_ + (j - 1))]) {
        add2(vertex(1, k), vertex(2, j));
        add2(vertex(3, k), vertex(4, j));
      } else {
        add2(vertex(1, k), vertex(3, j));
        add2(vertex(2, k), vertex(4, j));
      }
    }
  }
  std::vector<Edge> edges2;
  edges2.reserve(e2.size());
  for (const auto& [x, y] : e2) edges2.push_back({x, y, 1.0});
  return {WeightedGraph::from_edges(num_vertices(), e1), WeightedGraph::from_edges(num_vertices(), edges2)};
}

bool replay_consistent(const std::vector<ResistingOracle::Record>& transcript, const WeightedGraph& g) {
  QuerySession session(g);
  for (const auto& rec : transcript) {
    if (rec.query.is_edge) {
      if (session.get_edge(rec.query.u, rec.query.v) != rec.edge) return false;
    } else {
      const auto ans = session.get_neighbor(rec.query.u, rec.rank);
      if (ans.degree != rec.neighbor.degree || ans.edge != rec.neighbor.edge) return false;
    }
  }
  return true;
}

Eigen::VectorXd resisting_witness(Index m) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(4 * m);
  for (Index k = 1; k <= m; ++k) {
    v(ResistingOracle::vertex(1, k)) = 1.0;
    v(ResistingOracle::vertex(2, k)) = 1.0;
  }
  return v;
}

}  // namespace nucspar
