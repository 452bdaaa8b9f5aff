#include "nucspar/graph.hpp"
#include "nucspar/hard_instances.hpp"
#include "nucspar/norms.hpp"
#include "nucspar/query.hpp"
#include "nucspar/sparsify.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace nucspar;

namespace {

SparseSymMatrixd greedy(const WeightedGraph& g, double eps) {
  QuerySession s(g);
  return greedy_nuclear_sparsify(s, eps);
}

WeightedGraph star(int leaves) {
  const std::vector<double> w(static_cast<std::size_t>(leaves), 1.0);
  return star_graph(w);
}

bool has_isolated(const WeightedGraph& g) {
  for (double d : g.degrees())
    if (d == 0.0) return true;
  return false;
}

}  // namespace

TEST_CASE("edge_keep_predicate examples") {
  CHECK(edge_keep_predicate(1, 4, 4, 0.5));
  CHECK_FALSE(edge_keep_predicate(1, 100, 1, 0.5));
  CHECK(edge_keep_predicate(1, 9, 1, 0.25));
}

TEST_CASE("star K_{1,9}: every edge kept at eps = 0.25") {
  const auto g = star(9);
  const auto m = greedy(g, 0.25);
  CHECK(m == normalized_adjacency(g));
}

TEST_CASE("star K_{1,9}: every edge dropped at eps = 0.5") {
  const auto g = star(9);
  const auto m = greedy(g, 0.5);
  CHECK(m.nonZeros() == 0);
  const double nuc = oracle::nuclear(oracle::normalized_adjacency(g));
  CHECK(nuc == doctest::Approx(2.0));
  CHECK(nuc <= 0.5 * 10);
}

TEST_CASE("K_100 at eps = 0.5 sparsifies to zero") {
  const auto g = complete_graph(100);
  const auto m = greedy(g, 0.5);
  CHECK(m.nonZeros() == 0);
  const double nuc = oracle::nuclear(oracle::normalized_adjacency(g));
  CHECK(nuc == doctest::Approx(2.0));
  CHECK(nuc <= 50.0);
}

TEST_CASE("greedy sparsifier guarantees on random graphs") {
  std::vector<WeightedGraph> graphs{cycle_graph(80), star(40), complete_graph(30)};
  for (std::uint64_t s = 0; s < 4; ++s) {
    graphs.push_back(erdos_renyi(120, 0.1, s));
    graphs.push_back(weighted_erdos_renyi(120, 0.2, 100 + s));
  }
  for (const auto& g : graphs) {
    if (has_isolated(g)) continue;
    const double n = static_cast<double>(g.num_vertices());
    const Eigen::MatrixXd exact = oracle::normalized_adjacency(g);
    for (double eps : {0.5, 0.35, 0.25}) {
      QuerySession session(g);
      const auto m = greedy_nuclear_sparsify(session, eps);
      CHECK(m.max_row_nonzeros() <= static_cast<Index>(std::floor(2.0 / (eps * eps))));
      const Eigen::MatrixXd diff = exact - m.to_dense();
      CHECK(diff.squaredNorm() <= eps * eps * n);
      CHECK(oracle::nuclear(diff) <= eps * n);
      CHECK(oracle::eigenvalues(m.to_dense()).cwiseAbs().maxCoeff() <= 1.0 + 1e-9);
      CHECK(static_cast<double>(session.counts().neighbor) <= n + 2.0 * n / (eps * eps));
      CHECK(session.counts().edge == 0);
      CHECK(session.counts().random == 0);
    }
  }
}

TEST_CASE("greedy output is deterministic and its kept set shrinks as eps grows") {
  const auto g = weighted_erdos_renyi(150, 0.1, 21);
  REQUIRE_FALSE(has_isolated(g));
  CHECK(greedy(g, 0.3) == greedy(g, 0.3));

  const auto small = greedy(g, 0.2);
  const auto large = greedy(g, 0.4);
  large.for_each_upper([&](Index i, Index j, double) { CHECK(small.contains(i, j)); });
}

TEST_CASE("greedy keeps exactly the edges passing the predicate") {
  const auto g = weighted_erdos_renyi(90, 0.2, 5);
  REQUIRE_FALSE(has_isolated(g));
  const double eps = 0.3;
  const auto m = greedy(g, eps);
  for (const auto& e : g.edges()) {
    const bool keep = edge_keep_predicate(e.weight, g.degree(e.u), g.degree(e.v), eps);
    CHECK(m.contains(e.u, e.v) == keep);
    if (keep) CHECK(m.coeff(e.u, e.v) == e.weight / std::sqrt(g.degree(e.u) * g.degree(e.v)));
  }
}

TEST_CASE("greedy rejects isolated vertices and bad eps") {
  std::vector<Edge> e{{0, 1, 1.0}};
  const auto g = WeightedGraph::from_edges(3, e);
  QuerySession s(g);
  CHECK_THROWS_AS(greedy_nuclear_sparsify(s, 0.5), InvalidInput);
  QuerySession t(complete_graph(3));
  CHECK_THROWS_AS(greedy_nuclear_sparsify(t, 1.5), InvalidInput);
}

TEST_CASE("graphicalize fixed point on the exact matrix") {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto g = weighted_erdos_renyi(40, 0.3, s);
    if (has_isolated(g)) continue;
    const auto gp = graphicalize(normalized_adjacency(g), g, 0.5);
    REQUIRE(gp.num_edges() == g.num_edges());
    for (const auto& e : g.edges()) CHECK(gp.edge_weight(e.u, e.v).value() == doctest::Approx(e.weight).epsilon(1e-12));
  }
  std::vector<Edge> e{{0, 1, 1.0}};
  const auto k2 = WeightedGraph::from_edges(2, e);
  const auto gp = graphicalize(normalized_adjacency(k2), k2, 0.9);
  CHECK(gp.num_edges() == 1);
  CHECK(gp.edge_weight(0, 1).value() == doctest::Approx(1.0));
}

TEST_CASE("graphicalize K_50 with the zero sparsifier gives a star") {
  const auto g = complete_graph(50);
  const auto gp = graphicalize(SparseSymMatrixd(50), g, 0.5);
  CHECK(gp.num_edges() == 49);
  for (Index v = 0; v < 49; ++v) CHECK(gp.edge_weight(v, 49).value() == doctest::Approx(49.0));
  const double err = oracle::nuclear(oracle::normalized_adjacency(g) - oracle::normalized_adjacency(gp));
  CHECK(err <= 3 * 50 * 0.5);
}

TEST_CASE("graphicalize preserves degrees of all but the lowest-degree vertex") {
  const auto g = weighted_erdos_renyi(100, 0.15, 31);
  REQUIRE_FALSE(has_isolated(g));
  const double eps = 0.35;
  const auto gp = graphicalize(greedy(g, eps), g, eps);
  Index last = 0;
  for (Index v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) <= g.degree(last)) last = v;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (v == last) continue;
    CHECK(gp.degree(v) == doctest::Approx(g.degree(v)).epsilon(1e-12));
  }
  const double err = oracle::nuclear(oracle::normalized_adjacency(g) - oracle::normalized_adjacency(gp));
  CHECK(err <= 3 * 100 * eps);
}

TEST_CASE("graphicalize rejects matrices outside its hypotheses") {
  const auto g = complete_graph(6);
  SparseSymMatrixd neg = normalized_adjacency(g);
  neg.set(0, 1, -0.1);
  CHECK_THROWS_AS(graphicalize(neg, g, 0.9), InvalidInput);

  SparseSymMatrixd diag = normalized_adjacency(g);
  diag.set(2, 2, 0.1);
  CHECK_THROWS_AS(graphicalize(diag, g, 0.9), InvalidInput);

  SparseSymMatrixd far(6);
  for (Index i = 0; i < 6; ++i)
    for (Index j = i + 1; j < 6; ++j) far.set(i, j, 1.0);
  CHECK_THROWS_AS(graphicalize(far, g, 0.5), InvalidInput);

  // Within the Frobenius radius but a row sum above its degree.
  SparseSymMatrixd heavy = normalized_adjacency(g);
  heavy.set(0, 1, 0.35);
  heavy.set(0, 2, 0.35);
  CHECK_THROWS_AS(graphicalize(heavy, g, 0.9), InvalidInput);
}
