#include "nucspar/graph.hpp"
#include "nucspar/hard_instances.hpp"
#include "nucspar/query.hpp"
#include "nucspar/rw_sparsify.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace nucspar;

namespace {

WeightedGraph k2() {
  std::vector<Edge> e{{0, 1, 1.0}};
  return WeightedGraph::from_edges(2, e);
}

}  // namespace

TEST_CASE("default sample counts") {
  CHECK(default_rw_nuclear_samples(200, 0.3) == 6667);
  CHECK(default_rw_spectral_samples(200, 0.5, 1.0 / 3) ==
        static_cast<std::int64_t>(std::ceil(256.0 * 200 * std::log(1200.0) / 0.25)));
}

TEST_CASE("rw_nuclear on K_2 reproduces N exactly") {
  const auto g = k2();
  for (std::int64_t t : {1, 2, 8, 64}) {
    QuerySession s(g, 3);
    const auto x = rw_nuclear_sparsify(s, 0.5, t);
    CHECK(x.coeff(0, 1) == 1.0);
    CHECK(x.nonZeros() == 2);
    CHECK(s.counts().random == static_cast<std::uint64_t>(t));
  }
  QuerySession s(g, 3);
  CHECK(rw_nuclear_sparsify(s, 0.5, 7).coeff(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("rw_nuclear accounting, sparsity and reproducibility") {
  const auto g = weighted_erdos_renyi(60, 0.2, 2);
  const std::int64_t t = 500;
  QuerySession a(g, 99), b(g, 99);
  const auto x = rw_nuclear_sparsify(a, 0.5, t);
  CHECK(x.nonZeros() <= 4 * t);
  CHECK(a.counts().random == 500);
  CHECK(a.counts().neighbor == 0);
  CHECK(a.counts().edge == 0);
  CHECK(x == rw_nuclear_sparsify(b, 0.5, t));

  QuerySession c(g, 1);
  rw_nuclear_sparsify(c, 0.5);
  CHECK(c.counts().random == static_cast<std::uint64_t>(default_rw_nuclear_samples(60, 0.5)));
}

TEST_CASE("random-walk sparsifiers name an isolated vertex they draw") {
  std::vector<Edge> e{{0, 1, 1.0}};
  const auto g = WeightedGraph::from_edges(3, e);
  QuerySession s(g, 0);
  try {
    rw_nuclear_sparsify(s, 0.5, 200);
    FAIL("expected rejection");
  } catch (const InvalidInput& err) {
    CHECK(std::string(err.what()).find("vertex 2") != std::string::npos);
  }
  QuerySession t(g, 0);
  CHECK_THROWS_AS(rw_spectral_sparsify(t, 0.5, 1.0 / 3, 200), InvalidInput);
}

TEST_CASE("rw_spectral on K_2 with T = 4") {
  QuerySession s(k2(), 5);
  const auto r = rw_spectral_sparsify(s, 0.5, 1.0 / 3, 4, 17, true);
  CHECK(r.symmetric.coeff(0, 1) == doctest::Approx(1.0));
  CHECK(r.raw.coeff(0, 1) + r.raw.coeff(1, 0) == doctest::Approx(2.0));
  CHECK(s.counts().random == 4);
}

TEST_CASE("rw_spectral raw accumulation has mean N on K_3") {
  const auto g = complete_graph(3);
  QuerySession s(g, 8);
  const auto r = rw_spectral_sparsify(s, 0.5, 1.0 / 3, 100000, 4, true);
  const Eigen::MatrixXd raw = Eigen::MatrixXd(r.raw);
  const Eigen::MatrixXd n = oracle::normalized_adjacency(g);
  CHECK((raw - n).cwiseAbs().maxCoeff() <= 0.02);
  CHECK(r.symmetric.nonZeros() <= 4 * 100000);
}

TEST_CASE("rw_spectral reproducible under seeds") {
  const auto g = erdos_renyi(40, 0.3, 6);
  QuerySession a(g, 1), b(g, 1);
  CHECK(rw_spectral_sparsify(a, 0.5, 1.0 / 3, 3000, 2).symmetric ==
        rw_spectral_sparsify(b, 0.5, 1.0 / 3, 3000, 2).symmetric);
}

TEST_CASE("both random-walk estimators are entrywise unbiased") {
  const auto g = weighted_erdos_renyi(6, 0.7, 12);
  for (double d : g.degrees()) REQUIRE(d > 0.0);
  const Index n = g.num_vertices();
  const Eigen::MatrixXd exact = oracle::normalized_adjacency(g);
  const int runs = 10000;
  const std::int64_t t = 20;
  Eigen::MatrixXd sum_a = Eigen::MatrixXd::Zero(n, n), sq_a = sum_a, sum_b = sum_a, sq_b = sum_a;
  for (int r = 0; r < runs; ++r) {
    QuerySession s(g, derive_seed(1, static_cast<std::uint64_t>(r)));
    const Eigen::MatrixXd xa = rw_nuclear_sparsify(s, 0.5, t).to_dense();
    const Eigen::MatrixXd xb =
        Eigen::MatrixXd(rw_spectral_sparsify(s, 0.5, 1.0 / 3, t, derive_seed(2, static_cast<std::uint64_t>(r)), true).raw);
    sum_a += xa;
    sq_a += xa.cwiseProduct(xa);
    sum_b += xb;
    sq_b += xb.cwiseProduct(xb);
  }
  // Max entry deviation within three standard errors.
  auto within = [&](const Eigen::MatrixXd& sum, const Eigen::MatrixXd& sq) {
    const Eigen::MatrixXd mean = sum / runs;
    const Eigen::MatrixXd var = (sq / runs - mean.cwiseProduct(mean)).cwiseMax(0.0);
    const Eigen::MatrixXd se = (var / runs).cwiseSqrt();
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (std::abs(mean(i, j) - exact(i, j)) > 3.0 * se(i, j) + 1e-12) return false;
    return true;
  };
  CHECK(within(sum_a, sq_a));
  CHECK(within(sum_b, sq_b));
}
