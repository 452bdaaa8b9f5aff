#include "nucspar/hard_instances.hpp"

#include "nucspar/norms.hpp"
#include "nucspar/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

namespace nucspar {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput(std::string(what) + ": p must lie in [0, 1]");
}

template <typename WeightFn>
std::vector<Edge> er_edges(Index n, Index offset, double p, std::mt19937_64& rng, WeightFn&& weight) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({offset + u, offset + v, weight(rng)});
  return edges;
}

WeightedGraph build_paired(Index b, Index k, const std::vector<std::uint8_t>& bits) {
  std::map<std::pair<Index, Index>, double> acc;
  auto add = [&](Index x, Index y) { acc[{std::min(x, y), std::max(x, y)}] += 1.0; };
  auto id = [b](Index r, int side, Index i) { return (2 * r + side - 1) * b + i; };
  for (Index r = 0; r < k; ++r) {
    for (Index i = 0; i < b; ++i) {
      for (Index j = 0; j < b; ++j) {
        if (i == j) continue;
        if (bits[static_cast<std::size_t>((r * b + i) * b + j)]) {
          add(id(r, 1, i), id(r, 1, j));
          add(id(r, 2, i), id(r, 2, j));
        } else {
          add(id(r, 1, i), id(r, 2, j));
          add(id(r, 2, i), id(r, 1, j));
        }
      }
    }
  }
  std::vector<Edge> edges;
  edges.reserve(acc.size());
  for (const auto& [key, w] : acc) edges.push_back({key.first, key.second, w});
  return WeightedGraph::from_edges(2 * k * b, edges);
}

}  // namespace

WeightedGraph complete_graph(Index n) {
  std::vector<Edge> edges;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
  return WeightedGraph::from_edges(n, edges);
}

WeightedGraph cycle_graph(Index n) {
  if (n < 3) throw InvalidInput("cycle_graph: need n >= 3");
  std::vector<Edge> edges;
  for (Index v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, 1.0});
  return WeightedGraph::from_edges(n, edges);
}

WeightedGraph star_graph(std::span<const double> weights) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < weights.size(); ++i) edges.push_back({0, static_cast<Index>(i) + 1, weights[i]});
  return WeightedGraph::from_edges(static_cast<Index>(weights.size()) + 1, edges);
}

WeightedGraph erdos_renyi(Index n, double p, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("erdos_renyi: n must be >= 1");
  check_probability(p, "erdos_renyi");
  std::mt19937_64 rng(seed);
  return WeightedGraph::from_edges(n, er_edges(n, 0, p, rng, [](std::mt19937_64&) { return 1.0; }));
}

WeightedGraph weighted_erdos_renyi(Index n, double p, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("weighted_erdos_renyi: n must be >= 1");
  check_probability(p, "weighted_erdos_renyi");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  return WeightedGraph::from_edges(n, er_edges(n, 0, p, rng, [&](std::mt19937_64& r) {
    double w = 0.0;
    while (!(w > 0.0)) w = expo(r);
    return w;
  }));
}

TiledInstance tiled_er_instance(Index n, double eps, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("tiled_er_instance: eps must lie in (0, 1)");
  TiledInstance out;
  out.block_size = std::max<Index>(10, static_cast<Index>(std::ceil(1.0 / (eps * eps) - 1e-9)));
  out.blocks = n / out.block_size;
  if (out.blocks < 1) {
    throw InvalidInput("tiled_er_instance: n = " + std::to_string(n) + " is smaller than the block size " +
                       std::to_string(out.block_size));
  }
  const Index b = out.block_size;
  std::vector<Edge> edges;
  for (Index r = 0; r < out.blocks; ++r) {
    std::vector<Edge> block;
    for (std::uint64_t attempt = 0;; ++attempt) {
      std::mt19937_64 rng(derive_seed(seed, (static_cast<std::uint64_t>(r) << 20) + attempt));
      block = er_edges(b, r * b, 0.5, rng, [](std::mt19937_64&) { return 1.0; });
      std::vector<char> touched(static_cast<std::size_t>(b), 0);
      for (const auto& e : block) touched[e.u - r * b] = touched[e.v - r * b] = 1;
      if (std::all_of(touched.begin(), touched.end(), [](char c) { return c != 0; })) break;
    }
    edges.insert(edges.end(), block.begin(), block.end());
    std::vector<Index> part(static_cast<std::size_t>(b));
    for (Index i = 0; i < b; ++i) part[i] = r * b + i;
    out.partition.push_back(std::move(part));
  }

  const Index start = out.blocks * b;
  if (n - start == 1) {
    edges.push_back({start - 1, start, 1.0});
    out.partition.back().push_back(start);
  } else if (n - start >= 2) {
    std::vector<Index> rest;
    for (Index v = start; v < n; ++v) {
      rest.push_back(v);
      if (v + 1 < n) edges.push_back({v, v + 1, 1.0});
    }
    out.partition.push_back(std::move(rest));
  }
  out.graph = WeightedGraph::from_edges(n, edges);
  return out;
}

PairedBlockInstance paired_block_from_bits(Index b, Index k, std::vector<std::uint8_t> bits) {
  if (b < 2 || k < 1) throw InvalidInput("paired_block: need b >= 2 and k >= 1");
  if (static_cast<Index>(bits.size()) != k * b * b) throw InvalidInput("paired_block: bit vector has the wrong size");
  PairedBlockInstance inst;
  inst.b = b;
  inst.k = k;
  inst.bits = std::move(bits);
  for (Index r = 0; r < k; ++r)
    for (Index i = 0; i < b; ++i) inst.bits[static_cast<std::size_t>((r * b + i) * b + i)] = 0;
  inst.graph = build_paired(b, k, inst.bits);
  return inst;
}

PairedBlockInstance make_paired_block(Index b, Index k, std::uint64_t seed) {
  if (b < 2 || k < 1) throw InvalidInput("paired_block: need b >= 2 and k >= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(k * b * b), 0);
  for (Index r = 0; r < k; ++r)
    for (Index i = 0; i < b; ++i)
      for (Index j = 0; j < b; ++j)
        if (i != j) bits[static_cast<std::size_t>((r * b + i) * b + j)] = coin(rng) ? 1 : 0;
  return paired_block_from_bits(b, k, std::move(bits));
}

PairedBlockInstance paired_block_instance(Index n, double eps, std::uint64_t seed, double c_prime) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("paired_block_instance: eps must lie in (0, 1)");
  const Index b = static_cast<Index>(std::floor(c_prime / (eps * eps)));
  if (b < 2) throw InvalidInput("paired_block_instance: block size floor(C'/eps^2) is below 2");
  if (n < 2 * b || n % (2 * b) != 0) {
    throw InvalidInput("paired_block_instance: n = " + std::to_string(n) + " is not a positive multiple of 2b = " +
                       std::to_string(2 * b));
  }
  return make_paired_block(b, n / (2 * b), seed);
}

WeightedGraph complement_flip(const PairedBlockInstance& inst, std::span<const std::pair<Index, Index>> revealed) {
  const Index b = inst.b;
  std::vector<std::uint8_t> bits = inst.bits;
  for (auto& x : bits) x ^= 1U;
  for (const auto& [x, y] : revealed) {
    if (x < 0 || y < 0 || x >= inst.num_vertices() || y >= inst.num_vertices()) {
      throw InvalidInput("complement_flip: vertex out of range");
    }
    const Index r = x / (2 * b);
    const Index i = x % b;
    const Index j = y % b;
    if (y / (2 * b) != r || i == j) {
      throw InvalidInput("complement_flip: pair (" + std::to_string(x) + ", " + std::to_string(y) +
                         ") lies outside every block gadget");
    }
    for (auto idx : {(r * b + i) * b + j, (r * b + j) * b + i}) {
      bits[static_cast<std::size_t>(idx)] = inst.bits[static_cast<std::size_t>(idx)];
    }
  }
  return build_paired(b, inst.k, bits);
}

WeightedGraph coupon_pair_graph(Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("coupon_pair_graph: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i)
    if (coin(rng)) edges.push_back({2 * i, 2 * i + 1, 1.0});
  return WeightedGraph::from_edges(2 * n, edges);
}

std::int64_t coupon_draws_to_cover(QuerySession& session) {
  const Index pairs = session.num_vertices() / 2;
  if (pairs < 1) throw InvalidInput("coupon_draws_to_cover: graph has fewer than two vertices");
  std::vector<char> seen(static_cast<std::size_t>(pairs), 0);
  Index remaining = pairs;
  std::int64_t draws = 0;
  while (remaining > 0) {
    const auto ans = session.random_neighbor();
    ++draws;
    const Index idx = ans.a / 2;
    if (idx < pairs && !seen[idx]) {
      seen[idx] = 1;
      --remaining;
    }
  }
  return draws;
}

std::vector<BudgetErrorRow> budget_error_curve(const WeightedGraph& g, std::span<const double> thresholds) {
  const SparseSymMatrixd n_g = normalized_adjacency(g);
  const bool dense_ok = g.num_vertices() <= kDefaultDenseCap;
  std::vector<BudgetErrorRow> rows;
  for (double eps : thresholds) {
    QuerySession session(g);
    const SparseSymMatrixd approx = greedy_nuclear_sparsify(session, eps);
    BudgetErrorRow row;
    row.threshold_eps = eps;
    row.nnz = approx.nonZeros();
    row.max_row_nnz = approx.max_row_nonzeros();
    SparseSymMatrixd diff = n_g;
    approx.for_each_upper([&](Index i, Index j, double v) { diff.add(i, j, -v); });
    row.frobenius_error = frobenius_norm(diff);
    if (dense_ok) row.nuclear_error = nuclear_norm_sym(diff);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nucspar
