#include "nucspar/sde.hpp"

#include "nucspar/graph.hpp"
#include "nucspar/norms.hpp"
#include "nucspar/sparsify.hpp"

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

namespace nucspar {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void resolve(SdeResult& out, double eps, const SdeOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("sde: eps must lie in (0, 1)");
  out.q = options.moments.value_or(static_cast<Index>(std::ceil(options.c_mom / eps)));
  out.grid_size = options.grid_size.value_or(8 * out.q + 1);
  out.probes = options.probes.value_or(static_cast<Index>(std::ceil(16.0 / eps)));
  if (out.q < 1 || out.grid_size < out.q + 1 || out.probes < 1) throw InvalidInput("sde: invalid stage parameters");
}

void finish(SdeResult& out, Index n, const SdeOptions& options) {
  auto start = Clock::now();
  out.match = moment_match(out.moments, out.grid_size, options.match_tol);
  out.spectrum = density_to_eigenvalues(out.match.density, n);
  out.match_seconds = seconds_since(start);
}

// Reads every adjacency list through counted neighbor queries.
WeightedGraph read_through_queries(QuerySession& session) {
  std::vector<Edge> edges;
  for (Index v = 0; v < session.num_vertices(); ++v) {
    for (Index i = 1;; ++i) {
      auto ans = session.get_neighbor(v, i);
      if (!ans.edge) break;
      if (ans.edge->vertex > v) edges.push_back({v, ans.edge->vertex, ans.edge->weight});
    }
  }
  return WeightedGraph::from_edges(session.num_vertices(), edges);
}

}  // namespace

SdeResult sde_randomized(QuerySession& session, double eps, std::uint64_t seed, const SdeOptions& options) {
  SdeResult out;
  resolve(out, eps, options);
  const Index n = session.num_vertices();

  if (n < options.dense_threshold) {
    auto start = Clock::now();
    out.dense_fallback = true;
    out.sparsifier = normalized_adjacency(read_through_queries(session));
    out.spectrum = eig_sym_dense(out.sparsifier);
    out.sparsify_seconds = seconds_since(start);
    return out;
  }

  auto start = Clock::now();
  out.sparsifier = greedy_nuclear_sparsify(session, eps / 2.0);
  out.sparsify_seconds = seconds_since(start);

  start = Clock::now();
  out.moments = hutchinson_power_moments(out.sparsifier, out.q, out.probes, derive_seed(seed, 1), options.threads);
  out.moments_seconds = seconds_since(start);

  finish(out, n, options);
  return out;
}

SdeResult sde_deterministic(QuerySession& session, double eps, const SdeOptions& options) {
  SdeResult out;
  resolve(out, eps, options);
  out.probes = 0;
  const Index n = session.num_vertices();

  auto start = Clock::now();
  out.sparsifier = greedy_nuclear_sparsify(session, eps / 2.0);
  out.sparsify_seconds = seconds_since(start);

  start = Clock::now();
  try {
    out.moments = exact_power_moments(out.sparsifier, out.q, {options.work_cap, options.threads});
  } catch (const CapacityError& e) {
    throw CapacityError(std::string(e.what()) + " (eps = " + std::to_string(eps) + ", q = " +
                        std::to_string(out.q) + ")");
  }
  out.moments_seconds = seconds_since(start);

  finish(out, n, options);
  return out;
}

}  // namespace nucspar
