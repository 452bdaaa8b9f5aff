#include "nucspar/rw_sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nucspar {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Index, Index>& p) const noexcept {
    return std::hash<std::uint64_t>{}(derive_seed(static_cast<std::uint64_t>(p.first), static_cast<std::uint64_t>(p.second)));
  }
};

using PairMap = std::unordered_map<std::pair<Index, Index>, double, PairHash>;

std::int64_t resolve_samples(std::optional<std::int64_t> samples, std::int64_t fallback, const char* what) {
  const std::int64_t t = samples.value_or(fallback);
  if (t < 1) throw InvalidInput(std::string(what) + ": sample count must be positive");
  return t;
}

RandomEdge draw(QuerySession& session, Index& a, const char* what) {
  auto ans = session.random_neighbor();
  a = ans.a;
  if (!ans.edge) throw InvalidInput(std::string(what) + ": drew isolated vertex " + std::to_string(ans.a));
  return *ans.edge;
}

// Sorted so the matrix is assembled in a canonical order.
std::vector<std::pair<std::pair<Index, Index>, double>> sorted_entries(const PairMap& acc) {
  std::vector<std::pair<std::pair<Index, Index>, double>> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

void check_eps(double eps, const char* what) {
  if (!(eps > 0.0)) throw InvalidInput(std::string(what) + ": eps must be positive");
}

}  // namespace

std::int64_t default_rw_nuclear_samples(Index n, double eps) {
  check_eps(eps, "default_rw_nuclear_samples");
  return static_cast<std::int64_t>(std::ceil(3.0 * static_cast<double>(n) / (eps * eps)));
}

std::int64_t default_rw_spectral_samples(Index n, double eps, double p_fail) {
  check_eps(eps, "default_rw_spectral_samples");
  if (!(p_fail > 0.0 && p_fail < 1.0)) throw InvalidInput("default_rw_spectral_samples: p_fail must lie in (0, 1)");
  const double nd = static_cast<double>(n);
  return static_cast<std::int64_t>(std::ceil(256.0 * nd * std::log(2.0 * nd / p_fail) / (eps * eps)));
}

SparseSymMatrixd rw_nuclear_sparsify(QuerySession& session, double eps, std::optional<std::int64_t> samples) {
  const Index n = session.num_vertices();
  const std::int64_t T = resolve_samples(samples, default_rw_nuclear_samples(n, eps), "rw_nuclear_sparsify");
  const double scale = static_cast<double>(n) / (2.0 * static_cast<double>(T));

  PairMap acc;
  for (std::int64_t t = 0; t < T; ++t) {
    Index a = 0;
    const RandomEdge e = draw(session, a, "rw_nuclear_sparsify");
    acc[{std::min(a, e.b), std::max(a, e.b)}] += scale * std::sqrt(e.deg_a / e.deg_b);
  }

  SparseSymMatrixd out(n);
  for (const auto& [key, value] : sorted_entries(acc)) out.set(key.first, key.second, value);
  return out;
}

RwSpectralResult rw_spectral_sparsify(QuerySession& session, double eps, double p_fail,
                                      std::optional<std::int64_t> samples, std::uint64_t coin_seed, bool keep_raw) {
  const Index n = session.num_vertices();
  const std::int64_t T =
      resolve_samples(samples, default_rw_spectral_samples(n, eps, p_fail), "rw_spectral_sparsify");
  std::mt19937_64 coin(coin_seed);
  const double nd = static_cast<double>(n);

  PairMap acc;
  for (std::int64_t t = 0; t < T; ++t) {
    Index a = 0;
    const RandomEdge e = draw(session, a, "rw_spectral_sparsify");
    const double inc = 2.0 * nd / (std::sqrt(e.deg_a) * std::sqrt(e.deg_b)) / (1.0 / e.deg_a + 1.0 / e.deg_b);
    if (coin() & 1U) {
      acc[{a, e.b}] += inc;
    } else {
      acc[{e.b, a}] += inc;
    }
  }

  const double inv_t = 1.0 / static_cast<double>(T);
  RwSpectralResult result;
  result.samples = T;
  result.symmetric = SparseSymMatrixd(n);
  const auto entries = sorted_entries(acc);
  for (const auto& [key, value] : entries) result.symmetric.add(key.first, key.second, 0.5 * value * inv_t);

  if (keep_raw) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(entries.size());
    for (const auto& [key, value] : entries) triplets.emplace_back(key.first, key.second, value * inv_t);
    result.raw.resize(n, n);
    result.raw.setFromTriplets(triplets.begin(), triplets.end());
  }
  return result;
}

}  // namespace nucspar
