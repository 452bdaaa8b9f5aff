#pragma once

#include "nucspar/query.hpp"
#include "nucspar/sparse_sym.hpp"

#include <Eigen/SparseCore>

#include <cstdint>
#include <optional>

namespace nucspar {

/// ceil(3n / eps^2).
std::int64_t default_rw_nuclear_samples(Index n, double eps);

/// ceil(256 n log(2n / p_fail) / eps^2).
std::int64_t default_rw_spectral_samples(Index n, double eps, double p_fail);

/// Random-walk nuclear sparsifier: T draws, each adding
/// n / (2T) * sqrt(deg(a) / deg(b)) to the pair {a, b}. Unbiased for N_G.
SparseSymMatrixd rw_nuclear_sparsify(QuerySession& session, double eps, std::optional<std::int64_t> samples = {});

struct RwSpectralResult {
  SparseSymMatrixd symmetric;        // (X + X^T) / 2
  Eigen::SparseMatrix<double> raw;  // X itself; filled only when requested
  std::int64_t samples = 0;
};

/// Random-walk additive spectral sparsifier. Each draw adds
/// 2n / sqrt(deg(a) deg(b)) * (1/deg(a) + 1/deg(b))^{-1} to one of (a, b) or
/// (b, a), picked by a fair coin from `coin_seed`; the sum is divided by T.
RwSpectralResult rw_spectral_sparsify(QuerySession& session, double eps, double p_fail = 1.0 / 3.0,
                                      std::optional<std::int64_t> samples = {}, std::uint64_t coin_seed = 0,
                                      bool keep_raw = false);

}  // namespace nucspar
