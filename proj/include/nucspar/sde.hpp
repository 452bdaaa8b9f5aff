#pragma once

#include "nucspar/common.hpp"
#include "nucspar/query.hpp"
#include "nucspar/sparse_sym.hpp"
#include "nucspar/spectrum.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>

namespace nucspar {

/// Normalized power moments (1/n) Tr(M^j), j = 1..q.
struct MomentVector {
  Eigen::VectorXd values;  // values(j - 1) holds moment j

  Index q() const noexcept { return values.size(); }
  double operator()(Index j) const { return values(j - 1); }
};

/// Finitely supported distribution on [-1, 1].
struct DensityEstimate {
  Eigen::VectorXd support;  // ascending
  Eigen::VectorXd weights;  // nonnegative, sums to 1
};

struct ExactMomentOptions {
  double work_cap = 5e9;  // stored-entry visits across all rows
  unsigned threads = 1;
};

/// Exact moments by local exploration: for each row i, propagates
/// v_k = M^k e_i for k <= ceil(q/2) and reads (M^j)_ii = <v_a, v_{j-a}>.
/// Throws CapacityError once the visit count passes the cap.
MomentVector exact_power_moments(const SparseSymMatrixd& m, Index q, const ExactMomentOptions& options = {});

/// Hutchinson estimates (1/(n P)) sum_p g_p^T M^j g_p with Rademacher probes.
/// Probe p draws from derive_seed(seed, p), so results do not depend on the
/// thread count.
MomentVector hutchinson_power_moments(const SparseSymMatrixd& m, Index q, Index probes, std::uint64_t seed,
                                      unsigned threads = 1);

struct MomentMatchOptions {
  Index max_iterations = 50000;
  double relative_decrease_stop = 1e-12;
};

struct MomentMatchResult {
  DensityEstimate density;
  Eigen::VectorXd residual;  // fitted minus target, per moment
  double objective = 0.0;    // squared norm of residual
  Index iterations = 0;
  bool within_tol = false;   // every |residual_j| <= tol
};

/// Least-squares moment fit over the probability simplex on a uniform grid of
/// [-1, 1], solved with exponentiated-gradient steps and a backtracking step
/// size. Always returns a valid distribution; within_tol flags the fit.
MomentMatchResult moment_match(const MomentVector& moments, Index grid_size, double tol,
                               const MomentMatchOptions& options = {});

/// Output i (0-based) is the smallest support point whose CDF reaches
/// (i + 1/2) / n.
Spectrum density_to_eigenvalues(const DensityEstimate& density, Index n);

struct SdeOptions {
  double c_mom = 8.0;
  std::optional<Index> moments;    // default ceil(c_mom / eps)
  std::optional<Index> grid_size;  // default 8 q + 1
  std::optional<Index> probes;     // default ceil(16 / eps)
  Index dense_threshold = 64;      // randomized mode only
  double match_tol = 1e-2;
  double work_cap = 5e9;
  unsigned threads = 1;
};

struct SdeResult {
  Spectrum spectrum;
  bool dense_fallback = false;
  SparseSymMatrixd sparsifier;
  MomentVector moments;
  MomentMatchResult match;
  Index q = 0;
  Index grid_size = 0;
  Index probes = 0;
  double sparsify_seconds = 0.0;
  double moments_seconds = 0.0;
  double match_seconds = 0.0;
};

/// Greedy sparsifier at eps/2, Hutchinson moments, moment matching, quantiles.
/// Graphs below the dense threshold are read in full and solved exactly.
SdeResult sde_randomized(QuerySession& session, double eps, std::uint64_t seed, const SdeOptions& options = {});

/// Greedy sparsifier at eps/2, exact moments, moment matching, quantiles.
/// Pure function of the graph and eps.
SdeResult sde_deterministic(QuerySession& session, double eps, const SdeOptions& options = {});

}  // namespace nucspar
