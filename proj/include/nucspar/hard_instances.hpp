#pragma once

#include "nucspar/common.hpp"
#include "nucspar/graph.hpp"
#include "nucspar/query.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace nucspar {

WeightedGraph complete_graph(Index n);
WeightedGraph cycle_graph(Index n);
/// Center 0, leaf i + 1 attached with weights[i].
WeightedGraph star_graph(std::span<const double> weights);

/// G(n, p) with unit weights.
WeightedGraph erdos_renyi(Index n, double p, std::uint64_t seed);
/// G(n, p) with i.i.d. Exp(1) edge weights.
WeightedGraph weighted_erdos_renyi(Index n, double p, std::uint64_t seed);

struct TiledInstance {
  WeightedGraph graph;
  Index block_size = 0;
  Index blocks = 0;
  std::vector<std::vector<Index>> partition;  // blocks, then the remainder if any
};

/// floor(n / b) disjoint G(b, 1/2) blocks, b = max(10, ceil(1 / eps^2)).
/// Blocks with an isolated vertex are redrawn. Leftover vertices form a path,
/// or a single leftover hangs off the last block.
TiledInstance tiled_er_instance(Index n, double eps, std::uint64_t seed);

/// Paired-block hard distribution. Vertices split into 2k groups of size b;
/// for every block r and ordered pair (i, j), i != j, a fair bit wires
/// v_i^{r,1}, v_i^{r,2} to v_j on the same side (bit 1) or crosswise (bit 0).
/// The two orientations of a pair may add the same edge, which then carries
/// weight 2, so every vertex has weighted degree 2(b - 1).
struct PairedBlockInstance {
  Index b = 0;
  Index k = 0;
  std::vector<std::uint8_t> bits;  // (r * b + i) * b + j, 0-based, diagonal unused
  WeightedGraph graph;

  Index num_vertices() const noexcept { return 2 * k * b; }
  /// side is 1 or 2; r and i are 0-based.
  Index vertex(Index r, int side, Index i) const noexcept { return (2 * r + side - 1) * b + i; }
  bool bit(Index r, Index i, Index j) const { return bits[static_cast<std::size_t>((r * b + i) * b + j)] != 0; }
};

PairedBlockInstance paired_block_from_bits(Index b, Index k, std::vector<std::uint8_t> bits);
PairedBlockInstance make_paired_block(Index b, Index k, std::uint64_t seed);
/// b = floor(c_prime / eps^2); n must equal 2 k b for some k >= 1.
PairedBlockInstance paired_block_instance(Index n, double eps, std::uint64_t seed, double c_prime = 1.0);

/// Flips every bit, then restores the original bits of each gadget that
/// contains a revealed vertex pair. Pairs must lie inside one block and join
/// distinct indices.
WeightedGraph complement_flip(const PairedBlockInstance& inst, std::span<const std::pair<Index, Index>> revealed);

/// Adaptive adversary over 4m vertices V_1..V_4. Vertex v_i^k (i in 1..4,
/// k in 1..m) has id 4(k - 1) + (i - 1). Answers stay consistent with two
/// m-regular graphs whose normalized Laplacians differ on the V_1 u V_2 cut.
class ResistingOracle {
 public:
  struct Query {
    bool is_edge = false;
    Index u = 0;
    Index v = 0;  // edge queries only
  };

  struct Record {
    Query query;
    Index rank = 0;           // neighbor queries: rank the answer corresponds to
    NeighborAnswer neighbor;  // neighbor queries
    bool edge = false;        // edge queries
  };

  explicit ResistingOracle(Index m);

  Index m() const noexcept { return m_; }
  Index num_vertices() const noexcept { return 4 * m_; }
  static Index vertex(int i, Index k) noexcept { return 4 * (k - 1) + (i - 1); }

  /// Next neighbor of u under a per-vertex cursor.
  NeighborAnswer get_neighbor(Index u);
  bool get_edge(Index u, Index v);
  const Record& step(const Query& q);

  /// (G1, G2): both contain every revealed gadget; elsewhere G1 joins V_1-V_2
  /// and V_3-V_4 while G2 joins V_1-V_3 and V_2-V_4.
  std::pair<WeightedGraph, WeightedGraph> finalize() const;

  const std::vector<Record>& transcript() const noexcept { return transcript_; }
  Index revealed_gadgets() const noexcept { return revealed_count_; }

 private:
  void check_vertex(Index v) const;
  void reveal(Index k, Index j);

  Index m_;
  std::vector<Index> cursor_;
  std::vector<std::uint8_t> revealed_;  // m x m, symmetric
  Index revealed_count_ = 0;
  std::vector<Record> transcript_;
};

/// Replays every recorded query on a plain session over g and compares.
bool replay_consistent(const std::vector<ResistingOracle::Record>& transcript, const WeightedGraph& g);

/// Indicator of V_1 u V_2.
Eigen::VectorXd resisting_witness(Index m);

/// 2n vertices; pair (2i, 2i + 1) is joined with probability 1/2.
WeightedGraph coupon_pair_graph(Index n, std::uint64_t seed);

/// random_neighbor draws until every pair index v / 2 has been sampled.
std::int64_t coupon_draws_to_cover(QuerySession& session);

struct BudgetErrorRow {
  double threshold_eps = 0.0;
  Index nnz = 0;
  Index max_row_nnz = 0;
  double frobenius_error = 0.0;
  std::optional<double> nuclear_error;  // within the dense cap only
};

/// Greedy sparsifier at each threshold, with its error against N_G.
std::vector<BudgetErrorRow> budget_error_curve(const WeightedGraph& g, std::span<const double> thresholds);

}  // namespace nucspar
