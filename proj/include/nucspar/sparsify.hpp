#pragma once

#include "nucspar/graph.hpp"
#include "nucspar/query.hpp"
#include "nucspar/sparse_sym.hpp"

namespace nucspar {

/// True iff w >= (eps^2 / 2) * max(deg_u, deg_v).
bool edge_keep_predicate(double w, double deg_u, double deg_v, double eps);

/// Deterministic greedy sparsifier under neighbor-query access. Keeps every
/// edge that passes edge_keep_predicate and returns D^{-1/2} A' D^{-1/2} with
/// the original degrees. Each vertex reads its edges heaviest first and stops
/// at the first one too light for its own degree, so a row holds at most
/// 2/eps^2 entries and the run costs at most n + 2n/eps^2 neighbor queries.
SparseSymMatrixd greedy_nuclear_sparsify(QuerySession& session, double eps);

/// Turns a sparsifier m of N_G into the normalized adjacency of a graph G'.
///
/// With vertices ranked by degree (the smallest last), G' copies
/// Q = D^{1/2} m D^{1/2} on all other pairs and routes each remaining row's
/// missing degree to the last vertex, so every vertex but the last keeps its
/// degree. Rejects m with negative off-diagonal or nonzero diagonal entries,
/// with ||N_G - m||_F^2 > n eps^2, or whose rows overshoot their degree.
WeightedGraph graphicalize(const SparseSymMatrixd& m, const WeightedGraph& graph, double eps);

}  // namespace nucspar
