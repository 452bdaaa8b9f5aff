#include "nucspar/norms.hpp"

#include <vector>

namespace nucspar {

Spectrum eig_sym_dense(const Eigen::MatrixXd& m, Index cap) {
  if (m.rows() != m.cols()) throw InvalidInput("eig_sym_dense: matrix is not square");
  check_dense_cap(m.rows(), cap, "eig_sym_dense");
  return Spectrum(symmetric_eigenvalues(m));
}

Spectrum eig_sym_dense(const SparseSymMatrixd& m, Index cap) {
  check_dense_cap(m.rows(), cap, "eig_sym_dense");
  return Spectrum(symmetric_eigenvalues(m.to_dense()));
}

double blockwise_nuclear_lower_bound(const SparseSymMatrixd& m, const std::vector<std::vector<Index>>& partition,
                                     Index cap) {
  const Index n = m.rows();
  check_dense_cap(n, cap, "blockwise_nuclear_lower_bound");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  Index covered = 0;
  for (const auto& part : partition) {
    for (Index v : part) {
      if (v < 0 || v >= n) throw InvalidInput("blockwise_nuclear_lower_bound: index out of range");
      if (seen[static_cast<std::size_t>(v)]) {
        throw InvalidInput("blockwise_nuclear_lower_bound: index " + std::to_string(v) + " appears twice");
      }
      seen[static_cast<std::size_t>(v)] = 1;
      ++covered;
    }
  }
  if (covered != n) throw InvalidInput("blockwise_nuclear_lower_bound: partition does not cover every index");

  double total = 0.0;
  for (const auto& part : partition) {
    const Index k = static_cast<Index>(part.size());
    Eigen::MatrixXd block(k, k);
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b) block(a, b) = m.coeff(part[a], part[b]);
    total += nuclear_norm_sym(block);
  }
  return total;
}

}  // namespace nucspar
