#pragma once

#include "nucspar/common.hpp"
#include "nucspar/eigen_sym.hpp"
#include "nucspar/sparse_sym.hpp"
#include "nucspar/spectrum.hpp"

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <vector>

namespace nucspar {

/// Largest dimension the dense validation routines accept by default.
inline constexpr Index kDefaultDenseCap = 4096;

inline void check_dense_cap(Index n, Index cap, const char* what) {
  if (n > cap) {
    throw CapacityError(std::string(what) + ": dimension " + std::to_string(n) + " exceeds dense cap " +
                        std::to_string(cap));
  }
}

template <typename Derived>
typename Derived::Scalar nuclear_norm_sym(const Eigen::MatrixBase<Derived>& a) {
  return symmetric_eigenvalues(a).cwiseAbs().sum();
}

template <typename Derived>
typename Derived::Scalar spectral_norm_sym(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() == 0) return 0;
  return symmetric_eigenvalues(a).cwiseAbs().maxCoeff();
}

template <typename Derived>
typename Derived::Scalar frobenius_norm(const Eigen::MatrixBase<Derived>& a) {
  return a.norm();
}

template <typename Scalar>
Scalar nuclear_norm_sym(const SparseSymMatrix<Scalar>& m, Index cap = kDefaultDenseCap) {
  check_dense_cap(m.rows(), cap, "nuclear_norm_sym");
  return nuclear_norm_sym(m.to_dense());
}

template <typename Scalar>
Scalar spectral_norm_sym(const SparseSymMatrix<Scalar>& m, Index cap = kDefaultDenseCap) {
  check_dense_cap(m.rows(), cap, "spectral_norm_sym");
  return spectral_norm_sym(m.to_dense());
}

/// Works at any size: sums squares over the stored ordered pairs.
template <typename Scalar>
Scalar frobenius_norm(const SparseSymMatrix<Scalar>& m) {
  Scalar acc(0);
  for (Index i = 0; i < m.rows(); ++i)
    for (const auto& e : m.row(i)) acc += e.value * e.value;
  return std::sqrt(acc);
}

/// Sorted eigenvalues of a symmetric matrix by dense decomposition.
Spectrum eig_sym_dense(const SparseSymMatrixd& m, Index cap = kDefaultDenseCap);
Spectrum eig_sym_dense(const Eigen::MatrixXd& m, Index cap = kDefaultDenseCap);

/// Sum of the nuclear norms of the principal submatrices on each part. Never
/// exceeds the nuclear norm of the whole matrix.
double blockwise_nuclear_lower_bound(const SparseSymMatrixd& m, const std::vector<std::vector<Index>>& partition,
                                     Index cap = kDefaultDenseCap);

}  // namespace nucspar
