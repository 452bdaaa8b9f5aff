#pragma once

#include "nucspar/common.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace nucspar {

/// Symmetric sparse matrix addressed by unordered pairs.
///
/// Each row keeps its entries sorted by column, so iteration order (and thus
/// every floating-point reduction over the matrix) is canonical regardless of
/// insertion order. An off-diagonal pair is stored in both rows and counts as
/// two nonzeros; a diagonal entry counts once.
template <typename Scalar_>
class SparseSymMatrix {
 public:
  using Scalar = Scalar_;
  using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  struct Entry {
    Index col;
    Scalar value;
    bool operator==(const Entry&) const = default;
  };

  SparseSymMatrix() = default;
  explicit SparseSymMatrix(Index n) : rows_(static_cast<std::size_t>(n)) {
    if (n < 0) throw InvalidInput("SparseSymMatrix: negative dimension");
  }

  Index rows() const noexcept { return static_cast<Index>(rows_.size()); }
  Index cols() const noexcept { return rows(); }

  Scalar coeff(Index i, Index j) const {
    check(i);
    check(j);
    const auto& r = rows_[static_cast<std::size_t>(i)];
    auto it = find(r, j);
    return (it != r.end() && it->col == j) ? it->value : Scalar(0);
  }

  bool contains(Index i, Index j) const {
    check(i);
    check(j);
    const auto& r = rows_[static_cast<std::size_t>(i)];
    auto it = find(r, j);
    return it != r.end() && it->col == j;
  }

  /// Writes (i,j) and (j,i). A zero value removes the entry.
  void set(Index i, Index j, Scalar value) {
    check(i);
    check(j);
    if (value == Scalar(0)) {
      erase(i, j);
      if (i != j) erase(j, i);
      return;
    }
    upsert(i, j, value, false);
    if (i != j) upsert(j, i, value, false);
  }

  /// Accumulates into (i,j) and (j,i); the entry stays structural even if the
  /// sum cancels to zero.
  void add(Index i, Index j, Scalar delta) {
    check(i);
    check(j);
    upsert(i, j, delta, true);
    if (i != j) upsert(j, i, delta, true);
  }

  Index nonZeros() const noexcept {
    Index total = 0;
    for (const auto& r : rows_) total += static_cast<Index>(r.size());
    return total;
  }

  Index row_nonzeros(Index i) const {
    check(i);
    return static_cast<Index>(rows_[static_cast<std::size_t>(i)].size());
  }

  Index max_row_nonzeros() const noexcept {
    Index best = 0;
    for (const auto& r : rows_) best = std::max<Index>(best, static_cast<Index>(r.size()));
    return best;
  }

  std::span<const Entry> row(Index i) const {
    check(i);
    return rows_[static_cast<std::size_t>(i)];
  }

  /// Visits each unordered pair once as fn(i, j, value) with i <= j, in
  /// row-major order.
  template <typename Fn>
  void for_each_upper(Fn&& fn) const {
    for (Index i = 0; i < rows(); ++i) {
      for (const auto& e : rows_[static_cast<std::size_t>(i)]) {
        if (e.col >= i) fn(i, e.col, e.value);
      }
    }
  }

  DenseMatrix to_dense() const {
    DenseMatrix out = DenseMatrix::Zero(rows(), rows());
    for (Index i = 0; i < rows(); ++i) {
      for (const auto& e : rows_[static_cast<std::size_t>(i)]) out(i, e.col) = e.value;
    }
    return out;
  }

  /// Reads the lower triangle of a square matrix; entries with magnitude
  /// <= drop_tolerance are not stored.
  template <typename Derived>
  static SparseSymMatrix from_dense(const Eigen::MatrixBase<Derived>& m, Scalar drop_tolerance = Scalar(0)) {
    if (m.rows() != m.cols()) throw InvalidInput("SparseSymMatrix::from_dense: matrix is not square");
    SparseSymMatrix out(m.rows());
    for (Index j = 0; j < m.cols(); ++j) {
      for (Index i = j; i < m.rows(); ++i) {
        const Scalar v = m(i, j);
        if (v != Scalar(0) && std::abs(v) > drop_tolerance) out.set(i, j, v);
      }
    }
    return out;
  }

  SparseSymMatrix& operator*=(Scalar s) {
    for (auto& r : rows_)
      for (auto& e : r) e.value *= s;
    return *this;
  }

  bool operator==(const SparseSymMatrix&) const = default;

 private:
  using Row = std::vector<Entry>;

  static typename Row::const_iterator find(const Row& r, Index col) {
    return std::lower_bound(r.begin(), r.end(), col, [](const Entry& e, Index c) { return e.col < c; });
  }

  void check(Index i) const {
    if (i < 0 || i >= rows()) {
      throw InvalidInput("SparseSymMatrix: index " + std::to_string(i) + " out of range for dimension " +
                         std::to_string(rows()));
    }
  }

  void upsert(Index i, Index j, Scalar value, bool accumulate) {
    auto& r = rows_[static_cast<std::size_t>(i)];
    if (r.empty() || r.back().col < j) {
      r.push_back({j, value});
      return;
    }
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, Index c) { return e.col < c; });
    if (it != r.end() && it->col == j) {
      it->value = accumulate ? it->value + value : value;
    } else {
      r.insert(it, Entry{j, value});
    }
  }

  void erase(Index i, Index j) {
    auto& r = rows_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, Index c) { return e.col < c; });
    if (it != r.end() && it->col == j) r.erase(it);
  }

  std::vector<Row> rows_;
};

using SparseSymMatrixd = SparseSymMatrix<double>;

/// out = m * v. Each output row is accumulated independently in column order.
template <typename Scalar, typename InDerived, typename OutDerived>
void spmv_into(const SparseSymMatrix<Scalar>& m, const Eigen::MatrixBase<InDerived>& v,
               Eigen::MatrixBase<OutDerived>& out) {
  if (v.size() != m.rows() || out.size() != m.rows()) {
    throw InvalidInput("spmv: dimension mismatch (" + std::to_string(m.rows()) + " vs " +
                       std::to_string(v.size()) + ")");
  }
  for (Index i = 0; i < m.rows(); ++i) {
    Scalar acc(0);
    for (const auto& e : m.row(i)) acc += e.value * v(e.col);
    out(i) = acc;
  }
}

template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> spmv(const SparseSymMatrix<Scalar>& m, const Eigen::MatrixBase<Derived>& v) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(m.rows());
  spmv_into(m, v, out);
  return out;
}

}  // namespace nucspar
