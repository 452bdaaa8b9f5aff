#pragma once

#include "nucspar/common.hpp"

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace nucspar {

template <typename Scalar>
struct SymmetricEigenDecomposition {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues;                // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;  // columns; empty unless requested
};

namespace detail {

/// Householder reduction of the symmetric matrix held in the lower triangle of
/// `a` to tridiagonal form. On return `diag` / `sub` hold the tridiagonal
/// (sub(i) couples i and i+1) and, if `q` is non-null, a == q * T * q^T.
template <typename Scalar>
void tridiagonalize(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                    Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& diag, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& sub,
                    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>* q) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Index n = a.rows();
  diag.resize(n);
  sub = Vector::Zero(n);
  if (q) q->setIdentity(n, n);

  Vector v, p, w;
  for (Index k = 0; k + 2 < n; ++k) {
    const Index m = n - k - 1;
    auto x = a.col(k).tail(m);
    const Scalar tail_norm2 = x.tail(m - 1).squaredNorm();
    if (tail_norm2 == Scalar(0)) {
      sub(k) = x(0);
      continue;
    }
    const Scalar alpha = std::sqrt(x(0) * x(0) + tail_norm2);
    const Scalar beta = x(0) >= Scalar(0) ? -alpha : alpha;
    v = x;
    v(0) -= beta;
    const Scalar tau = Scalar(2) / v.squaredNorm();
    sub(k) = beta;

    auto trailing = a.bottomRightCorner(m, m);
    p.noalias() = tau * (trailing.template selfadjointView<Eigen::Lower>() * v);
    w = p - (tau / Scalar(2) * p.dot(v)) * v;
    trailing.template selfadjointView<Eigen::Lower>().rankUpdate(v, w, Scalar(-1));

    if (q) {
      auto right = q->rightCols(m);
      p.noalias() = right * v;
      right.noalias() -= (tau * p) * v.transpose();
    }
  }
  for (Index i = 0; i < n; ++i) diag(i) = a(i, i);
  if (n >= 2) sub(n - 2) = a(n - 1, n - 2);
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix. Rotations are
/// accumulated into the columns of `z` when non-null.
template <typename Scalar>
void tridiagonal_ql(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& d, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& e,
                    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>* z) {
  const Index n = d.size();
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  constexpr int kMaxSweeps = 64;

  // Off-diagonals below eps * ||T|| are also split off; inside a cluster of
  // near-zero eigenvalues the relative test alone never fires.
  Scalar norm = 0;
  for (Index i = 0; i < n; ++i) norm = std::max(norm, std::abs(d(i)) + std::abs(e(i)) + (i > 0 ? std::abs(e(i - 1)) : 0));
  const Scalar floor = eps * norm;

  for (Index l = 0; l < n; ++l) {
    int sweeps = 0;
    Index m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const Scalar dd = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= eps * dd || std::abs(e(m)) <= floor) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxSweeps) throw std::runtime_error("tridiagonal QL iteration did not converge");

      Scalar g = (d(l + 1) - d(l)) / (Scalar(2) * e(l));
      Scalar r = std::hypot(g, Scalar(1));
      g = d(m) - d(l) + e(l) / (g + (g >= Scalar(0) ? r : -r));
      Scalar s = 1, c = 1, p = 0;
      bool underflow = false;
      for (Index i = m - 1; i >= l; --i) {
        Scalar f = s * e(i);
        const Scalar b = c * e(i);
        r = std::hypot(f, g);
        e(i + 1) = r;
        if (r == Scalar(0)) {
          d(i + 1) -= p;
          e(m) = 0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d(i + 1) - p;
        r = (d(i) - g) * s + Scalar(2) * c * b;
        p = s * r;
        d(i + 1) = g + p;
        g = c * r - b;
        if (z) {
          auto zi = z->col(i);
          auto zi1 = z->col(i + 1);
          for (Index k = 0; k < z->rows(); ++k) {
            f = zi1(k);
            zi1(k) = s * zi(k) + c * f;
            zi(k) = c * zi(k) - s * f;
          }
        }
      }
      if (underflow) continue;
      d(l) -= p;
      e(l) = g;
      e(m) = 0;
    } while (m != l);
  }
}

}  // namespace detail

/// Eigenvalues (and optionally eigenvectors) of a real symmetric matrix via
/// Householder tridiagonalization followed by implicit-shift QL. Only the lower
/// triangle of `a` is read.
template <typename Derived>
SymmetricEigenDecomposition<typename Derived::Scalar> symmetric_eigen(const Eigen::MatrixBase<Derived>& a,
                                                                      bool compute_vectors = false) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (a.rows() != a.cols()) throw InvalidInput("symmetric_eigen: matrix is not square");

  const Index n = a.rows();
  SymmetricEigenDecomposition<Scalar> out;
  if (n == 0) {
    out.eigenvalues.resize(0);
    return out;
  }

  Matrix work = a;
  Vector d, e;
  Matrix q;
  detail::tridiagonalize<Scalar>(work, d, e, compute_vectors ? &q : nullptr);
  detail::tridiagonal_ql<Scalar>(d, e, compute_vectors ? &q : nullptr);

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return d(x) < d(y); });

  out.eigenvalues.resize(n);
  for (Index i = 0; i < n; ++i) out.eigenvalues(i) = d(order[static_cast<std::size_t>(i)]);
  if (compute_vectors) {
    out.eigenvectors.resize(n, n);
    for (Index i = 0; i < n; ++i) out.eigenvectors.col(i) = q.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> symmetric_eigenvalues(const Eigen::MatrixBase<Derived>& a) {
  return symmetric_eigen(a, false).eigenvalues;
}

}  // namespace nucspar
