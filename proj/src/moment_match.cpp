#include "nucspar/sde.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nucspar {

MomentMatchResult moment_match(const MomentVector& moments, Index grid_size, double tol,
                               const MomentMatchOptions& options) {
  const Index q = moments.q();
  if (q < 1) throw InvalidInput("moment_match: no moments given");
  if (grid_size < q + 1) {
    throw InvalidInput("moment_match: grid_size " + std::to_string(grid_size) + " must be at least q + 1 = " +
                       std::to_string(q + 1));
  }
  if (grid_size < 2) throw InvalidInput("moment_match: grid_size must be >= 2");

  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(grid_size, -1.0, 1.0);
  Eigen::MatrixXd powers(q, grid_size);
  powers.row(0) = x.transpose();
  for (Index j = 1; j < q; ++j) powers.row(j) = powers.row(j - 1).cwiseProduct(x.transpose());

  const Eigen::VectorXd& target = moments.values;
  Eigen::VectorXd w = Eigen::VectorXd::Constant(grid_size, 1.0 / static_cast<double>(grid_size));
  Eigen::VectorXd r = powers * w - target;
  double f = r.squaredNorm();

  Eigen::VectorXd best_w = w;
  double best_f = f;
  double eta = 1.0;
  Eigen::VectorXd grad(grid_size), z(grid_size), w_next(grid_size), r_next(q);

  Index t = 0;
  while (t < options.max_iterations && f > 0.0) {
    ++t;
    grad.noalias() = 2.0 * powers.transpose() * r;
    double f_next = f;
    bool moved = false;
    while (eta >= 1e-20) {
      z = -eta * grad;
      z.array() -= z.maxCoeff();
      w_next = w.array() * z.array().exp();
      w_next /= w_next.sum();
      r_next.noalias() = powers * w_next - target;
      f_next = r_next.squaredNorm();
      if (f_next <= f) {
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) break;

    const double prev = f;
    w.swap(w_next);
    r.swap(r_next);
    f = f_next;
    eta *= 1.5;
    if (f < best_f) {
      best_f = f;
      best_w = w;
    }
    if (t > 10 && (prev - f) <= options.relative_decrease_stop * prev) break;
  }

  MomentMatchResult out;
  out.density.support = x;
  out.density.weights = best_w;
  out.residual = powers * best_w - target;
  out.objective = best_f;
  out.iterations = t;
  out.within_tol = out.residual.cwiseAbs().maxCoeff() <= tol;
  return out;
}

Spectrum density_to_eigenvalues(const DensityEstimate& density, Index n) {
  if (n < 0) throw InvalidInput("density_to_eigenvalues: negative n");
  const Index g = density.support.size();
  if (g == 0 || density.weights.size() != g) throw InvalidInput("density_to_eigenvalues: malformed density");
  if ((density.weights.array() < 0.0).any()) throw InvalidInput("density_to_eigenvalues: negative weight");
  const double total = density.weights.sum();
  if (!(total > 0.0)) throw InvalidInput("density_to_eigenvalues: weights sum to zero");

  Eigen::VectorXd out(n);
  double cdf = density.weights(0) / total;
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    const double level = (static_cast<double>(i) + 0.5) / static_cast<double>(n) - 1e-12;
    while (cdf < level && k + 1 < g) cdf += density.weights(++k) / total;
    out(i) = density.support(k);
  }
  return Spectrum(std::move(out));
}

}  // namespace nucspar
