#include "nucspar/sde.hpp"

#include <atomic>
#include <random>
#include <string>
#include <vector>

namespace nucspar {

namespace {

void check_q(Index q, const char* what) {
  if (q < 1) throw InvalidInput(std::string(what) + ": q must be >= 1");
}

}  // namespace

MomentVector exact_power_moments(const SparseSymMatrixd& m, Index q, const ExactMomentOptions& options) {
  check_q(q, "exact_power_moments");
  const Index n = m.rows();
  MomentVector out{Eigen::VectorXd::Zero(q)};
  if (n == 0) return out;
  const Index h = (q + 1) / 2;

  Eigen::MatrixXd per_row(q, n);
  std::atomic<double> work{0.0};
  std::atomic<bool> over{false};

  parallel_for(n, options.threads, [&](Index begin, Index end) {
    std::vector<std::vector<double>> dense(static_cast<std::size_t>(h) + 1,
                                           std::vector<double>(static_cast<std::size_t>(n), 0.0));
    std::vector<std::vector<char>> mark(static_cast<std::size_t>(h) + 1,
                                        std::vector<char>(static_cast<std::size_t>(n), 0));
    std::vector<std::vector<Index>> touched(static_cast<std::size_t>(h) + 1);

    for (Index i = begin; i < end && !over.load(std::memory_order_relaxed); ++i) {
      touched[0].assign(1, i);
      dense[0][i] = 1.0;
      mark[0][i] = 1;
      double local_work = 0.0;
      for (Index k = 1; k <= h; ++k) {
        auto& prev = touched[k - 1];
        auto& cur = touched[k];
        auto& dv = dense[k];
        auto& mk = mark[k];
        for (Index t : prev) {
          const double x = dense[k - 1][t];
          const auto row = m.row(t);
          local_work += static_cast<double>(row.size());
          for (const auto& e : row) {
            if (!mk[e.col]) {
              mk[e.col] = 1;
              cur.push_back(e.col);
            }
            dv[e.col] += e.value * x;
          }
        }
      }
      if (work.fetch_add(local_work, std::memory_order_relaxed) + local_work > options.work_cap) {
        over.store(true, std::memory_order_relaxed);
      }

      for (Index j = 1; j <= q; ++j) {
        const Index a = j / 2;
        const Index b = j - a;
        double acc = 0.0;
        for (Index t : touched[a]) acc += dense[a][t] * dense[b][t];
        per_row(j - 1, i) = acc;
      }
      for (Index k = 0; k <= h; ++k) {
        for (Index t : touched[k]) {
          dense[k][t] = 0.0;
          mark[k][t] = 0;
        }
        touched[k].clear();
      }
    }
  });

  if (over.load()) {
    throw CapacityError("exact_power_moments: work cap of " + std::to_string(options.work_cap) +
                        " entry visits exceeded at q = " + std::to_string(q));
  }
  for (Index i = 0; i < n; ++i) out.values += per_row.col(i);
  out.values /= static_cast<double>(n);
  return out;
}

MomentVector hutchinson_power_moments(const SparseSymMatrixd& m, Index q, Index probes, std::uint64_t seed,
                                      unsigned threads) {
  check_q(q, "hutchinson_power_moments");
  if (probes < 1) throw InvalidInput("hutchinson_power_moments: probes must be >= 1");
  const Index n = m.rows();
  MomentVector out{Eigen::VectorXd::Zero(q)};
  if (n == 0) return out;

  Eigen::MatrixXd per_probe(q, probes);
  parallel_for(probes, threads, [&](Index begin, Index end) {
    Eigen::VectorXd g(n), v(n), next(n);
    for (Index p = begin; p < end; ++p) {
      std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(p)));
      for (Index i = 0; i < n; i += 64) {
        std::uint64_t bits = rng();
        for (Index k = i; k < std::min(n, i + 64); ++k, bits >>= 1) g(k) = (bits & 1U) ? 1.0 : -1.0;
      }
      v = g;
      for (Index j = 1; j <= q; ++j) {
        spmv_into(m, v, next);
        v.swap(next);
        per_probe(j - 1, p) = g.dot(v);
      }
    }
  });

  for (Index p = 0; p < probes; ++p) out.values += per_probe.col(p);
  out.values /= static_cast<double>(n) * static_cast<double>(probes);
  return out;
}

}  // namespace nucspar
