// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "nucspar/graph.hpp"
#include "nucspar/hard_instances.hpp"
#include "nucspar/norms.hpp"
#include "nucspar/query.hpp"
#include "nucspar/rw_sparsify.hpp"
#include "nucspar/sde.hpp"
#include "nucspar/sparsify.hpp"
#include "nucspar/spectrum.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace nucspar;

namespace {

using Detail = std::ostringstream;

bool has_isolated(const WeightedGraph& g) {
  for (double d : g.degrees())
    if (d == 0.0) return true;
  return false;
}

template <typename Make>
WeightedGraph connected_draw(Make&& make, std::uint64_t seed) {
  for (;; ++seed) {
    WeightedGraph g = make(seed);
    if (!has_isolated(g)) return g;
  }
}

Eigen::MatrixXd dense_diff(const WeightedGraph& g, const SparseSymMatrixd& m) {
  return oracle::normalized_adjacency(g) - m.to_dense();
}

Spectrum dense_spectrum(const WeightedGraph& g) {
  return Spectrum::from_unsorted(oracle::eigenvalues(oracle::normalized_adjacency(g)));
}

std::string spectrum_bytes(const Spectrum& s) {
  std::ostringstream out;
  write_spectrum_csv(out, s);
  return out.str();
}

bool regular(const WeightedGraph& g, double d) {
  for (double x : g.degrees())
    if (x != d) return false;
  return true;
}

// Graph families shared by the greedy and graphical-conversion criteria.
std::vector<std::pair<std::string, WeightedGraph>> greedy_instances() {
  std::vector<std::pair<std::string, WeightedGraph>> out;
  const double ps[] = {0.05, 0.1, 0.3};
  for (std::uint64_t i = 0; i < 8; ++i)
    for (double p : ps)
      out.emplace_back("er", connected_draw([&](std::uint64_t s) { return erdos_renyi(400, p, s); }, 1000 * i));
  for (Index n : {50, 100, 200, 300, 400, 401}) out.emplace_back("cycle", cycle_graph(n));
  std::mt19937_64 rng(77);
  std::exponential_distribution<double> expo(1.0);
  for (Index leaves : {9, 49, 99, 199, 299, 399}) {
    std::vector<double> w(static_cast<std::size_t>(leaves));
    for (auto& x : w) x = expo(rng);
    out.emplace_back("star", star_graph(w));
  }
  for (std::uint64_t i = 0; i < 14; ++i) {
    const double p = ps[i % 3];
    out.emplace_back("wer",
                     connected_draw([&](std::uint64_t s) { return weighted_erdos_renyi(400, p, s); }, 5000 + 1000 * i));
  }
  return out;
}

const double kGreedyEps[] = {0.5, 0.35, 0.25};

// ---------------------------------------------------------------------------

bool greedy_guarantees(Detail& d) {
  const auto graphs = greedy_instances();
  int failures = 0;
  double worst_nuc = 0.0, worst_frob = 0.0;
  for (const auto& [kind, g] : graphs) {
    const double n = static_cast<double>(g.num_vertices());
    const Eigen::MatrixXd exact = oracle::normalized_adjacency(g);
    for (double eps : kGreedyEps) {
      QuerySession s(g);
      const SparseSymMatrixd m = greedy_nuclear_sparsify(s, eps);
      const Eigen::MatrixXd diff = exact - m.to_dense();
      const double frob2 = diff.squaredNorm();
      const double nuc = oracle::nuclear(diff);
      const Eigen::VectorXd ev = oracle::eigenvalues(m.to_dense());
      bool ok = static_cast<double>(m.max_row_nonzeros()) <= 2.0 / (eps * eps);
      ok &= frob2 <= eps * eps * n;
      ok &= nuc <= eps * n;
      ok &= ev.minCoeff() >= -1.0 - 1e-9 && ev.maxCoeff() <= 1.0 + 1e-9;
      ok &= static_cast<double>(s.counts().neighbor) <= 2.0 * n + 2.0 * n / (eps * eps);
      if (!ok) {
        ++failures;
        d << " fail[" << kind << " n=" << n << " eps=" << eps << "]";
      }
      worst_nuc = std::max(worst_nuc, nuc / (eps * n));
      worst_frob = std::max(worst_frob, frob2 / (eps * eps * n));
    }
  }
  d << graphs.size() << " graphs x 3 eps; max nuclear/(eps n) = " << worst_nuc
    << ", max frob^2/(eps^2 n) = " << worst_frob;
  return failures == 0 && graphs.size() == 50;
}

bool nuclear_wasserstein_bridge(Detail& d) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<Index> size(1, 200);
  std::uniform_int_distribution<int> mode(0, 2);
  double worst = -1e300;
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    const Index n = size(rng);
    const Eigen::MatrixXd a = oracle::random_symmetric(n, rng);
    Eigen::MatrixXd b;
    switch (mode(rng)) {
      case 0: b = oracle::random_symmetric(n, rng); break;
      case 1: b = a + 1e-3 * oracle::random_symmetric(n, rng); break;
      default: b = a + 0.5 * Eigen::MatrixXd::Identity(n, n); break;
    }
    const double lhs = static_cast<double>(n) * wasserstein1(eig_sym_dense(a), eig_sym_dense(b));
    const double rhs = oracle::nuclear(a - b);
    worst = std::max(worst, lhs - rhs);
    if (lhs > rhs + 1e-9) ++failures;
  }
  d << "200 pairs; max n*W1 - nuclear = " << worst;
  return failures == 0;
}

bool deterministic_sde(Detail& d) {
  std::vector<std::pair<std::string, WeightedGraph>> graphs;
  graphs.emplace_back("er300", connected_draw([](std::uint64_t s) { return erdos_renyi(300, 0.1, s); }, 31));
  graphs.emplace_back("wer250", connected_draw([](std::uint64_t s) { return weighted_erdos_renyi(250, 0.15, s); }, 32));
  graphs.emplace_back("cycle300", cycle_graph(300));
  graphs.emplace_back("tiled300", tiled_er_instance(300, 0.3, 33).graph);
  int failures = 0;
  double worst_moment = 0.0;
  for (const auto& [name, g] : graphs) {
    const SparseSymMatrixd n = normalized_adjacency(g);
    const Eigen::VectorXd ref = oracle::power_moments(n.to_dense(), 10);
    const double err = (exact_power_moments(n, 10).values - ref).cwiseAbs().maxCoeff();
    worst_moment = std::max(worst_moment, err);
    if (err > 1e-10) {
      ++failures;
      d << " moments[" << name << "]";
    }
    const Spectrum exact = dense_spectrum(g);
    for (double eps : {0.5, 0.3}) {
      QuerySession a(g), b(g);
      const auto ra = sde_deterministic(a, eps);
      const auto rb = sde_deterministic(b, eps);
      const double w1 = wasserstein1(ra.spectrum, exact);
      const bool same = spectrum_bytes(ra.spectrum) == spectrum_bytes(rb.spectrum);
      d << " " << name << "@" << eps << ":W1=" << w1;
      if (w1 > eps || !same) {
        ++failures;
        d << (same ? "(FAIL)" : "(NONDETERMINISTIC)");
      }
    }
  }
  d << "; max moment error " << worst_moment;
  return failures == 0;
}

bool randomized_sde(Detail& d) {
  // Analytic cycle spectrum cross-checked against the dense oracle.
  auto cycle_spectrum = [](Index n) {
    Eigen::VectorXd v(n);
    for (Index k = 0; k < n; ++k) v(k) = std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    return Spectrum::from_unsorted(v);
  };
  const double analytic_check = wasserstein1(cycle_spectrum(200), dense_spectrum(cycle_graph(200)));
  bool ok = analytic_check <= 1e-12;
  d << "cycle(200) analytic vs dense W1 " << analytic_check << ";";

  const WeightedGraph cycle = cycle_graph(1000);
  const Spectrum cycle_exact = cycle_spectrum(1000);
  for (double eps : {0.25, 0.2}) {
    int er_good = 0, cycle_good = 0;
    double er_worst = 0.0, cycle_worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const WeightedGraph g = connected_draw([](std::uint64_t s) { return erdos_renyi(500, 0.1, s); }, 100 * seed);
      QuerySession s(g, derive_seed(seed, 10));
      const double w1 = wasserstein1(sde_randomized(s, eps, seed).spectrum, dense_spectrum(g));
      er_good += w1 <= eps;
      er_worst = std::max(er_worst, w1);

      QuerySession c(cycle, derive_seed(seed, 11));
      const double wc = wasserstein1(sde_randomized(c, eps, seed).spectrum, cycle_exact);
      cycle_good += wc <= eps;
      cycle_worst = std::max(cycle_worst, wc);
    }
    d << " eps=" << eps << ": ER " << er_good << "/50 (max W1 " << er_worst << "), cycle " << cycle_good
      << "/50 (max W1 " << cycle_worst << ")";
    ok &= er_good >= 45 && cycle_good >= 45;
  }
  return ok;
}

bool rw_nuclear(Detail& d) {
  const double eps = 0.3;
  const Index n = 200;
  const std::int64_t t = static_cast<std::int64_t>(std::ceil(3.0 * n / (eps * eps)));
  int good = 0;
  double median_ratio_sum = 0.0;
  for (std::uint64_t r = 0; r < 60; ++r) {
    const WeightedGraph g = connected_draw([](std::uint64_t s) { return erdos_renyi(200, 0.2, s); }, 700 + 100 * r);
    QuerySession s(g, derive_seed(r, 5));
    const SparseSymMatrixd x = rw_nuclear_sparsify(s, eps, t);
    const double frob2 = dense_diff(g, x).squaredNorm();
    good += frob2 <= n * eps * eps;
    median_ratio_sum += frob2 / (n * eps * eps);
  }
  d << "T=" << t << ": " << good << "/60 within n eps^2 (mean ratio " << median_ratio_sum / 60 << ")";
  bool ok = 3 * good >= 2 * 60;

  // Entrywise unbiasedness on a small weighted graph.
  const WeightedGraph small =
      connected_draw([](std::uint64_t s) { return weighted_erdos_renyi(6, 0.6, s); }, 4242);
  const Eigen::MatrixXd exact = oracle::normalized_adjacency(small);
  const int runs = 10000;
  const std::int64_t ts = static_cast<std::int64_t>(std::ceil(3.0 * 6 / (eps * eps)));
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(6, 6), sq = sum;
  for (int r = 0; r < runs; ++r) {
    QuerySession s(small, derive_seed(9, static_cast<std::uint64_t>(r)));
    const Eigen::MatrixXd x = rw_nuclear_sparsify(s, eps, ts).to_dense();
    sum += x;
    sq += x.cwiseProduct(x);
  }
  const Eigen::MatrixXd mean = sum / runs;
  const Eigen::MatrixXd se = ((sq / runs - mean.cwiseProduct(mean)) / runs).cwiseMax(0.0).cwiseSqrt();
  double worst_z = 0.0;
  int entries = 0;
  bool unbiased = true;
  for (Index i = 0; i < 6; ++i)
    for (Index j = i; j < 6; ++j) {
      const double dev = std::abs(mean(i, j) - exact(i, j));
      if (se(i, j) == 0.0) {
        unbiased &= dev <= 1e-12;
        continue;
      }
      ++entries;
      worst_z = std::max(worst_z, dev / se(i, j));
      unbiased &= dev <= 3.0 * se(i, j);
    }
  d << "; unbiasedness over " << runs << " runs, " << entries << " random entries, max z " << worst_z;
  return ok && unbiased;
}

bool rw_spectral(Detail& d) {
  const double eps = 0.5;
  const Index n = 200;
  const std::int64_t t = static_cast<std::int64_t>(std::ceil(256.0 * n * std::log(6.0 * n) / (eps * eps)));
  int good = 0;
  double worst = 0.0;
  for (std::uint64_t r = 0; r < 30; ++r) {
    const WeightedGraph g = connected_draw([](std::uint64_t s) { return erdos_renyi(200, 0.3, s); }, 300 + 100 * r);
    QuerySession s(g, derive_seed(r, 6));
    const auto res = rw_spectral_sparsify(s, eps, 1.0 / 3.0, t, derive_seed(r, 7));
    const double err = oracle::eigenvalues(dense_diff(g, res.symmetric)).cwiseAbs().maxCoeff();
    good += err <= eps;
    worst = std::max(worst, err);
  }
  d << "T=" << t << ": " << good << "/30 within eps (max spectral error " << worst << ")";
  return 3 * good >= 2 * 30;
}

bool graphical_conversion(Detail& d) {
  auto check = [](const WeightedGraph& g, const SparseSymMatrixd& m, double eps, double& ratio) {
    const WeightedGraph gp = graphicalize(m, g, eps);
    const Index n = g.num_vertices();
    if (gp.num_vertices() != n) return false;
    for (const auto& e : gp.edges())
      if (!(e.weight > 0.0) || e.u == e.v) return false;
    // All vertices but the lowest-degree one (ties: the largest id) keep their degree.
    Index last = 0;
    for (Index v = 0; v < n; ++v)
      if (g.degree(v) <= g.degree(last)) last = v;
    for (Index v = 0; v < n; ++v) {
      if (v == last) continue;
      if (std::abs(gp.degree(v) - g.degree(v)) > 1e-12 * g.degree(v)) return false;
    }
    if (1.0 / (eps * eps) <= static_cast<double>(n)) {
      const double nuc = oracle::nuclear(oracle::normalized_adjacency(g) - oracle::normalized_adjacency(gp));
      ratio = std::max(ratio, nuc / (3.0 * n * eps));
      if (nuc > 3.0 * static_cast<double>(n) * eps) return false;
    }
    return true;
  };
  int failures = 0, runs = 0;
  double ratio = 0.0;
  for (const auto& [kind, g] : greedy_instances()) {
    for (double eps : kGreedyEps) {
      QuerySession s(g);
      ++runs;
      if (!check(g, greedy_nuclear_sparsify(s, eps), eps, ratio)) {
        ++failures;
        d << " fail[" << kind << " n=" << g.num_vertices() << " eps=" << eps << "]";
      }
    }
  }
  ++runs;
  if (!check(complete_graph(50), SparseSymMatrixd(50), 0.5, ratio)) {
    ++failures;
    d << " fail[K_50 zero sparsifier]";
  }
  d << runs << " conversions; max nuclear/(3 n eps) = " << ratio;
  return failures == 0;
}

bool resisting_oracle(Detail& d) {
  std::mt19937_64 rng(8080);
  int failures = 0;
  double min_margin = 1e300;
  for (Index m : {8, 16, 32}) {
    const Index limit = (m * m + 7) / 8;  // T < m^2 / 8
    std::uniform_int_distribution<Index> budget(1, limit - 1);
    std::uniform_int_distribution<Index> vtx(0, 4 * m - 1);
    for (int t = 0; t < 100; ++t) {
      ResistingOracle o(m);
      const Index queries = budget(rng);
      // Mix of random probes and a walk that keeps asking the same vertices.
      const bool focused = t % 2 == 1;
      for (Index q = 0; q < queries; ++q) {
        ResistingOracle::Query query;
        query.is_edge = rng() % 3 == 0;
        query.u = focused ? vtx(rng) % 8 : vtx(rng);
        do query.v = vtx(rng);
        while (query.is_edge && query.v == query.u);
        o.step(query);
      }
      const auto [g1, g2] = o.finalize();
      const Eigen::VectorXd v = resisting_witness(m);
      const double gap = std::abs(normalized_laplacian_form(g1, v) - normalized_laplacian_form(g2, v));
      min_margin = std::min(min_margin, gap / (0.25 * v.squaredNorm()));
      const bool ok = regular(g1, static_cast<double>(m)) && regular(g2, static_cast<double>(m)) &&
                      replay_consistent(o.transcript(), g1) && replay_consistent(o.transcript(), g2) &&
                      gap > 0.25 * v.squaredNorm();
      if (!ok) {
        ++failures;
        d << " fail[m=" << m << " t=" << t << "]";
      }
    }
  }
  d << "300 transcripts; min gap / (v^T v / 4) = " << min_margin;
  return failures == 0;
}

bool paired_block_indistinguishable(Detail& d) {
  std::mt19937_64 rng(99);
  int failures = 0;
  std::size_t revealed_total = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto inst = make_paired_block(4, 2, t);
    std::vector<std::pair<Index, Index>> all;
    for (Index r = 0; r < inst.k; ++r)
      for (int s1 : {1, 2})
        for (int s2 : {1, 2})
          for (Index i = 0; i < inst.b; ++i)
            for (Index j = 0; j < inst.b; ++j) {
              const Index x = inst.vertex(r, s1, i), y = inst.vertex(r, s2, j);
              if (i != j && x < y) all.emplace_back(x, y);
            }
    const double keep = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::vector<std::pair<Index, Index>> revealed;
    for (const auto& pr : all)
      if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < keep) revealed.push_back(pr);
    revealed_total += revealed.size();

    const WeightedGraph flip = complement_flip(inst, revealed);
    QuerySession sg(inst.graph), sf(flip);
    bool ok = regular(inst.graph, 6.0) && regular(flip, 6.0);
    for (const auto& [x, y] : revealed) ok &= sg.get_edge(x, y) == sf.get_edge(x, y);
    if (!ok) {
      ++failures;
      d << " fail[t=" << t << "]";
    }
  }
  d << "100 revealed sets, " << revealed_total << " revealed pairs in total";
  return failures == 0;
}

bool blockwise_bound(Detail& d) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<Index> size(1, 80);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> z;
  int failures = 0;
  double worst = -1e300;
  for (int t = 0; t < 1000; ++t) {
    const Index n = size(rng);
    const double density = unit(rng);
    SparseSymMatrixd m(n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j)
        if (unit(rng) < density) m.set(i, j, z(rng));
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);
    const Index parts = std::uniform_int_distribution<Index>(1, n)(rng);
    std::vector<std::vector<Index>> partition(static_cast<std::size_t>(parts));
    for (Index i = 0; i < n; ++i) {
      const Index p = i < parts ? i : std::uniform_int_distribution<Index>(0, parts - 1)(rng);
      partition[static_cast<std::size_t>(p)].push_back(order[static_cast<std::size_t>(i)]);
    }
    const double lower = blockwise_nuclear_lower_bound(m, partition);
    const double whole = oracle::nuclear(m.to_dense());
    worst = std::max(worst, lower - whole);
    if (lower > whole + 1e-9) ++failures;
  }
  d << "1000 instances; max (blockwise - nuclear) = " << worst;
  return failures == 0;
}

bool coupon_separation(Detail& d) {
  const Index n = 1000;
  double total = 0.0;
  for (std::uint64_t r = 0; r < 200; ++r) {
    const WeightedGraph g = coupon_pair_graph(n, derive_seed(r, 0));
    QuerySession s(g, derive_seed(r, 1));
    total += static_cast<double>(coupon_draws_to_cover(s));
  }
  const double mean = total / 200;
  const double nn = static_cast<double>(n);
  const double lo = nn * std::log(nn) - 3 * nn, hi = nn * std::log(nn) + 3 * nn;
  d << "mean draws " << mean << " in [" << lo << ", " << hi << "]; n ln n = " << nn * std::log(nn)
    << "; nuclear budget 3n/eps^2 at eps=0.5: " << default_rw_nuclear_samples(n, 0.5)
    << ", eps=0.25: " << default_rw_nuclear_samples(n, 0.25);
  return mean >= lo && mean <= hi;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<bool(Detail&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "greedy sparsifier guarantees", 10, greedy_guarantees},
      {2, "nuclear norm bounds n*W1", 30, nuclear_wasserstein_bridge},
      {3, "deterministic spectral density estimation", 60, deterministic_sde},
      {4, "randomized spectral density estimation", 300, randomized_sde},
      {5, "random-walk nuclear sparsifier", 120, rw_nuclear},
      {6, "random-walk spectral sparsifier", 180, rw_spectral},
      {7, "graphical conversion", 30, graphical_conversion},
      {8, "resisting oracle", 30, resisting_oracle},
      {9, "paired-block indistinguishability", 10, paired_block_indistinguishable},
      {10, "blockwise nuclear lower bound", 60, blockwise_bound},
      {11, "coupon-collector separation", 120, coupon_separation},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Detail detail;
    detail.precision(4);
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      ok = false;
      detail << " (over time budget)";
    }
    failed += !ok;
    std::printf("%s  %2d  %-44s %7.2fs / %4.0fs  %s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_seconds,
                detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
