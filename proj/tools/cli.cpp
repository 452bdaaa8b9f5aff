#include "cli.hpp"

#include "nucspar/graph.hpp"
#include "nucspar/hard_instances.hpp"
#include "nucspar/matrix_io.hpp"
#include "nucspar/norms.hpp"
#include "nucspar/query.hpp"
#include "nucspar/rw_sparsify.hpp"
#include "nucspar/sde.hpp"
#include "nucspar/sparsify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace nucspar::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StageError : std::runtime_error {
  StageError(const std::string& stage, const std::string& what) : std::runtime_error(stage + ": " + what) {}
};

template <typename Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

// Malformed input files are reported like missing ones.
template <typename Fn>
auto load(const std::string& path, Fn&& fn) -> decltype(fn()) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError("cannot read \"" + path + "\"");
  try {
    return fn();
  } catch (const ParseError& e) {
    throw UsageError("load: " + path + ": " + e.what());
  } catch (const std::exception& e) {
    throw StageError("load", e.what());
  }
}

void require_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError("cannot read \"" + path + "\"");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write \"" + path + "\"");
  return out;
}

WeightedGraph read_graph(const std::string& path) {
  return load(path, [&] { return load_edge_list_file(path); });
}

SparseSymMatrixd read_matrix(const std::string& path) {
  return load(path, [&] {
    std::ifstream in(path);
    return read_coordinate(in);
  });
}

Spectrum read_spectrum(const std::string& path) {
  return load(path, [&] {
    std::ifstream in(path);
    return read_spectrum_csv(in);
  });
}

json counts_json(const QueryCounts& c) {
  return {{"neighbor", c.neighbor}, {"edge", c.edge}, {"random", c.random}};
}

void emit_json(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    auto f = open_out(path);
    f << j.dump(2) << '\n';
  }
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string kind = "er";
  long long n = 0;
  double p = 0.1;
  double eps = 0.25;
  double c_prime = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string sidecar;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  json meta = {{"kind", a.kind}, {"n", a.n}, {"seed", a.seed}};
  WeightedGraph g = stage("gen", [&] {
    if (a.kind == "er") {
      meta["p"] = a.p;
      return erdos_renyi(a.n, a.p, a.seed);
    }
    if (a.kind == "tiled") {
      auto inst = tiled_er_instance(a.n, a.eps, a.seed);
      meta["eps"] = a.eps;
      meta["block_size"] = inst.block_size;
      meta["blocks"] = inst.blocks;
      meta["partition"] = inst.partition;
      return inst.graph;
    }
    if (a.kind == "paired") {
      auto inst = paired_block_instance(a.n, a.eps, a.seed, a.c_prime);
      meta["eps"] = a.eps;
      meta["b"] = inst.b;
      meta["k"] = inst.k;
      meta["bit_index"] = "(r * b + i) * b + j";
      meta["vertex_index"] = "(2 * r + side - 1) * b + i";
      meta["bits"] = inst.bits;
      return inst.graph;
    }
    if (a.kind == "coupon") {
      auto g = coupon_pair_graph(a.n, a.seed);
      std::vector<int> present;
      for (long long i = 0; i < a.n; ++i) present.push_back(g.has_edge(2 * i, 2 * i + 1) ? 1 : 0);
      meta["pairs"] = a.n;
      meta["present"] = present;
      return g;
    }
    throw UsageError("unknown --kind \"" + a.kind + "\"");
  });
  meta["num_vertices"] = g.num_vertices();
  meta["num_edges"] = g.num_edges();

  auto f = open_out(a.out);
  write_edge_list(f, g);
  emit_json(meta, a.sidecar.empty() ? a.out + ".json" : a.sidecar, out);
  return 0;
}

// ---------------------------------------------------------------- sparsify

struct SparsifyArgs {
  std::string graph;
  double eps = 0.25;
  std::string method = "greedy";
  std::optional<long long> samples;
  std::uint64_t seed = 0;
  double fail_prob = 1.0 / 3.0;
  std::string out;
  std::string stats;
  std::string graphical;
  bool validate = false;
};

int cmd_sparsify(const SparsifyArgs& a, std::ostream& out) {
  const WeightedGraph g = read_graph(a.graph);
  QuerySession session(g, derive_seed(a.seed, 0));
  json stats = {{"method", a.method}, {"eps", a.eps}, {"n", g.num_vertices()}, {"seed", a.seed}};

  const auto start = std::chrono::steady_clock::now();
  SparseSymMatrixd m = stage("sparsify", [&] {
    if (a.method == "greedy") return greedy_nuclear_sparsify(session, a.eps);
    if (a.method == "rw-nuclear") return rw_nuclear_sparsify(session, a.eps, a.samples);
    if (a.method == "rw-spectral") {
      return rw_spectral_sparsify(session, a.eps, a.fail_prob, a.samples, derive_seed(a.seed, 1)).symmetric;
    }
    throw UsageError("unknown --method \"" + a.method + "\"");
  });
  stats["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  stats["nnz"] = m.nonZeros();
  stats["max_row_nnz"] = m.max_row_nonzeros();
  stats["queries"] = counts_json(session.counts());

  if (!a.out.empty()) {
    auto f = open_out(a.out);
    write_coordinate(f, m);
  }
  if (!a.graphical.empty()) {
    WeightedGraph gp = stage("graphicalize", [&] { return graphicalize(m, g, a.eps); });
    auto f = open_out(a.graphical);
    write_edge_list(f, gp);
    stats["graphical_edges"] = gp.num_edges();
  }
  if (a.validate) {
    stage("validate", [&] {
      SparseSymMatrixd diff = normalized_adjacency(g);
      m.for_each_upper([&](Index i, Index j, double v) { diff.add(i, j, -v); });
      stats["frobenius_error"] = frobenius_norm(diff);
      if (g.num_vertices() <= kDefaultDenseCap) {
        const Eigen::VectorXd ev = symmetric_eigenvalues(diff.to_dense());
        stats["nuclear_error"] = ev.cwiseAbs().sum();
        stats["spectral_error"] = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
      }
      return 0;
    });
  }
  emit_json(stats, a.stats, out);
  return 0;
}

// ---------------------------------------------------------------- sde

struct SdeArgs {
  std::string graph;
  double eps = 0.25;
  std::string mode = "randomized";
  std::uint64_t seed = 0;
  std::string out;
  std::string stats;
  bool validate = false;
  double c_mom = 8.0;
  std::optional<long long> probes;
  std::optional<long long> grid;
  long long dense_threshold = 64;
  unsigned threads = 1;
};

int cmd_sde(const SdeArgs& a, std::ostream& out) {
  const WeightedGraph g = read_graph(a.graph);
  QuerySession session(g, derive_seed(a.seed, 0));
  SdeOptions opt;
  opt.c_mom = a.c_mom;
  if (a.probes) opt.probes = *a.probes;
  if (a.grid) opt.grid_size = *a.grid;
  opt.dense_threshold = a.dense_threshold;
  opt.threads = a.threads;

  SdeResult r = stage("sde", [&] {
    if (a.mode == "randomized") return sde_randomized(session, a.eps, a.seed, opt);
    if (a.mode == "deterministic") return sde_deterministic(session, a.eps, opt);
    throw UsageError("unknown --mode \"" + a.mode + "\"");
  });

  json stats = {{"mode", a.mode},
                {"eps", a.eps},
                {"n", g.num_vertices()},
                {"dense_fallback", r.dense_fallback},
                {"q", r.q},
                {"grid_size", r.grid_size},
                {"probes", r.probes},
                {"queries", counts_json(session.counts())},
                {"sparsifier_nnz", r.sparsifier.nonZeros()},
                {"seconds", {{"sparsify", r.sparsify_seconds}, {"moments", r.moments_seconds}, {"match", r.match_seconds}}}};
  if (!r.dense_fallback) {
    stats["moment_residuals"] = std::vector<double>(r.match.residual.data(), r.match.residual.data() + r.match.residual.size());
    stats["match_within_tol"] = r.match.within_tol;
    stats["match_iterations"] = r.match.iterations;
  }
  if (!a.out.empty()) {
    auto f = open_out(a.out);
    write_spectrum_csv(f, r.spectrum);
  }
  if (a.validate) {
    stage("validate", [&] {
      const Spectrum exact = eig_sym_dense(normalized_adjacency(g));
      stats["w1"] = wasserstein1(r.spectrum, exact);
      if (!r.dense_fallback) {
        stats["w1_sparsifier"] = wasserstein1(eig_sym_dense(r.sparsifier), exact);
      }
      return 0;
    });
  }
  emit_json(stats, a.stats, out);
  return 0;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string graph;
  std::string matrix;
  std::string spectrum;
  std::string reference;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  json j;
  std::optional<WeightedGraph> g;
  if (!a.graph.empty()) g = read_graph(a.graph);

  if (!a.matrix.empty()) {
    if (!g) throw UsageError("--matrix needs --graph");
    const SparseSymMatrixd m = read_matrix(a.matrix);
    stage("eval", [&] {
      SparseSymMatrixd diff = normalized_adjacency(*g);
      if (m.rows() != diff.rows()) throw InvalidInput("matrix and graph dimensions differ");
      m.for_each_upper([&](Index i, Index k, double v) { diff.add(i, k, -v); });
      j["nnz"] = m.nonZeros();
      j["max_row_nnz"] = m.max_row_nonzeros();
      j["frobenius_error"] = frobenius_norm(diff);
      j["nuclear_error"] = nuclear_norm_sym(diff);
      j["spectral_error"] = spectral_norm_sym(diff);
      return 0;
    });
  }
  if (!a.spectrum.empty()) {
    const Spectrum s = read_spectrum(a.spectrum);
    std::optional<Spectrum> ref;
    if (!a.reference.empty()) {
      ref = read_spectrum(a.reference);
    } else if (g) {
      ref = stage("eval", [&] { return eig_sym_dense(normalized_adjacency(*g)); });
    } else {
      throw UsageError("--spectrum needs --reference or --graph");
    }
    j["w1"] = stage("eval", [&] { return wasserstein1(s, *ref); });
  }
  if (j.is_null()) throw UsageError("nothing to evaluate; pass --matrix or --spectrum");
  out << j.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- bench

int cmd_bench(const std::string& config_path, const std::string& out_path, std::ostream& out) {
  require_file(config_path);
  BenchConfig config;
  {
    std::ifstream in(config_path);
    try {
      config = parse_bench_config(in);
    } catch (const std::exception& e) {
      throw UsageError(std::string("config: ") + e.what());
    }
  }
  if (out_path.empty()) {
    stage("bench", [&] {
      run_bench(config, out);
      return 0;
    });
  } else {
    auto f = open_out(out_path);
    stage("bench", [&] {
      run_bench(config, f);
      return 0;
    });
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nuclear sparsification and spectral density estimation"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph instance");
  gen_cmd->add_option("--kind", gen.kind, "er | tiled | paired | coupon")->check(CLI::IsMember({"er", "tiled", "paired", "coupon"}));
  gen_cmd->add_option("--n", gen.n, "Vertex count (pair count for coupon)")->required();
  gen_cmd->add_option("--p", gen.p, "Edge probability for er");
  gen_cmd->add_option("--eps", gen.eps, "Accuracy parameter for tiled / paired");
  gen_cmd->add_option("--c-prime", gen.c_prime, "Block-size constant for paired");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen.out, "Edge-list output")->required();
  gen_cmd->add_option("--sidecar", gen.sidecar, "JSON sidecar (default <out>.json)");

  SparsifyArgs sp;
  auto* sp_cmd = app.add_subcommand("sparsify", "Build a sparsifier of N_G");
  sp_cmd->add_option("--graph", sp.graph)->required();
  sp_cmd->add_option("--eps", sp.eps)->required();
  sp_cmd->add_option("--method", sp.method, "greedy | rw-nuclear | rw-spectral")
      ->check(CLI::IsMember({"greedy", "rw-nuclear", "rw-spectral"}));
  sp_cmd->add_option("--samples", sp.samples, "Random-walk draws T");
  sp_cmd->add_option("--seed", sp.seed);
  sp_cmd->add_option("--fail-prob", sp.fail_prob);
  sp_cmd->add_option("--out", sp.out, "Coordinate-format output");
  sp_cmd->add_option("--stats", sp.stats, "JSON stats output (default stdout)");
  sp_cmd->add_option("--graphical", sp.graphical, "Also write the graphical conversion as an edge list");
  sp_cmd->add_flag("--validate", sp.validate, "Add error columns computed against N_G");

  SdeArgs sde;
  auto* sde_cmd = app.add_subcommand("sde", "Estimate the spectrum of N_G");
  sde_cmd->add_option("--graph", sde.graph)->required();
  sde_cmd->add_option("--eps", sde.eps)->required();
  sde_cmd->add_option("--mode", sde.mode, "randomized | deterministic")
      ->check(CLI::IsMember({"randomized", "deterministic"}));
  sde_cmd->add_option("--seed", sde.seed);
  sde_cmd->add_option("--out", sde.out, "Spectrum CSV output");
  sde_cmd->add_option("--stats", sde.stats, "JSON run summary (default stdout)");
  sde_cmd->add_flag("--validate", sde.validate, "Compare against the dense spectrum");
  sde_cmd->add_option("--c-mom", sde.c_mom, "Moment count constant");
  sde_cmd->add_option("--probes", sde.probes, "Hutchinson probes");
  sde_cmd->add_option("--grid", sde.grid, "Moment-matching grid size");
  sde_cmd->add_option("--dense-threshold", sde.dense_threshold);
  sde_cmd->add_option("--threads", sde.threads);

  EvalArgs ev;
  auto* ev_cmd = app.add_subcommand("eval", "Norms and W1 between artifacts");
  ev_cmd->add_option("--graph", ev.graph);
  ev_cmd->add_option("--matrix", ev.matrix);
  ev_cmd->add_option("--spectrum", ev.spectrum);
  ev_cmd->add_option("--reference", ev.reference);

  std::string bench_config, bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid");
  bench_cmd->add_option("--config", bench_config)->required();
  bench_cmd->add_option("--out", bench_out, "CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (sp_cmd->parsed()) return cmd_sparsify(sp, out);
    if (sde_cmd->parsed()) return cmd_sde(sde, out);
    if (ev_cmd->parsed()) return cmd_eval(ev, out);
    if (bench_cmd->parsed()) return cmd_bench(bench_config, bench_out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const StageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace nucspar::cli
