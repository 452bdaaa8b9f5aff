#include "cli.hpp"

#include "nucspar/graph.hpp"
#include "nucspar/hard_instances.hpp"
#include "nucspar/norms.hpp"
#include "nucspar/query.hpp"
#include "nucspar/rw_sparsify.hpp"
#include "nucspar/sde.hpp"
#include "nucspar/sparsify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace nucspar::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_bool(const std::string& s, std::size_t line) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ParseError(line, "expected a boolean, got \"" + s + "\"");
}

template <typename T>
T parse_number(const std::string& s, std::size_t line) {
  std::istringstream in(s);
  T value{};
  if (!(in >> value) || !(in >> std::ws).eof()) throw ParseError(line, "bad number \"" + s + "\"");
  return value;
}

struct Row {
  long long n = 0;
  double eps = 0;
  std::string method;
  std::uint64_t seed = 0;
  Index nnz = 0;
  std::uint64_t neighbor_queries = 0;
  std::uint64_t random_queries = 0;
  double seconds = 0;
  std::optional<double> frobenius;
  std::optional<double> nuclear;
  std::optional<double> w1;
  std::optional<double> reference;
};

WeightedGraph make_graph(const BenchConfig& c, long long n, double eps, std::uint64_t seed) {
  if (c.graph == "er") return erdos_renyi(n, c.p, seed);
  if (c.graph == "wer") return weighted_erdos_renyi(n, c.p, seed);
  if (c.graph == "cycle") return cycle_graph(n);
  if (c.graph == "tiled") return tiled_er_instance(n, eps, seed).graph;
  if (c.graph == "paired") return paired_block_instance(n, eps, seed).graph;
  if (c.graph == "coupon") return coupon_pair_graph(n, seed);
  throw InvalidInput("unknown graph kind \"" + c.graph + "\"");
}

void sparsifier_errors(const WeightedGraph& g, const SparseSymMatrixd& m, Row& row) {
  SparseSymMatrixd diff = normalized_adjacency(g);
  m.for_each_upper([&](Index i, Index j, double v) { diff.add(i, j, -v); });
  row.frobenius = frobenius_norm(diff);
  if (g.num_vertices() <= kDefaultDenseCap) row.nuclear = nuclear_norm_sym(diff);
}

Row run_cell(const BenchConfig& c, long long n, double eps, const std::string& method, std::uint64_t seed) {
  Row row;
  row.n = n;
  row.eps = eps;
  row.method = method;
  row.seed = seed;
  const WeightedGraph g = make_graph(c, n, eps, derive_seed(seed, 0));
  QuerySession session(g, derive_seed(seed, 1));
  const auto start = std::chrono::steady_clock::now();

  std::optional<SparseSymMatrixd> m;
  std::optional<Spectrum> spectrum;
  if (method == "greedy") {
    m = greedy_nuclear_sparsify(session, eps);
  } else if (method == "rw-nuclear") {
    m = rw_nuclear_sparsify(session, eps);
  } else if (method == "rw-spectral") {
    m = rw_spectral_sparsify(session, eps, 1.0 / 3.0, std::nullopt, derive_seed(seed, 2)).symmetric;
  } else if (method == "sde-randomized") {
    auto r = sde_randomized(session, eps, derive_seed(seed, 2));
    row.nnz = r.sparsifier.nonZeros();
    spectrum = std::move(r.spectrum);
  } else if (method == "sde-deterministic") {
    auto r = sde_deterministic(session, eps);
    row.nnz = r.sparsifier.nonZeros();
    spectrum = std::move(r.spectrum);
  } else if (method == "coupon") {
    coupon_draws_to_cover(session);
    const double pairs = static_cast<double>(g.num_vertices() / 2);
    row.reference = pairs * std::log(pairs);
  } else {
    throw InvalidInput("unknown method \"" + method + "\"");
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  row.neighbor_queries = session.counts().neighbor;
  row.random_queries = session.counts().random;

  if (m) {
    row.nnz = m->nonZeros();
    if (c.validate) sparsifier_errors(g, *m, row);
  }
  if (spectrum && c.validate) row.w1 = wasserstein1(*spectrum, eig_sym_dense(normalized_adjacency(g)));
  return row;
}

std::string fmt(std::optional<double> v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", *v);
  return buf;
}

}  // namespace

BenchConfig parse_bench_config(std::istream& in) {
  BenchConfig c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected \"key = value\"");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ParseError(line_no, "empty value for \"" + key + "\"");

    if (key == "n") {
      c.n.clear();
      for (const auto& s : split_list(value)) c.n.push_back(parse_number<long long>(s, line_no));
    } else if (key == "eps") {
      c.eps.clear();
      for (const auto& s : split_list(value)) c.eps.push_back(parse_number<double>(s, line_no));
    } else if (key == "method") {
      c.method = split_list(value);
    } else if (key == "graph") {
      c.graph = value;
    } else if (key == "p") {
      c.p = parse_number<double>(value, line_no);
    } else if (key == "seeds") {
      c.seeds = parse_number<long long>(value, line_no);
    } else if (key == "seed_start") {
      c.seed_start = parse_number<std::uint64_t>(value, line_no);
    } else if (key == "threads") {
      c.threads = parse_number<unsigned>(value, line_no);
    } else if (key == "validate") {
      c.validate = parse_bool(value, line_no);
    } else if (key == "timing") {
      c.timing = parse_bool(value, line_no);
    } else {
      throw ParseError(line_no, "unknown key \"" + key + "\"");
    }
  }
  if (c.n.empty() || c.eps.empty() || c.method.empty() || c.seeds < 1) {
    throw ParseError(line_no, "n, eps, method and seeds must be non-empty");
  }
  return c;
}

void run_bench(const BenchConfig& config, std::ostream& csv) {
  struct Cell {
    long long n;
    double eps;
    std::string method;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (long long n : config.n)
    for (double eps : config.eps)
      for (const auto& method : config.method)
        for (long long s = 0; s < config.seeds; ++s)
          cells.push_back({n, eps, method, config.seed_start + static_cast<std::uint64_t>(s)});

  std::vector<Row> rows(cells.size());
  std::vector<std::string> errors(cells.size());
  parallel_for(static_cast<Index>(cells.size()), config.threads, [&](Index begin, Index end) {
    for (Index i = begin; i < end; ++i) {
      const auto& c = cells[static_cast<std::size_t>(i)];
      try {
        rows[i] = run_cell(config, c.n, c.eps, c.method, c.seed);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  });
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) {
      throw std::runtime_error("cell (n=" + std::to_string(cells[i].n) + ", method=" + cells[i].method +
                               ", seed=" + std::to_string(cells[i].seed) + "): " + errors[i]);
    }
  }

  csv << "n,eps,method,seed,nnz,neighbor_queries,random_queries,wall_seconds,frobenius_error,nuclear_error,w1,"
         "reference\n";
  for (const auto& r : rows) {
    csv << r.n << ',' << fmt(r.eps) << ',' << r.method << ',' << r.seed << ',' << r.nnz << ',' << r.neighbor_queries
        << ',' << r.random_queries << ',' << (config.timing ? fmt(r.seconds) : std::string()) << ','
        << fmt(r.frobenius) << ',' << fmt(r.nuclear) << ',' << fmt(r.w1) << ',' << fmt(r.reference) << '\n';
  }
}

}  // namespace nucspar::cli
