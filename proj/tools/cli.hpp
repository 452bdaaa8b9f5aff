#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nucspar::cli {

/// Exit codes: 0 success, 1 usage error or unreadable input, 2 stage failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct BenchConfig {
  std::vector<long long> n{400};
  std::vector<double> eps{0.5};
  std::vector<std::string> method{"greedy"};
  std::string graph = "er";
  double p = 0.1;
  long long seeds = 1;
  std::uint64_t seed_start = 0;
  unsigned threads = 1;
  bool validate = true;
  bool timing = true;
};

/// key = value lines; '#' starts a comment; list values are comma separated.
BenchConfig parse_bench_config(std::istream& in);

/// One CSV row per (n, eps, method, seed), in that nesting order.
void run_bench(const BenchConfig& config, std::ostream& csv);

}  // namespace nucspar::cli
