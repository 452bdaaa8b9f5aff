#include "nucspar/matrix_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace nucspar {

void write_coordinate(std::ostream& out, const SparseSymMatrixd& m) {
  out << "#n " << m.rows() << '\n';
  char buf[96];
  m.for_each_upper([&](Index i, Index j, double v) {
    std::snprintf(buf, sizeof buf, "%lld %lld %.17g\n", static_cast<long long>(i), static_cast<long long>(j), v);
    out << buf;
  });
}

SparseSymMatrixd read_coordinate(std::istream& in) {
  std::vector<std::tuple<Index, Index, double>> entries;
  Index declared = -1;
  Index max_index = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "#n") {
      long long n = -1;
      if (!(ls >> n) || n < 0) throw ParseError(line_no, "malformed #n header");
      declared = static_cast<Index>(n);
      continue;
    }
    if (first[0] == '#') continue;
    long long i = 0, j = 0;
    double v = 0;
    std::istringstream row(line);
    std::string extra;
    if (!(row >> i >> j >> v) || (row >> extra && extra[0] != '#')) {
      throw ParseError(line_no, "expected \"i j value\"");
    }
    if (i < 0 || j < 0) throw ParseError(line_no, "negative index");
    if (i > j) std::swap(i, j);
    entries.emplace_back(static_cast<Index>(i), static_cast<Index>(j), v);
    max_index = std::max<Index>(max_index, static_cast<Index>(j));
  }
  const Index n = declared >= 0 ? declared : max_index + 1;
  if (max_index >= n) throw ParseError(line_no, "index exceeds declared dimension");

  SparseSymMatrixd out(n);
  for (const auto& [i, j, v] : entries) {
    if (out.contains(i, j)) {
      throw InvalidInput("read_coordinate: pair (" + std::to_string(i) + ", " + std::to_string(j) + ") given twice");
    }
    out.add(i, j, v);
  }
  return out;
}

}  // namespace nucspar
