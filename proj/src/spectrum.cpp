#include "nucspar/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace nucspar {

Spectrum::Spectrum(Eigen::VectorXd sorted_values) : values_(std::move(sorted_values)) {
  for (Index i = 0; i < values_.size(); ++i) {
    if (std::isnan(values_(i))) throw InvalidInput("Spectrum: NaN eigenvalue");
    if (i > 0 && values_(i) < values_(i - 1)) throw InvalidInput("Spectrum: values are not sorted");
  }
}

Spectrum Spectrum::from_unsorted(Eigen::VectorXd values) {
  std::sort(values.data(), values.data() + values.size());
  return Spectrum(std::move(values));
}

double wasserstein1(const Spectrum& a, const Spectrum& b) {
  if (a.size() != b.size()) {
    throw InvalidInput("wasserstein1: length mismatch (" + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()) + ")");
  }
  if (a.size() == 0) return 0.0;
  return (a.values() - b.values()).cwiseAbs().sum() / static_cast<double>(a.size());
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
  char buf[64];
  for (Index i = 0; i < s.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g\n", s[i]);
    out << buf;
  }
}

Spectrum read_spectrum_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      std::size_t used = 0;
      values.push_back(std::stod(line.substr(first), &used));
    } catch (const std::exception&) {
      throw ParseError(line_no, "expected a real number");
    }
  }
  return Spectrum::from_unsorted(Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Index>(values.size())));
}

}  // namespace nucspar
