#pragma once

#include "nucspar/common.hpp"

#include <Eigen/Core>

#include <iosfwd>

namespace nucspar {

/// Non-decreasing list of real eigenvalues (exact or estimated).
class Spectrum {
 public:
  Spectrum() = default;

  /// Takes values that are already sorted; throws InvalidInput otherwise.
  explicit Spectrum(Eigen::VectorXd sorted_values);

  static Spectrum from_unsorted(Eigen::VectorXd values);

  Index size() const noexcept { return values_.size(); }
  double operator[](Index i) const { return values_(i); }
  const Eigen::VectorXd& values() const noexcept { return values_; }

  bool operator==(const Spectrum& other) const { return values_ == other.values_; }

 private:
  Eigen::VectorXd values_;
};

/// (1/n) * sum_i |a_i - b_i| over the two sorted lists.
double wasserstein1(const Spectrum& a, const Spectrum& b);

/// One eigenvalue per line, 17 significant digits.
void write_spectrum_csv(std::ostream& out, const Spectrum& s);
Spectrum read_spectrum_csv(std::istream& in);

}  // namespace nucspar
