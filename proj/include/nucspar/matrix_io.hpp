#pragma once

#include "nucspar/sparse_sym.hpp"

#include <iosfwd>

namespace nucspar {

/// Coordinate text: a "#n N" header, then one "i j value" line per unordered
/// pair with i <= j, row-major, values at 17 significant digits.
void write_coordinate(std::ostream& out, const SparseSymMatrixd& m);

/// Accepts either orientation of a pair but rejects a pair given twice.
SparseSymMatrixd read_coordinate(std::istream& in);

}  // namespace nucspar
