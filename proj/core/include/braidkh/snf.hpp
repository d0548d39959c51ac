#pragma once

#include <cstdint>
#include <vector>

#include "braidkh/laurent.hpp"

namespace braidkh {

struct Triplet {
  int row = 0;
  int col = 0;
  std::int64_t value = 0;
};

/// Integer matrix in coordinate form; duplicate coordinates are summed.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Triplet> entries;
};

using DenseMatrix = std::vector<std::vector<BigInt>>;

/// Nonzero invariant factors d1 | d2 | ... (all positive). Unit pivots are
/// eliminated sparsely first; the remainder goes through a dense
/// smallest-pivot reduction in 64-bit arithmetic, redone with big integers
/// if anything overflows.
std::vector<BigInt> smith_normal_form(const SparseMatrix& m);
std::vector<BigInt> smith_normal_form(const DenseMatrix& m);

}  // namespace braidkh
