#pragma once

// Integer linear algebra over arbitrary-precision integers.

#include <cstddef>
#include <vector>

#include "ghlab/numbers.hpp"

namespace ghlab {

using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;  // row-major, all rows of equal length

struct ColumnEchelon {
  IntMatrix H;  // G * U, lower echelon; columns >= rank are zero
  IntMatrix U;  // unimodular, n x n
  std::size_t rank = 0;
};

/// Column-style echelon form by extended-gcd column operations.
ColumnEchelon column_echelon(const IntMatrix& G, std::size_t cols);

/// Basis of {x in Z^n : G x = 0}, one vector per kernel direction.
std::vector<IntVector> integer_kernel(const IntMatrix& G, std::size_t cols);

IntVector multiply(const IntMatrix& G, const IntVector& x);

}  // namespace ghlab
