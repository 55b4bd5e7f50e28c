#include "ghlab/intlinalg.hpp"

#include <utility>

#include "ghlab/errors.hpp"

namespace ghlab {

namespace {

// columns a, b <- (s a + t b, -(b_i/g) a + (a_i/g) b) keeps det = 1
void combine_columns(IntMatrix& M, std::size_t a, std::size_t b, const BigInt& s, const BigInt& t, const BigInt& u,
                     const BigInt& v) {
  for (auto& row : M) {
    BigInt x = s * row[a] + t * row[b];
    BigInt y = u * row[a] + v * row[b];
    row[a] = std::move(x);
    row[b] = std::move(y);
  }
}

}  // namespace

ColumnEchelon column_echelon(const IntMatrix& G, std::size_t cols) {
  for (const auto& row : G)
    if (row.size() != cols) throw InvalidArgument("integer matrix rows must have equal length");
  ColumnEchelon out;
  out.H = G;
  out.U.assign(cols, IntVector(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) out.U[i][i] = 1;

  std::size_t pivot = 0;
  for (std::size_t r = 0; r < out.H.size() && pivot < cols; ++r) {
    for (std::size_t c = pivot + 1; c < cols; ++c) {
      const BigInt a = out.H[r][pivot];
      const BigInt b = out.H[r][c];
      if (b == 0) continue;
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const BigInt u = -b / g, v = a / g;
      combine_columns(out.H, pivot, c, s, t, u, v);
      combine_columns(out.U, pivot, c, s, t, u, v);
    }
    if (out.H[r][pivot] != 0) {
      if (out.H[r][pivot] < 0) {
        for (auto& row : out.H) row[pivot] = -row[pivot];
        for (auto& row : out.U) row[pivot] = -row[pivot];
      }
      ++pivot;
    }
  }
  out.rank = pivot;
  return out;
}

std::vector<IntVector> integer_kernel(const IntMatrix& G, std::size_t cols) {
  const ColumnEchelon e = column_echelon(G, cols);
  std::vector<IntVector> basis;
  for (std::size_t c = e.rank; c < cols; ++c) {
    IntVector v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = e.U[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

IntVector multiply(const IntMatrix& G, const IntVector& x) {
  IntVector y(G.size(), 0);
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += G[i][j] * x[j];
  return y;
}

}  // namespace ghlab
