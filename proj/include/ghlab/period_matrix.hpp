#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ghlab/numbers.hpp"

namespace ghlab {

/// d x m matrix A of normalised periods, A(l, k) = (1/2pi) * period of the
/// k-th form over the l-th generator cycle. Row-major.
class PeriodMatrix {
 public:
  PeriodMatrix(std::size_t d, std::size_t m, std::vector<NumberRepr> entries, Norm norm = Norm::linf);
  /// d x m with every entry equal to `fill`.
  static PeriodMatrix filled(std::size_t d, std::size_t m, const NumberRepr& fill);

  std::size_t rows() const { return d_; }
  std::size_t cols() const { return m_; }
  Norm norm() const { return norm_; }
  const NumberRepr& at(std::size_t l, std::size_t k) const { return entries_[l * m_ + k]; }
  void set(std::size_t l, std::size_t k, NumberRepr v) { entries_[l * m_ + k] = std::move(v); }
  const std::vector<NumberRepr>& entries() const { return entries_; }

  bool all_exact() const;  // rational or quadratic entries only
  bool all_rational() const;
  /// same entries with column k removed
  PeriodMatrix drop_column(std::size_t k) const;
  /// literal strings, row-major
  std::vector<std::vector<std::string>> literals() const;

 private:
  std::size_t d_;
  std::size_t m_;
  std::vector<NumberRepr> entries_;
  Norm norm_;
};

}  // namespace ghlab
