#include "ghlab/period_matrix.hpp"

#include "ghlab/errors.hpp"

namespace ghlab {

PeriodMatrix::PeriodMatrix(std::size_t d, std::size_t m, std::vector<NumberRepr> entries, Norm norm)
    : d_(d), m_(m), entries_(std::move(entries)), norm_(norm) {
  if (m_ < 1) throw InvalidArgument("period matrix needs m >= 1 columns");
  if (entries_.size() != d_ * m_) throw InvalidArgument("period matrix entry count does not match d x m");
}

PeriodMatrix PeriodMatrix::filled(std::size_t d, std::size_t m, const NumberRepr& fill) {
  return PeriodMatrix(d, m, std::vector<NumberRepr>(d * m, fill));
}

bool PeriodMatrix::all_exact() const {
  for (const auto& e : entries_)
    if (!e.is_algebraic_exact()) return false;
  return true;
}

bool PeriodMatrix::all_rational() const {
  for (const auto& e : entries_)
    if (!e.is_rational()) return false;
  return true;
}

PeriodMatrix PeriodMatrix::drop_column(std::size_t k) const {
  if (m_ < 2) throw InvalidArgument("cannot drop the only column");
  std::vector<NumberRepr> out;
  for (std::size_t l = 0; l < d_; ++l)
    for (std::size_t j = 0; j < m_; ++j)
      if (j != k) out.push_back(at(l, j));
  return PeriodMatrix(d_, m_ - 1, std::move(out), norm_);
}

std::vector<std::vector<std::string>> PeriodMatrix::literals() const {
  std::vector<std::vector<std::string>> out(d_);
  for (std::size_t l = 0; l < d_; ++l)
    for (std::size_t k = 0; k < m_; ++k) out[l].push_back(at(l, k).literal());
  return out;
}

}  // namespace ghlab
