#pragma once

// Classification of a period matrix A as rational, Liouville or Diophantine.
//
// delta(xi) = min over eta in Z^d of |eta + A xi|_inf. A rational witness is a
// nonzero xi with delta(xi) = 0. Witness order: smallest |xi|_inf, then first
// nonzero component positive, then lexicographic.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ghlab/numbers.hpp"
#include "ghlab/period_matrix.hpp"

namespace ghlab {

struct RationalWitness {
  std::vector<BigInt> xi;
  bool exact = false;    // decided by integer linear algebra, no radius limit
  bool minimal = true;   // first in witness order; false when the enumeration cap was hit
};

/// Exact when every entry that can carry xi_k != 0 is rational or quadratic;
/// otherwise scans |xi|_inf <= radius. Throws Indeterminate on a near-hit that
/// involves a non-exact entry.
std::optional<RationalWitness> find_rational_witness(const PeriodMatrix& A, long radius,
                                                     unsigned bits = kDefaultPrecisionBits);

/// Aggregate of a brute scan. q_delta is |xi|_inf * delta(xi).
struct DcSummary {
  long radius = 0;
  unsigned precision_bits = 0;
  std::size_t count = 0;
  double rho_hat = 0.0;
  std::vector<long> rho_at;
  double min_q_delta = 0.0;
  std::vector<long> min_q_delta_at;
  long tail_from = 0;  // ceil(sqrt(radius))
  double tail_min_q_delta = 0.0;
  std::vector<long> tail_min_at;
};

struct DcRow {
  std::vector<long> xi;
  std::vector<BigInt> eta;  // nearest lattice point to -A xi
  double delta = 0.0;
  double log_delta = 0.0;   // natural log, finite for delta > 0
};

struct DcScan {
  std::vector<DcRow> rows;  // ordered by |xi|_inf, then lexicographically
  DcSummary summary;
};

/// Every xi with 0 < |xi|_inf <= R. rho_hat = max -log delta / log(|xi| + |eta|)
/// over rows where the denominator is positive. Throws RationalInsideRadius.
DcScan dc_scan(const PeriodMatrix& A, long R, unsigned bits = kDefaultPrecisionBits, unsigned threads = 0);

/// xi_j in Z^m and p_j in Z^d for j = 1..J.
struct LiouvilleWitness {
  std::vector<std::vector<BigInt>> xi;
  std::vector<std::vector<BigInt>> p;
};

struct LiouvilleCheck {
  bool ok = false;
  std::size_t verified = 0;        // largest J' with all j <= J' passing
  std::size_t first_failing = 0;   // 0 when ok
  std::vector<double> lhs;         // per j, compared against C
  double margin = 0.0;             // min_j (C - lhs_j)
  unsigned precision_bits = 0;     // largest precision used
};

/// m = 1: |x_l - p_{j,l}/q_j|_inf <= C / q_j^j. General m:
/// |xi_j|^j |A xi_j - p_j|_inf <= C. Checked for j = 1..J with precision
/// raised per j to resolve q_j^{j+1}.
LiouvilleCheck verify_liouville_witness(const PeriodMatrix& A, const LiouvilleWitness& w, const BigRational& C,
                                        std::size_t J, unsigned bits = kDefaultPrecisionBits);

/// For a column whose entries are constructed Liouville numbers sharing base
/// and schedule, or integers: xi_j = q_j e_k and p_j from the partial sums.
std::optional<LiouvilleWitness> liouville_witness_from_column(const PeriodMatrix& A, std::size_t k, std::size_t J);

struct GapResult {
  double gap = 0.0;
  std::size_t row = 0;
  double dist = 0.0;  // dist(xi . a_row, Z)
};

/// max_l |1 - exp(2 pi i xi . a_l)| = 2 |sin(pi dist(xi . a_l, Z))|.
GapResult dc_equiv_gap(const PeriodMatrix& A, const std::vector<long>& xi, unsigned bits = kDefaultPrecisionBits);

enum class Verdict { Rational, Liouville, DiophantineCertified, Empirical };
std::string verdict_name(Verdict v);

struct Pivot {
  std::size_t column = 0;
  std::size_t row = 0;
  BigInt c;                 // common denominator of the other row entries
  BigInt max_quotient;      // bound on partial quotients of c * A(row, column)
};

struct DiophantineCertificate {
  double rho = 1.0;
  BigRational C;
  std::vector<Pivot> pivots;
  std::string basis;
};

struct LiouvilleVerdict {
  std::size_t column = 0;
  LiouvilleWitness witness;
  BigRational C;
  std::size_t depth = 0;
  LiouvilleCheck check;
};

struct ClassifyPolicy {
  long radius = 64;
  std::size_t depth = 4;
  unsigned precision_bits = kDefaultPrecisionBits;
  unsigned threads = 0;
};

struct Classification {
  Verdict verdict = Verdict::Empirical;
  unsigned precision_bits = 0;
  Norm norm = Norm::linf;
  std::optional<RationalWitness> rational;
  std::optional<LiouvilleVerdict> liouville;
  std::optional<DiophantineCertificate> certificate;
  std::optional<DcSummary> empirical;
  std::string diagnostic;
};

Classification classify(const PeriodMatrix& A, const ClassifyPolicy& policy = {});

/// Sign-normalised vectors with |xi|_inf == r in lexicographic order.
std::vector<std::vector<long>> shell(std::size_t m, long r);

}  // namespace ghlab
