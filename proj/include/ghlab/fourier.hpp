#pragma once

// Partial Fourier series in the torus variables x in T^m:
//   u(t, x) = sum_xi u_xi(t) exp(i xi . x),  u_xi(t) = (2pi)^{-m} int exp(-i xi . x) u(t, x) dx.
// Coefficients are sampled on a list of chart nodes t.

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace ghlab {

using Complex = std::complex<double>;
using Frequency = std::vector<long>;

/// u(t_p, x_k) on chart nodes t_p and the uniform torus grid x_k = 2pi k / n
/// (n per axis); values[p * n^m + flat(k)], k row-major with axis 0 slowest.
struct TorusSamples {
  std::size_t m = 1;
  std::size_t n = 0;
  std::vector<std::array<double, 2>> nodes;
  std::vector<Complex> values;

  std::size_t torus_size() const;
};

class FourierSide {
 public:
  FourierSide(std::size_t m, long xi_max, std::vector<std::array<double, 2>> nodes);

  std::size_t m() const { return m_; }
  long xi_max() const { return xi_max_; }
  const std::vector<std::array<double, 2>>& nodes() const { return nodes_; }
  /// Stored frequencies in lexicographic order; absent ones are zero.
  const std::map<Frequency, std::vector<Complex>>& coefficients() const { return coef_; }

  /// Throws InvalidArgument when |xi|_inf > xi_max or the sample count differs.
  void set(const Frequency& xi, std::vector<Complex> samples);
  /// Zero samples when absent.
  std::vector<Complex> get(const Frequency& xi) const;
  bool has(const Frequency& xi) const { return coef_.count(xi) != 0; }

  /// max over stored xi and nodes of |coef(-xi) - conj(coef(xi))|
  double hermitian_residual() const;
  /// max |a - b| over the union of stored frequencies
  friend double max_abs_difference(const FourierSide& a, const FourierSide& b);

 private:
  std::size_t m_;
  long xi_max_;
  std::vector<std::array<double, 2>> nodes_;
  std::map<Frequency, std::vector<Complex>> coef_;
};

/// Discrete transform over the torus axes at every node, keeping |xi|_inf <=
/// xi_max. Throws GridTooCoarse when n < 2 xi_max + 1.
FourierSide partial_fourier(const TorusSamples& u, long xi_max, unsigned threads = 0);

/// Inverse transform onto an n^m torus grid. Throws GridTooCoarse when
/// n < 2 xi_max + 1.
TorusSamples synthesize(const FourierSide& F, std::size_t n, unsigned threads = 0);

enum class DecayKind { Rapid, Poly, None };
std::string decay_kind_name(DecayKind k);

struct DecayThresholds {
  std::vector<int> orders{2, 4, 8};  // tail domination exponents N
  double none_factor = 0.5;          // block maxima kept above this fraction
  double lacunary_step = 0.25;       // minimal growth of the effective order
  std::size_t lacunary_points = 3;
  double floor = 0.0;                // S(r) <= floor counts as zero
};

/// S(r) = max over |xi|_inf = r of sup_t |coef|; shells maps r -> S(r).
///
/// Rules, in order, over the support r_1 < r_2 < ... of S above the floor:
///   NONE  every nonempty dyadic block (2^{k-1}, 2^k] has max S >= none_factor * S(r_1);
///   RAPID dense data (every shell of [xi_max/8, xi_max] stored): for every N,
///         max_{[xi_max/4, xi_max]} S(r)(1+r)^N <= max_{[xi_max/8, xi_max/4]} S(r)(1+r)^N;
///         otherwise (lacunary): effective order -log S(r) / log(1 + r) grows by at
///         least lacunary_step across the last lacunary_points support shells;
///   POLY  otherwise, alpha = minus the least-squares slope of log S on log r
///         over the support in [xi_max/8, xi_max].
struct DecayReport {
  long xi_max = 0;
  std::map<long, double> shells;
  DecayKind verdict = DecayKind::None;
  double alpha = 0.0;
  bool dense = false;
  std::string rule;
  DecayThresholds thresholds;
};

/// Throws InsufficientShells when xi_max < 8 or the support has fewer than
/// three shells.
DecayReport decay_report(const FourierSide& F, const DecayThresholds& thresholds = {});
DecayReport decay_from_shells(long xi_max, std::map<long, double> shells, const DecayThresholds& thresholds = {});

/// S(r) table of F.
std::map<long, double> shell_maxima(const FourierSide& F);

}  // namespace ghlab
