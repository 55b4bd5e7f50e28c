#pragma once

// Explicit singular solutions of L u = f with f smooth and u not smooth.
// Rational kind: theta = xi0 . omega is integral, psi its chart potential and
//   u = sum_{j=1..Xi} exp(i j psi(t)) exp(-i j xi0 . x),  L u = 0 termwise.
// Liouville kind: theta_j = p_j . dtheta + xi_j . dv integral, psi_j = p_j . t + xi_j . v and
//   u = sum_j exp(i psi_j(t)) exp(-i xi_j . x),  L u = -i sum_j (xi_j . omega - theta_j) exp(i psi_j) exp(-i xi_j . x).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ghlab/diophantine.hpp"
#include "ghlab/fourier.hpp"
#include "ghlab/geometry.hpp"

namespace ghlab {

enum class SingularKind { Rational, Liouville };
std::string singular_kind_name(SingularKind k);

struct SingularTerm {
  Frequency xi;   // torus frequency of the term
  Expr phase;     // psi_j(t) in chart coordinates
  std::vector<BigInt> p;  // integral periods of d phase (Liouville kind)
  double rhs_sup = 0.0;   // sup over the core of the L u coefficient (Liouville kind)
  double rhs_bound = 0.0; // C |xi_j|^{1 - j}
};

struct CoverCheck {
  bool ok = false;
  std::size_t pairs = 0;
  double max_deviation = 0.0;  // max |exp(i (psi(P) - psi(Q))) - 1|
};

/// exp(i psi) agreement over `pairs` random cover-point pairs above the same
/// chart point (random windings in [-3, 3]^d), within 1e-9.
CoverCheck cover_check(const ClosedOneForm& theta, const ModelManifold& M, const Point& t0, std::size_t pairs = 50,
                       unsigned seed = 1);

struct SingularSolution {
  SingularKind kind = SingularKind::Rational;
  Frequency direction;                    // xi0 (rational kind)
  std::optional<LiouvilleWitness> witness;
  std::size_t truncation = 0;             // Xi or J
  std::vector<SingularTerm> terms;        // |xi|_inf strictly increasing

  CoverCheck cover;
  double residual = 0.0;        // rational: max |L u| termwise on the core grid
  double formula_residual = 0.0;  // liouville: max |L(term) - stated rhs| / (1 + |xi_j|) on the grid
  double unimodular_deviation = 0.0;  // max | |u coefficient| - 1 |
  bool transform_checked = false;     // u coefficients went through synthesize + partial_fourier
  bool rhs_ok = true;                 // every rhs_sup <= rhs_bound (exact at 400 bits)
  std::size_t grid = 0;

  std::optional<FourierSide> u;
  std::optional<FourierSide> Lu;  // liouville: dominant dtheta component of each rhs coefficient
  std::optional<DecayReport> u_decay;
  std::optional<DecayReport> Lu_decay;
};

/// Requires xi0 . omega integral (NotIntegral otherwise) and a passing cover
/// check. `terms` is the truncation Xi.
SingularSolution build_rational(const std::vector<ClosedOneForm>& forms, const ModelManifold& M, const Point& t0,
                                const Frequency& xi0, std::size_t terms, std::size_t grid = 64, unsigned threads = 0);

/// Requires verify_liouville_witness(A, w, C, J) (WitnessRejected otherwise);
/// rhs bounds are decided on 400-bit enclosures.
SingularSolution build_liouville(const std::vector<ClosedOneForm>& forms, const ModelManifold& M, const Point& t0,
                                 const LiouvilleWitness& w, std::size_t J, const BigRational& C = BigRational(2),
                                 std::size_t grid = 64);

}  // namespace ghlab
