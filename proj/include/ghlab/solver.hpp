#pragma once

// Mode-by-mode solution of L u = f with L u = d_t u + sum_k omega_k ^ d_{x_k} u.
// On the Fourier side d_t u_xi + i (xi . omega) u_xi = f_xi, so with
// psi_xi = sum_k xi_k psi_k and d psi_k = omega_k on the cover,
//   d(exp(i psi_xi) u_xi) = exp(i psi_xi) f_xi.
// Going once around sigma_l from Q0 to Q_l gives the base value
//   u_xi(t0) = int_{sigma_l} exp(i psi_xi) f_xi / (exp(i psi_xi(Q_l)) - exp(i psi_xi(Q0))),
// and the extension u_xi(t) = exp(-i psi_xi(t)) (exp(i psi_xi(t0)) u_xi(t0) + int_{t0}^t exp(i psi_xi) f_xi).

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghlab/diophantine.hpp"
#include "ghlab/expr.hpp"
#include "ghlab/fourier.hpp"
#include "ghlab/geometry.hpp"

namespace ghlab {

/// Scalar field as a finite Fourier sum: xi -> coefficient in (t1, t2).
using FourierSum = std::map<Frequency, ComplexExpr>;
/// One-form valued coefficients f_xi = c[0] dt1 + c[1] dt2.
using FormCoefficient = std::array<ComplexExpr, 2>;
using FormSum = std::map<Frequency, FormCoefficient>;

/// f_xi = d v_xi + i (xi . omega) v_xi, symbolically.
FormSum apply_L(const FourierSum& v, const std::vector<ClosedOneForm>& forms);

/// d_xi f = d_1 f_2 - d_2 f_1 + i (xi . omega_1 f_2 - xi . omega_2 f_1).
ComplexExpr twisted_curl(const FormCoefficient& f, const Frequency& xi, const std::vector<ClosedOneForm>& forms);

struct Compatibility {
  bool ok = false;
  double curl_max = 0.0;        // over the active core grid
  std::vector<double> periods;  // |period| of f_0 over each generator (xi = 0 only)
};

/// Twisted closedness on the core grid within 1e-9 (scaled by the size of the
/// terms); for xi = 0 also vanishing generator periods.
Compatibility check_compatibility(const FormCoefficient& f, const Frequency& xi, const std::vector<ClosedOneForm>& forms,
                                  const ModelManifold& M, const Point& t0, std::size_t grid = 64);

struct BaseValue {
  Complex value;
  std::size_t row = 0;          // chosen generator l*
  double divisor = 0.0;         // |1 - exp(2 pi i xi . a_l*)|
  std::vector<double> gaps;     // per generator
  Complex integral;             // int over sigma_l* of exp(i psi) f
  double path_length = 0.0;
  double sup_f = 0.0;           // max |f . sigma'| / |sigma'| over the quadrature nodes
  std::size_t panels = 0;
};

/// Throws NoCycles (d = 0), DivisorBelowTol (max gap < tol) or
/// QuadratureNotConverged.
BaseValue solve_coefficient_at_base(const Frequency& xi, const std::vector<ClosedOneForm>& forms,
                                    const FormCoefficient& f, const ModelManifold& M, const Point& t0,
                                    double tol = 1e-9);

struct Extension {
  std::vector<Complex> values;       // per grid node (flat), zero where not reached
  std::vector<unsigned char> reached;
  double path_check = 0.0;           // max deviation of the alternate path on the spot checks
  std::size_t spot_checks = 0;
};

/// Row through t0 first, then columns; each cell by Gauss-Legendre with panel
/// doubling. Spot-checks path independence on 10 random nodes (vertical
/// first), throwing QuadratureNotConverged beyond 1e-9.
Extension extend_coefficient(const Frequency& xi, const Complex& base, const FormCoefficient& f,
                             const std::vector<ClosedOneForm>& forms, const ModelManifold& M, const CoreGrid& grid,
                             unsigned seed = 0);

struct Scenario {
  explicit Scenario(ModelManifold M) : manifold(std::move(M)) {}

  std::string name;
  ModelManifold manifold;
  std::size_t m = 1;
  long xi_max = 8;
  std::vector<ClosedOneForm> forms;
  FormSum rhs;
  std::optional<FourierSum> manufactured;  // when set, rhs = apply_L(manufactured)
  double tol = 1e-9;
  std::size_t grid = 64;
  std::optional<Point> basepoint;

  Point base() const { return basepoint ? *basepoint : manifold.default_basepoint(); }
};

enum class Conclusion { GhConsistent, NotGhDemonstrated, Inconclusive };
std::string conclusion_name(Conclusion c);

struct DivisorRow {
  Frequency xi;
  std::size_t row = 0;
  double divisor = 0.0;
  double gap = 0.0;  // dc_equiv_gap(A, xi)
  double base_abs = 0.0;
  double growth_bound = 0.0;
};

struct ModeError {
  Frequency xi;
  std::string kind;
  std::string message;
};

struct GHVerdict {
  Classification classification;
  std::optional<DecayReport> decay;
  std::string decay_error;
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string reason;
  std::vector<DivisorRow> divisors;
};

struct SolveOptions {
  unsigned threads = 0;
  ClassifyPolicy classify;
  DecayThresholds decay{.floor = 1e-14};
};

struct SolveResult {
  FourierSide u;
  CoreGrid grid;
  GHVerdict verdict;
  PeriodResult periods;
  std::vector<ModeError> errors;
  double path_check = 0.0;  // worst alternate-path deviation
};

/// Classifies, solves every mode with |xi|_inf <= xi_max and reports.
/// GH_CONSISTENT iff the classification is Diophantine (certified or
/// empirical), every mode solved and the decay verdict is RAPID;
/// NOT_GH_DEMONSTRATED iff it is Rational or Liouville; else INCONCLUSIVE.
SolveResult solve(const Scenario& s, const SolveOptions& opt = {});

/// Period matrix A(l, k) = lambda_{k, l} of the forms, exact.
PeriodMatrix lambda_matrix(const std::vector<ClosedOneForm>& forms, const ModelManifold& M);

/// psi_xi(X) = sum_k xi_k psi_k(X) in lift coordinates.
double twisted_potential(const Frequency& xi, const std::vector<ClosedOneForm>& forms, const Point& X);

}  // namespace ghlab
