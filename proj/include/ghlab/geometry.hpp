#pragma once

// Model manifolds (punctured flat torus, disk), their generator cycles, closed
// 1-forms given as cohomology coefficients plus an exact part, path
// quadrature and potentials on the abelian cover.
//
// Torus chart: lift coordinates in R^2, period 2pi in each direction, puncture
// disk of radius r centred at c (and its translates). The basis closed forms
// are dtheta_l = dt_l. Cover points are (t, w) with lift coordinate t + 2pi w.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ghlab/expr.hpp"
#include "ghlab/numbers.hpp"
#include "ghlab/period_matrix.hpp"
#include "ghlab/quadrature.hpp"

namespace ghlab {

using Point = std::array<double, 2>;

/// Parametric path s in [0, 1] -> chart, components are expressions in `s`.
class Path {
 public:
  Path(Expr x1, Expr x2);
  static Path segment(const Point& a, const Point& b);
  static VariableSet parameter();  // {"s"}

  Point at(double s) const;
  Point velocity(double s) const;
  const Expr& component(std::size_t i) const { return x_[i]; }

 private:
  std::array<Expr, 2> x_;
  std::array<Program, 2> p_;
  std::array<Program, 2> dp_;
};

struct Cycle {
  std::string name;
  Path path;
  Point base;
  std::vector<long> winding;  // against the generator basis
};

enum class ManifoldKind { PuncturedTorus, Disk };

/// Uniform core grid: node (i, j) sits at origin + h*(i, j) for
/// i, j in [lo, hi]; masked nodes lie outside the compact core.
struct CoreGrid {
  std::size_t n = 0;  // nodes per axis
  long lo = 0;
  double h = 0.0;
  Point origin{};
  std::vector<unsigned char> in_core;  // n*n, row-major in (i, j) -> (i - lo) * n + (j - lo)

  std::size_t flat(long i, long j) const {
    return static_cast<std::size_t>(i - lo) * n + static_cast<std::size_t>(j - lo);
  }
  Point node(long i, long j) const { return {origin[0] + h * i, origin[1] + h * j}; }
  bool active(long i, long j) const { return in_core[flat(i, j)] != 0; }
  long hi() const { return lo + static_cast<long>(n) - 1; }
  std::size_t active_count() const;
};

class ModelManifold {
 public:
  static ModelManifold punctured_torus(double c1, double c2, double r);
  static ModelManifold disk(double radius);

  ManifoldKind kind() const { return kind_; }
  std::string kind_name() const;
  /// number of generator cycles
  std::size_t d() const { return kind_ == ManifoldKind::PuncturedTorus ? 2 : 0; }
  const Point& puncture() const { return c_; }
  double puncture_radius() const { return r_; }
  double disk_radius() const { return R_; }

  /// distance to the excluded set (puncture translates or disk boundary)
  double clearance(const Point& t) const;
  bool in_core(const Point& t) const;
  /// default base point: antipode of the puncture, or the disk centre
  Point default_basepoint() const;

  /// Generators sigma_l(s) = t0 + 2pi s e_l, requiring clearance >= 1.5r.
  std::vector<Cycle> cycles(const Point& t0) const;
  CoreGrid core_grid(std::size_t g, const Point& t0) const;
  /// Reduce t to the chart centred at t0, returning the winding shift.
  Point reduce(const Point& t, const Point& t0, std::vector<long>* winding) const;

 private:
  ModelManifold() = default;
  ManifoldKind kind_ = ManifoldKind::Disk;
  Point c_{};
  double r_ = 0.0;
  double R_ = 0.0;
};

/// omega = sum_l lambda_l dtheta_l + dv.
class ClosedOneForm {
 public:
  ClosedOneForm(std::vector<NumberRepr> lambda, Expr v);

  const std::vector<NumberRepr>& lambda() const { return lambda_; }
  const Expr& exact_part() const { return v_; }
  std::vector<double> lambda_double() const;

  /// omega_i = lambda_i + d_i v as an expression in (t1, t2)
  Expr component(std::size_t i) const;
  /// values of (omega_1, omega_2) at t
  Point at(const Point& t) const;
  /// psi(X) = lambda . X + v(X) in lift coordinates (d psi = omega).
  double potential(const Point& x) const;
  /// symbolic d_1 omega_2 - d_2 omega_1
  Expr curl() const;

  /// a * this + b * other (exact in lambda)
  ClosedOneForm combine(const BigRational& a, const ClosedOneForm& other, const BigRational& b) const;

 private:
  std::vector<NumberRepr> lambda_;
  Expr v_;
  std::array<Expr, 2> comp_;
  std::array<Program, 2> comp_p_;
  Program v_p_;
  std::vector<double> lambda_d_;
};

/// Throws DomainViolation if omega is not closed within 1e-10 on a 64^2 grid,
/// or if the exact part is not 2pi-periodic on the torus.
void validate_form(const ClosedOneForm& w, const ModelManifold& M);

/// Composite Gauss-Legendre for the integral of omega along a path.
QuadratureResult integrate_over_path(const ClosedOneForm& w, const Path& p, std::size_t panels, int order = 8);
/// Doubles the panel count from `panels` until the Richardson pair agrees to
/// 1e-10; throws QuadratureNotConverged past 4096 panels.
QuadratureResult integrate_converged(const ClosedOneForm& w, const Path& p, std::size_t panels = 8, int order = 8);

struct PeriodResult {
  PeriodMatrix exact;                     // A(l, k) = lambda_{l k}
  std::vector<std::vector<double>> quad;  // (1/2pi) * quadrature periods, d x m
  double max_deviation = 0.0;             // max |exact - quad|
};

PeriodResult period_matrix(const std::vector<ClosedOneForm>& forms, const ModelManifold& M, const Point& t0);

struct Integrality {
  bool integral = false;
  bool exact = false;
  std::vector<double> periods;  // quadrature periods over the generators
  std::string evidence;
};

/// True iff every generator period lies in 2pi Z.
Integrality is_integral(const ClosedOneForm& w, const ModelManifold& M, const Point& t0);

struct CoverPoint {
  Point t{};
  std::vector<long> w;
};

struct LiftResult {
  double value = 0.0;      // along the primary path
  double alternate = 0.0;  // along the homotopic alternative
  double analytic = 0.0;   // from the closed-form potential
};

/// psi(to) - psi(from): L-shaped chart paths through t0 plus winding times
/// the generator periods. Throws QuadratureNotConverged if the two paths
/// disagree beyond 1e-10.
LiftResult lift_potential(const ClosedOneForm& w, const ModelManifold& M, const Point& t0, const CoverPoint& from,
                          const CoverPoint& to);

/// L-shaped chart path from a to b: first along axis `first`, then the other.
std::vector<Path> l_path(const Point& a, const Point& b, int first = 0);

}  // namespace ghlab
