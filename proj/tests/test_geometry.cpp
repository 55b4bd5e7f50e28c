#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ghlab/errors.hpp"
#include "ghlab/geometry.hpp"
#include "support/oracle.hpp"

using namespace ghlab;

namespace {

constexpr double kPi = std::numbers::pi;
const VariableSet kVars = VariableSet::chart(2);

ModelManifold torus() { return ModelManifold::punctured_torus(1.0, 1.5, 0.3); }

ClosedOneForm form(NumberRepr l1, NumberRepr l2, const char* v = "0") {
  return ClosedOneForm({std::move(l1), std::move(l2)}, parse_expr(v, kVars));
}

NumberRepr R(long p, long q = 1) { return NumberRepr::rational(p, q); }

Path perturbed_loop(const Point& t0, std::size_t l, double eps, int k1, int k2) {
  const Expr s = Expr::var(0);
  const Expr two_pi_s = Expr::constant(2 * kPi) * s;
  auto wiggle = [&](double amp, int k) { return Expr::constant(amp) * sin(Expr::constant(2 * kPi * k) * s); };
  Expr x = Expr::constant(t0[0]) + wiggle(eps, k1);
  Expr y = Expr::constant(t0[1]) + wiggle(-eps, k2);
  if (l == 0) x = x + two_pi_s;
  if (l == 1) y = y + two_pi_s;
  return Path(x, y);
}

}  // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2k-1 exactly") {
  for (int k : {4, 8, 16}) {
    const auto& r = gauss_legendre(k);
    double wsum = 0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int deg = 0; deg <= 2 * k - 1; ++deg) {
      const double got = integrate_composite<double>([&](double x) { return std::pow(x, deg); }, -1.0, 1.0, 1, r);
      const double want = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      CHECK(got == doctest::Approx(want).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(5), InvalidArgument);
}

TEST_CASE("integrate_over_path examples") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const auto cyc = M.cycles(t0);
  REQUIRE(cyc.size() == 2);
  CHECK(integrate_converged(form(R(1), R(0)), cyc[0].path).value == doctest::Approx(2 * kPi).epsilon(1e-14));
  const auto exact = form(R(0), R(0), "sin(t1)*sin(t2)");
  for (const auto& c : cyc) CHECK(std::fabs(integrate_converged(exact, c.path).value) <= 1e-12);
  const auto half = form(R(1, 2), R(0), "sin(t1)*sin(t2)");
  const double a = integrate_over_path(half, cyc[0].path, 8).value;
  const double b = integrate_over_path(half, cyc[0].path, 16).value;
  const double c = integrate_over_path(half, cyc[0].path, 32).value;
  CHECK(std::fabs(a - b) <= 1e-12);
  CHECK(std::fabs(b - c) <= 1e-12);
  CHECK(c == doctest::Approx(kPi).epsilon(1e-13));
  const auto r = integrate_over_path(half, cyc[0].path, 1, 4);
  CHECK(r.coarse != r.fine);
  CHECK_FALSE(r.converged);
}

TEST_CASE("quadrature reports non-convergence") {
  const ModelManifold M = torus();
  // extremely oscillatory exact part: quadrature cannot resolve it
  const auto wild = form(R(0), R(0), "exp(sin(30000*t1 + 0.3))");
  CHECK_THROWS_AS(integrate_converged(wild, M.cycles(M.default_basepoint())[0].path, 1, 4), QuadratureNotConverged);
  try {
    integrate_converged(wild, M.cycles(M.default_basepoint())[0].path, 1, 4);
  } catch (const QuadratureNotConverged& e) {
    CHECK(std::isfinite(e.coarse()));
    CHECK(std::isfinite(e.fine()));
  }
}

TEST_CASE("period_matrix examples") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  auto p = period_matrix({form(R(1, 2), R(0))}, M, t0);
  CHECK(p.exact.rows() == 2);
  CHECK(p.exact.cols() == 1);
  CHECK(p.exact.at(0, 0) == R(1, 2));
  CHECK(p.exact.at(1, 0) == R(0));
  CHECK(p.max_deviation <= 1e-12);
  const NumberRepr phi = NumberRepr::golden_ratio();
  p = period_matrix({form(phi, R(0)), form(R(0), R(1))}, M, t0);
  CHECK(p.exact.at(0, 0) == phi);
  CHECK(p.exact.at(0, 1) == R(0));
  CHECK(p.exact.at(1, 0) == R(0));
  CHECK(p.exact.at(1, 1) == R(1));
  CHECK(p.quad[0][0] == doctest::Approx(phi.to_double()).epsilon(1e-13));
  const ModelManifold D = ModelManifold::disk(2.0);
  p = period_matrix({ClosedOneForm({}, parse_expr("t1*t2", kVars)), ClosedOneForm({}, parse_expr("t1", kVars))}, D,
                    D.default_basepoint());
  CHECK(p.exact.rows() == 0);
  CHECK(p.exact.cols() == 2);
}

TEST_CASE("linearity of I is exact on rational inputs (property)") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  oracle::Gen g(21);
  for (int i = 0; i < 50; ++i) {
    const auto w1 = form(R(g.integer(-9, 9), g.integer(1, 7)), R(g.integer(-9, 9), g.integer(1, 7)), "sin(t1)");
    const auto w2 = form(R(g.integer(-9, 9), g.integer(1, 7)), R(g.integer(-9, 9), g.integer(1, 7)), "cos(t2)^2");
    const BigRational a(g.integer(-5, 5), g.integer(1, 4)), b(g.integer(-5, 5), g.integer(1, 4));
    const auto combo = period_matrix({w1.combine(a, w2, b)}, M, t0);
    const auto A1 = period_matrix({w1}, M, t0);
    const auto A2 = period_matrix({w2}, M, t0);
    for (std::size_t l = 0; l < 2; ++l) {
      const NumberRepr want = a * A1.exact.at(l, 0) + b * A2.exact.at(l, 0);
      CHECK(combo.exact.at(l, 0) == want);
      CHECK(combo.quad[l][0] == doctest::Approx(want.to_double()).epsilon(1e-11));
    }
  }
}

TEST_CASE("is_integral examples and integral shift") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  CHECK(is_integral(form(R(2), R(0)), M, t0).integral);
  CHECK_FALSE(is_integral(form(R(1, 2), R(0)), M, t0).integral);
  CHECK(is_integral(form(R(0), R(0), "sin(t1)*sin(t2)"), M, t0).integral);
  CHECK_FALSE(is_integral(form(NumberRepr::golden_ratio(), R(0)), M, t0).integral);
  oracle::Gen g(4);
  const char* vs[] = {"sin(t1)", "cos(t1 + t2)*sin(t2)", "exp(sin(t1))", "1/(2 + cos(t2))"};
  for (int i = 0; i < 40; ++i) {
    const NumberRepr l1 = R(g.integer(-6, 6), g.integer(1, 3));
    const NumberRepr l2 = R(g.integer(-6, 6), g.integer(1, 3));
    const bool base = is_integral(form(l1, l2), M, t0).integral;
    const auto shifted = is_integral(form(l1, l2, vs[i % 4]), M, t0);
    CHECK(base == shifted.integral);
    for (std::size_t l = 0; l < 2; ++l)
      CHECK(shifted.periods[l] == doctest::Approx(2 * kPi * (l == 0 ? l1 : l2).to_double()).epsilon(1e-12));
  }
  CHECK(is_integral(ClosedOneForm({}, parse_expr("t1", kVars)), ModelManifold::disk(1), {0, 0}).integral);
}

TEST_CASE("cycles: closure, winding and clearance") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  for (const auto& c : M.cycles(t0)) {
    const Point a = c.path.at(0), b = c.path.at(1);
    std::vector<long> w{0, 0};
    const Point rb = M.reduce(b, t0, &w);
    CHECK(std::hypot(rb[0] - a[0], rb[1] - a[1]) <= 1e-14);
    CHECK(w == c.winding);
    for (int i = 0; i <= 100; ++i) CHECK(M.clearance(c.path.at(i / 100.0)) >= 0.5 * M.puncture_radius());
  }
  // a base point a little above the puncture makes sigma_1 pass too close
  CHECK_THROWS_AS(M.cycles({2.0, 1.5 + 0.35}), InvalidArgument);
  CHECK(ModelManifold::disk(1.0).cycles({0, 0}).empty());
  CHECK_THROWS_AS(ModelManifold::punctured_torus(0.0, 1.0, 0.2), InvalidArgument);
  CHECK_THROWS_AS(ModelManifold::punctured_torus(1.0, 1.0, 3.0), InvalidArgument);
}

TEST_CASE("core grid masks the puncture") {
  const ModelManifold M = torus();
  const auto grid = M.core_grid(64, M.default_basepoint());
  CHECK(grid.n == 64);
  std::size_t outside = 0;
  for (long i = grid.lo; i <= grid.hi(); ++i)
    for (long j = grid.lo; j <= grid.hi(); ++j) {
      const Point p = grid.node(i, j);
      CHECK(static_cast<bool>(grid.active(i, j)) == (M.clearance(p) >= 0));
      outside += !grid.active(i, j);
    }
  // about pi r^2 / h^2 nodes fall inside the puncture
  const double expect = kPi * 0.09 / (grid.h * grid.h);
  CHECK(std::fabs(static_cast<double>(outside) - expect) < 0.3 * expect + 4);
  const auto dg = ModelManifold::disk(2.0).core_grid(32, {0, 0});
  CHECK(dg.n == 33);
  CHECK(dg.active(0, 0));
  CHECK_FALSE(dg.active(dg.lo, dg.lo));
}

TEST_CASE("homotopy invariance on 100 perturbed loop pairs") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const auto w = form(NumberRepr::golden_ratio(), R(-3, 7), "sin(t1)*cos(2*t2) + exp(cos(t1 - t2))");
  oracle::Gen g(8);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t l = static_cast<std::size_t>(i % 2);
    const Path a = perturbed_loop(t0, l, g.real(0, 0.4), static_cast<int>(g.integer(1, 3)), static_cast<int>(g.integer(1, 3)));
    const Path b = perturbed_loop(t0, l, g.real(0, 0.4), static_cast<int>(g.integer(1, 3)), static_cast<int>(g.integer(1, 3)));
    for (int k = 0; k <= 64; ++k) {
      REQUIRE(M.clearance(a.at(k / 64.0)) > 0);
      REQUIRE(M.clearance(b.at(k / 64.0)) > 0);
    }
    const double ia = integrate_converged(w, a, 16).value;
    const double ib = integrate_converged(w, b, 16).value;
    worst = std::max(worst, std::fabs(ia - ib));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("lift_potential examples") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const Point t{4.0, 5.0};
  auto r = lift_potential(form(R(1), R(0)), M, t0, {t, {0, 0}}, {t, {1, 0}});
  CHECK(r.value == doctest::Approx(2 * kPi).epsilon(1e-13));
  r = lift_potential(form(R(0), R(0), "sin(t1)*sin(t2)"), M, t0, {t, {0, 0}}, {t, {2, -1}});
  CHECK(std::fabs(r.value) <= 1e-12);
  const auto half = form(R(1, 2), R(0), "sin(t1)*sin(t2)");
  r = lift_potential(half, M, t0, {t, {0, 0}}, {t, {1, 0}});
  CHECK(r.value == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(std::fabs(r.value - r.alternate) <= 1e-10);
  // against the closed-form potential, between different chart points
  oracle::Gen g(13);
  for (int i = 0; i < 50; ++i) {
    CoverPoint a{{g.real(0, 2 * kPi), g.real(0, 2 * kPi)}, {g.integer(-2, 2), g.integer(-2, 2)}};
    CoverPoint b{{g.real(0, 2 * kPi), g.real(0, 2 * kPi)}, {g.integer(-2, 2), g.integer(-2, 2)}};
    if (!M.in_core(a.t) || !M.in_core(b.t)) continue;
    r = lift_potential(half, M, t0, a, b);
    CHECK(r.value == doctest::Approx(r.analytic).epsilon(1e-11));
  }
  CHECK_THROWS_AS(lift_potential(half, M, t0, {{1.0, 1.5}, {0, 0}}, {t, {0, 0}}), InvalidArgument);
}

TEST_CASE("cover single-valuedness: integral iff lift differences lie in 2pi Z") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  oracle::Gen g(99);
  auto phase_ok = [&](const ClosedOneForm& w) {
    int agree = 0, total = 0;
    while (total < 100) {
      const Point t{g.real(0, 2 * kPi), g.real(0, 2 * kPi)};
      if (!M.in_core(t)) continue;
      const std::vector<long> dw{g.integer(-2, 2), g.integer(-2, 2)};
      if (dw[0] == 0 && dw[1] == 0) continue;
      const double v = lift_potential(w, M, t0, {t, {0, 0}}, {t, dw}).value / (2 * kPi);
      agree += std::fabs(v - std::round(v)) <= 1e-9;
      ++total;
    }
    return agree == total;
  };
  const ClosedOneForm integral_forms[] = {form(R(2), R(-1), "sin(t1)"), form(R(0), R(3), "cos(t1)*cos(t2)")};
  const ClosedOneForm other_forms[] = {form(R(1, 2), R(0), "sin(t1)"), form(NumberRepr::sqrt(2), R(1))};
  for (const auto& w : integral_forms) {
    CHECK(is_integral(w, M, t0).integral);
    CHECK(phase_ok(w));
  }
  for (const auto& w : other_forms) {
    CHECK_FALSE(is_integral(w, M, t0).integral);
    CHECK_FALSE(phase_ok(w));
  }
}

TEST_CASE("validate_form") {
  const ModelManifold M = torus();
  CHECK_NOTHROW(validate_form(form(R(1), R(2), "sin(t1)*cos(t2)"), M));
  CHECK_THROWS_AS(validate_form(form(R(1), R(2), "t1"), M), DomainViolation);
  CHECK_THROWS_AS(validate_form(form(R(1), R(2), "1/sin(t1)"), M), DomainViolation);
  CHECK_THROWS_AS(validate_form(ClosedOneForm({}, parse_expr("t1", kVars)), M), InvalidArgument);
  CHECK_NOTHROW(validate_form(ClosedOneForm({}, parse_expr("t1*t2", kVars)), ModelManifold::disk(1)));
}
