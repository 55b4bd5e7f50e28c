#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "ghlab/errors.hpp"
#include "ghlab/solver.hpp"
#include "support/oracle.hpp"

using namespace ghlab;

namespace {

constexpr double kPi = std::numbers::pi;
const VariableSet kVars = VariableSet::chart(2);

ModelManifold torus() { return ModelManifold::punctured_torus(1.0, 1.5, 0.3); }

Expr P(const std::string& s) { return parse_expr(s, kVars); }
ComplexExpr C(const std::string& re, const std::string& im = "0") { return {P(re), P(im)}; }

ClosedOneForm form(NumberRepr l1, NumberRepr l2, const std::string& v = "0") {
  return ClosedOneForm({std::move(l1), std::move(l2)}, P(v));
}

Complex at(const ComplexExpr& e, const Point& p) {
  const double x[2] = {p[0], p[1]};
  return evaluate(e, x);
}

// Independent base value: midpoint rule in long double on the generator,
// with the potential integrated numerically from the form components.
std::complex<long double> base_oracle(const Frequency& xi, const std::vector<ClosedOneForm>& forms,
                                      const FormCoefficient& f, const Point& t0, std::size_t l) {
  const int n = 20000;
  const long double L = 2 * std::numbers::pi_v<long double>;
  std::complex<long double> sum = 0;
  long double psi = 0;  // psi(sigma(s)) - psi(t0)
  auto omega_dot = [&](const Point& X) {
    long double w = 0;
    for (std::size_t k = 0; k < forms.size(); ++k) w += xi[k] * forms[k].at(X)[l];
    return w;
  };
  for (int i = 0; i < n; ++i) {
    Point a = t0, m = t0, b = t0;
    a[l] += static_cast<double>(L * i / n);
    m[l] += static_cast<double>(L * (i + 0.5L) / n);
    b[l] += static_cast<double>(L * (i + 1) / n);
    // Simpson on [a, m] for the potential at m, then [m, b]
    const long double h = L / n;
    const long double psi_m = psi + h / 12 * (omega_dot(a) + 4 * omega_dot({(a[0] + m[0]) / 2, (a[1] + m[1]) / 2}) + omega_dot(m));
    const Complex g = at(f[l], m);
    sum += std::polar(1.0L, psi_m) * std::complex<long double>(g.real(), g.imag()) * h;
    psi = psi_m + h / 12 * (omega_dot(m) + 4 * omega_dot({(m[0] + b[0]) / 2, (m[1] + b[1]) / 2}) + omega_dot(b));
  }
  return sum / (std::polar(1.0L, psi) - 1.0L);
}

double max_error_on_grid(const Extension& e, const CoreGrid& g, const ComplexExpr& v, std::size_t* count) {
  double err = 0;
  *count = 0;
  for (long i = g.lo; i <= g.hi(); ++i)
    for (long j = g.lo; j <= g.hi(); ++j) {
      const std::size_t k = g.flat(i, j);
      if (!e.reached[k]) continue;
      ++*count;
      err = std::max(err, std::abs(e.values[k] - at(v, g.node(i, j))));
    }
  return err;
}

// Smooth 2pi-periodic trigonometric polynomial with small coefficients.
std::string random_trig(oracle::Gen& g, double amp) {
  std::string s = "0";
  for (int k = 0; k < 3; ++k) {
    const double c = g.real(-amp, amp);
    const long a = g.integer(0, 2), b = g.integer(0, 2);
    s += " + " + std::to_string(c) + "*" + (g.coin() ? "sin(" : "cos(") + std::to_string(a) + "*t1 + " +
         std::to_string(b) + "*t2)";
  }
  return s;
}

}  // namespace

TEST_CASE("apply_L examples") {
  const std::vector<ClosedOneForm> half{form(NumberRepr::rational(1, 2), NumberRepr::rational(0))};
  {
    const FormSum f = apply_L({{{0}, C("1")}}, half);
    CHECK(f.at({0})[0].is_zero());
    CHECK(f.at({0})[1].is_zero());
  }
  {
    const FormSum f = apply_L({{{0}, C("sin(t1)")}}, half);
    CHECK(f.at({0})[0] == C("cos(t1)"));
    CHECK(f.at({0})[1].is_zero());
  }
  {
    const FormSum f = apply_L({{{1}, C("1")}}, half);
    const Complex v = at(f.at({1})[0], {0.3, 0.4});
    CHECK(std::abs(v - Complex(0, 0.5)) < 1e-15);
    CHECK(f.at({1})[1].is_zero());
  }
  CHECK_THROWS_AS(apply_L({{{1, 0}, C("1")}}, half), InvalidArgument);
}

TEST_CASE("compatibility examples") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const std::vector<ClosedOneForm> phi{form(NumberRepr::golden_ratio(), NumberRepr::rational(0))};
  // f_0 = dtheta_1 is closed but has a nonzero period
  const Compatibility c0 = check_compatibility({C("1"), C("0")}, {0}, phi, M, t0);
  CHECK_FALSE(c0.ok);
  REQUIRE(c0.periods.size() == 2);
  CHECK(c0.periods[0] == doctest::Approx(2 * kPi));
  // omega . g = (i phi g) dt1 is not twisted-closed for non-constant g in t2
  CHECK_FALSE(check_compatibility({C("0", "sin(t2)"), C("0")}, {1}, phi, M, t0).ok);
  // any L v is compatible
  const FormSum f = apply_L({{{2}, C("sin(t1)*cos(t2)", "exp(cos(t2))")}}, phi);
  const Compatibility ok = check_compatibility(f.at({2}), {2}, phi, M, t0);
  CHECK(ok.ok);
  CHECK(ok.curl_max < 1e-12);
}

TEST_CASE("base value examples") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const std::vector<ClosedOneForm> phi{form(NumberRepr::golden_ratio(), NumberRepr::rational(0))};
  const FormSum f = apply_L({{{1}, C("1")}}, phi);
  const BaseValue b = solve_coefficient_at_base({1}, phi, f.at({1}), M, t0);
  CHECK(std::abs(b.value - Complex(1, 0)) < 1e-9);
  CHECK(b.row == 0);

  const std::vector<ClosedOneForm> half{form(NumberRepr::rational(1, 2), NumberRepr::rational(0))};
  CHECK_THROWS_AS(solve_coefficient_at_base({2}, half, {C("1"), C("0")}, M, t0), DivisorBelowTol);
  const BaseValue odd = solve_coefficient_at_base({1}, half, apply_L({{{1}, C("1")}}, half).at({1}), M, t0);
  CHECK(odd.divisor == doctest::Approx(2.0));
  CHECK(std::abs(odd.value - Complex(1, 0)) < 1e-9);

  const ModelManifold D = ModelManifold::disk(2.0);
  CHECK_THROWS_AS(solve_coefficient_at_base({1}, phi, f.at({1}), D, D.default_basepoint()), NoCycles);
}

TEST_CASE("base value matches the long-double generator oracle") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const std::vector<ClosedOneForm> forms{form(NumberRepr::sqrt(2), NumberRepr::golden_ratio(), "0.3*sin(t1 + t2)")};
  const FormCoefficient f = apply_L({{{3}, C("cos(t1)", "sin(2*t2)")}}, forms).at({3});
  const BaseValue b = solve_coefficient_at_base({3}, forms, f, M, t0);
  const auto ref = base_oracle({3}, forms, f, t0, b.row);
  CHECK(std::abs(b.value - Complex(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) < 1e-7);
  CHECK(std::abs(b.value - at(C("cos(t1)", "sin(2*t2)"), t0)) < 1e-9);
}

TEST_CASE("extension examples") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const CoreGrid g = M.core_grid(64, t0);
  const std::vector<ClosedOneForm> phi{form(NumberRepr::golden_ratio(), NumberRepr::rational(0), "0.2*cos(t2)")};
  SUBCASE("homogeneous transport keeps unit modulus") {
    const Extension e = extend_coefficient({1}, Complex(1, 0), {C("0"), C("0")}, phi, M, g);
    for (std::size_t k = 0; k < e.values.size(); ++k)
      if (e.reached[k]) CHECK(std::abs(e.values[k]) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("manufactured sin t1") {
    const ComplexExpr v = C("sin(t1)");
    const FormCoefficient f = apply_L({{{1}, v}}, phi).at({1});
    const BaseValue b = solve_coefficient_at_base({1}, phi, f, M, t0);
    const Extension e = extend_coefficient({1}, b.value, f, phi, M, g);
    std::size_t count = 0;
    CHECK(max_error_on_grid(e, g, v, &count) <= 1e-8);
    CHECK(count * 10 >= g.active_count() * 9);
    CHECK(e.spot_checks == 10);
    CHECK(e.path_check <= 1e-9);
  }
  SUBCASE("mode zero integrates from t0") {
    const ComplexExpr v = C("cos(t1) - cos(t2)");
    const FormCoefficient f = apply_L({{{0}, v}}, phi).at({0});
    const Extension e = extend_coefficient({0}, Complex(0, 0), f, phi, M, g);
    CHECK(std::abs(e.values[g.flat(0, 0)]) == 0.0);
    std::size_t count = 0;
    CHECK(max_error_on_grid(e, g, v - ComplexExpr::real(Expr::constant(at(v, t0).real())), &count) <= 1e-9);
  }
}

TEST_CASE("growth bound, divisor law and gauge covariance (property)") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  oracle::Gen gen(11);
  const NumberRepr pool[] = {NumberRepr::golden_ratio(), NumberRepr::sqrt(2), NumberRepr::sqrt(3),
                             NumberRepr::rational(1, 3), NumberRepr::sqrt(7)};
  for (int it = 0; it < 12; ++it) {
    const std::vector<ClosedOneForm> forms{
        form(pool[gen.integer(0, 4)], pool[gen.integer(0, 4)], random_trig(gen, 0.3))};
    const Frequency xi{gen.integer(1, 9) * (gen.coin() ? 1 : -1)};
    const ComplexExpr v = C(random_trig(gen, 1.0), random_trig(gen, 1.0));
    const FormCoefficient f = apply_L({{xi, v}}, forms).at(xi);
    const PeriodMatrix A = lambda_matrix(forms, M);
    const GapResult gap = dc_equiv_gap(A, xi);
    BaseValue b;
    try {
      b = solve_coefficient_at_base(xi, forms, f, M, t0);
    } catch (const DivisorBelowTol&) {
      CHECK(gap.gap < 1e-9);
      continue;
    }
    CAPTURE(it);
    CHECK(std::fabs(b.divisor - gap.gap) <= 1e-10);
    CHECK(std::abs(b.value) <= b.path_length * b.sup_f / b.divisor * (1 + 1e-12));
    // gauge: omega -> omega + dw, f -> exp(-i xi w) f
    const std::string w = random_trig(gen, 0.5);
    const std::vector<ClosedOneForm> forms2{ClosedOneForm(forms[0].lambda(), forms[0].exact_part() + P(w))};
    const Expr phase = Expr::constant(static_cast<double>(xi[0])) * P(w);
    const ComplexExpr rot{cos(phase), -sin(phase)};
    const FormCoefficient f2{rot * f[0], rot * f[1]};
    const BaseValue b2 = solve_coefficient_at_base(xi, forms2, f2, M, t0);
    const Complex expect = std::polar(1.0, -xi[0] * evaluate(P(w), std::vector<double>{t0[0], t0[1]})) * b.value;
    CHECK(std::abs(b2.value - expect) <= 1e-9 * (1 + std::abs(b.value)));
    CHECK(std::abs(b2.value) == doctest::Approx(std::abs(b.value)).epsilon(1e-9));
  }
}

TEST_CASE("random manufactured round trips (property)") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const CoreGrid g = M.core_grid(32, t0);
  oracle::Gen gen(21);
  int solved = 0;
  for (int it = 0; it < 20; ++it) {
    const bool two = gen.coin();
    std::vector<ClosedOneForm> forms{form(NumberRepr::golden_ratio(), NumberRepr::sqrt(2), random_trig(gen, 0.3))};
    Frequency xi{gen.integer(-6, 6)};
    if (two) {
      forms.push_back(form(NumberRepr::sqrt(3), NumberRepr::rational(1, 5), random_trig(gen, 0.3)));
      xi.push_back(gen.integer(-6, 6));
    }
    if (xi[0] == 0) xi[0] = 1;
    const ComplexExpr v = C(random_trig(gen, 1.0), random_trig(gen, 1.0));
    const FormCoefficient f = apply_L({{xi, v}}, forms).at(xi);
    CAPTURE(it);
    const BaseValue b = solve_coefficient_at_base(xi, forms, f, M, t0);
    const Extension e = extend_coefficient(xi, b.value, f, forms, M, g, static_cast<unsigned>(it));
    std::size_t count = 0;
    CHECK(max_error_on_grid(e, g, v, &count) <= 1e-7);
    ++solved;
  }
  CHECK(solved == 20);
}

TEST_CASE("solve examples") {
  SUBCASE("golden ratio, manufactured rapidly decaying data") {
    Scenario s(torus());
    s.xi_max = 8;
    s.grid = 32;
    s.forms = {form(NumberRepr::golden_ratio(), NumberRepr::rational(0), "0.2*sin(t2)")};
    FourierSum v;
    for (long k = -8; k <= 8; ++k)
      if (k != 0) v[{k}] = ComplexExpr::real(Expr::constant(std::exp(-3.0 * std::labs(k))) * P("2 + sin(t1)"));
    s.manufactured = v;
    const SolveResult r = solve(s, {.threads = 2});
    CHECK(r.errors.empty());
    CHECK(r.verdict.classification.verdict == Verdict::DiophantineCertified);
    REQUIRE(r.verdict.decay.has_value());
    CHECK(r.verdict.decay->verdict == DecayKind::Rapid);
    CHECK(r.verdict.conclusion == Conclusion::GhConsistent);
    CHECK(r.verdict.divisors.size() == 16);
    // manufactured solution recovered on the reported nodes
    double err = 0;
    for (const auto& [xi, c] : v)
      for (std::size_t p = 0; p < r.u.nodes().size(); ++p) err = std::max(err, std::abs(r.u.get(xi)[p] - at(c, r.u.nodes()[p])));
    CHECK(err <= 1e-8);
    // threads do not change the result
    const SolveResult r1 = solve(s, {.threads = 1});
    CHECK(max_abs_difference(r.u, r1.u) == 0.0);
  }
  SUBCASE("half rational") {
    Scenario s(torus());
    s.xi_max = 8;
    s.grid = 32;
    s.forms = {form(NumberRepr::rational(1, 2), NumberRepr::rational(0))};
    s.rhs[{1}] = {C("1"), C("0")};
    const SolveResult r = solve(s);
    CHECK(r.verdict.classification.verdict == Verdict::Rational);
    CHECK(r.verdict.conclusion == Conclusion::NotGhDemonstrated);
  }
  SUBCASE("incompatible data is reported per mode") {
    Scenario s(torus());
    s.xi_max = 8;
    s.grid = 32;
    s.forms = {form(NumberRepr::golden_ratio(), NumberRepr::rational(0))};
    s.rhs[{0}] = {C("1"), C("0")};
    const SolveResult r = solve(s);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].kind == "DomainViolation");
    CHECK(r.verdict.conclusion == Conclusion::Inconclusive);
  }
}
