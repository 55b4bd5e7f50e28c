#include <cmath>

#include "doctest.h"
#include "ghlab/counterexample.hpp"
#include "ghlab/errors.hpp"
#include "ghlab/solver.hpp"
#include "support/oracle.hpp"

using namespace ghlab;
using oracle::Ref;

namespace {

const VariableSet kVars = VariableSet::chart(2);

ModelManifold torus() { return ModelManifold::punctured_torus(1.0, 1.5, 0.3); }

ClosedOneForm form(NumberRepr l1, NumberRepr l2, const std::string& v = "0") {
  return ClosedOneForm({std::move(l1), std::move(l2)}, parse_expr(v, kVars));
}

NumberRepr liouville2() { return NumberRepr::liouville(2, LiouvilleSchedule::factorial()); }

}  // namespace

TEST_CASE("rational construction, half dtheta_1") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const std::vector<ClosedOneForm> forms{form(NumberRepr::rational(1, 2), NumberRepr::rational(0), "0.3*sin(t1)*cos(t2)")};
  const SingularSolution s = build_rational(forms, M, t0, {2}, 32);
  REQUIRE(s.terms.size() == 32);
  for (std::size_t j = 0; j < s.terms.size(); ++j) CHECK(s.terms[j].xi == Frequency{-2 * static_cast<long>(j + 1)});
  CHECK(s.cover.ok);
  CHECK(s.cover.pairs == 50);
  CHECK(s.residual <= 1e-10);
  CHECK(s.transform_checked);
  CHECK(s.unimodular_deviation <= 1e-9);
  REQUIRE(s.u_decay);
  CHECK(s.u_decay->verdict == DecayKind::None);
  // coefficient at -2j is exp(i j psi) with psi(t) = t1 + 0.6 sin t1 cos t2
  const auto& nodes = s.u->nodes();
  const auto c = s.u->get({-6});
  for (std::size_t p = 0; p < nodes.size(); p += 97) {
    const double psi = nodes[p][0] + 0.6 * std::sin(nodes[p][0]) * std::cos(nodes[p][1]);
    CHECK(std::abs(c[p] - std::polar(1.0, 3 * psi)) < 1e-10);
  }
  // odd frequencies carry nothing
  CHECK_FALSE(s.u->has({-3}));
}

TEST_CASE("rational construction on the disk") {
  const ModelManifold D = ModelManifold::disk(2.0);
  const std::vector<ClosedOneForm> forms{ClosedOneForm({}, parse_expr("sin(t1) + t2^2/3", kVars))};
  const SingularSolution s = build_rational(forms, D, D.default_basepoint(), {1}, 32);
  CHECK(s.residual <= 1e-10);
  CHECK(s.unimodular_deviation <= 1e-9);
  CHECK(s.u_decay->verdict == DecayKind::None);
  CHECK(s.cover.ok);
}

TEST_CASE("non-integral directions are rejected") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const std::vector<ClosedOneForm> phi{form(NumberRepr::golden_ratio(), NumberRepr::rational(0))};
  for (long q : {1L, 2L, 3L, 5L, 8L, 13L, 144L, 10000L}) CHECK_THROWS_AS(build_rational(phi, M, t0, {q}, 4), NotIntegral);
  const std::vector<ClosedOneForm> half{form(NumberRepr::rational(1, 2), NumberRepr::rational(0))};
  CHECK_THROWS_AS(build_rational(half, M, t0, {3}, 4), NotIntegral);
}

TEST_CASE("single-valuedness iff integrality on random cover pairs (property)") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  oracle::Gen g(5);
  for (int it = 0; it < 12; ++it) {
    const long a = g.integer(-4, 4), b = g.integer(-4, 4), den = g.integer(1, 3);
    const ClosedOneForm theta = form(NumberRepr::rational(a, den), NumberRepr::rational(b, den), "0.2*cos(t1 - t2)");
    const bool integral = a % den == 0 && b % den == 0;
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(den);
    CHECK(cover_check(theta, M, t0, 50, static_cast<unsigned>(it)).ok == integral);
  }
  CHECK_FALSE(cover_check(form(NumberRepr::golden_ratio(), NumberRepr::rational(0)), M, t0).ok);
  CHECK_FALSE(cover_check(form(NumberRepr::rational(0), NumberRepr::sqrt(2)), M, t0).ok);
}

TEST_CASE("Liouville construction, m = 1") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const std::vector<ClosedOneForm> forms{form(liouville2(), NumberRepr::rational(0), "0.25*sin(t2)")};
  const PeriodMatrix A = lambda_matrix(forms, M);
  const auto w = liouville_witness_from_column(A, 0, 4);
  REQUIRE(w);
  const SingularSolution s = build_liouville(forms, M, t0, *w, 4);
  REQUIRE(s.terms.size() == 4);
  CHECK(s.terms[3].xi == Frequency{-(1L << 24)});
  CHECK(s.rhs_ok);
  CHECK(s.unimodular_deviation <= 1e-12);
  CHECK(s.formula_residual <= 1e-12);
  CHECK(s.u_decay->verdict == DecayKind::None);
  CHECK(s.Lu_decay->verdict == DecayKind::Rapid);
  // oracle: |q_j x - p_j| from the 400-bit partial sums, against 2 q_j^{1-j}
  const Ref x = oracle::liouville(2, 6);
  for (std::size_t j = 0; j < 4; ++j) {
    const Ref q = boost::multiprecision::pow(Ref(2), static_cast<long>(std::tgamma(j + 2.0) + 0.5));
    const Ref p = boost::multiprecision::floor(q * x);
    const Ref lhs = boost::multiprecision::abs(q * x - p);
    CHECK(s.terms[j].rhs_sup == doctest::Approx(static_cast<double>(lhs)).epsilon(1e-12));
    CHECK(lhs <= 2 * boost::multiprecision::pow(q, 1 - static_cast<long>(j + 1)));
  }
  CHECK(s.terms[1].rhs_sup <= 2.0 / 4);
  CHECK(s.terms[2].rhs_sup <= 2.0 / (64.0 * 64.0));
  CHECK(s.terms[3].rhs_sup <= 2.0 / std::pow(2.0, 72));
}

TEST_CASE("Liouville construction, m = 2 through the first slot") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const std::vector<ClosedOneForm> forms{form(liouville2(), NumberRepr::rational(0)),
                                         form(NumberRepr::rational(0), NumberRepr::golden_ratio(), "0.1*cos(t1)")};
  const PeriodMatrix A = lambda_matrix(forms, M);
  const auto w = liouville_witness_from_column(A, 0, 4);
  REQUIRE(w);
  CHECK(w->xi[2] == std::vector<BigInt>{64, 0});
  const SingularSolution s = build_liouville(forms, M, t0, *w, 4);
  CHECK(s.rhs_ok);
  CHECK(s.u_decay->verdict == DecayKind::None);
  CHECK(s.Lu_decay->verdict == DecayKind::Rapid);
  CHECK(s.terms[2].xi == Frequency{-64, 0});
}

TEST_CASE("Liouville witnesses are checked") {
  const ModelManifold M = torus();
  const Point t0 = M.default_basepoint();
  const std::vector<ClosedOneForm> phi{form(NumberRepr::golden_ratio(), NumberRepr::rational(0))};
  // Fibonacci convergents satisfy |phi - p/q| <= C/q^j only for j <= 2
  LiouvilleWitness w;
  w.xi = {{1}, {2}, {3}, {5}};
  w.p = {{2, 0}, {3, 0}, {5, 0}, {8, 0}};
  CHECK_THROWS_AS(build_liouville(phi, M, t0, w, 4), WitnessRejected);
  CHECK_THROWS_AS(build_liouville(phi, M, t0, w, 5), WitnessRejected);
}
