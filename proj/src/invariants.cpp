#include "ghlab/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ghlab/counterexample.hpp"
#include "ghlab/errors.hpp"

namespace ghlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// rounding slack for the double evaluation of |1 - exp(2 pi i x)|
constexpr double kSandwichSlack = 1e-15;

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }
};

void finish(InvariantResult& r) {
  r.passed = r.violations == 0;
  if (r.detail.empty())
    r.detail = std::to_string(r.violations) + " violation(s) in " + std::to_string(r.samples) + " samples";
}

Path wiggled_loop(const Point& t0, std::size_t l, double eps, long k1, long k2) {
  const Expr s = Expr::var(0);
  auto wiggle = [&](double amp, long k) {
    return Expr::constant(amp) * sin(Expr::constant(kTwoPi * static_cast<double>(k)) * s);
  };
  Expr x = Expr::constant(t0[0]) + wiggle(eps, k1);
  Expr y = Expr::constant(t0[1]) + wiggle(-eps, k2);
  if (l == 0) x = x + Expr::constant(kTwoPi) * s;
  if (l == 1) y = y + Expr::constant(kTwoPi) * s;
  return Path(x, y);
}

Path circle(const Point& c, double rad, double eps, long k) {
  const Expr s = Expr::var(0);
  const Expr a = Expr::constant(kTwoPi) * s;
  const Expr r = Expr::constant(rad) + Expr::constant(eps) * sin(Expr::constant(kTwoPi * static_cast<double>(k)) * s);
  return Path(Expr::constant(c[0]) + r * cos(a), Expr::constant(c[1]) + r * sin(a));
}

}  // namespace

InvariantResult check_sandwich(std::size_t samples, std::uint64_t seed) {
  InvariantResult r{"sandwich 4 dist <= |1 - exp(2 pi i x)| <= 2 pi dist", false, samples, 0, 0.0, kSandwichSlack, {}};
  Rng g(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const long q = g.integer(1, 1000000);
    const NumberRepr x = NumberRepr::rational(g.integer(-3 * q, 3 * q), q);
    const PeriodMatrix A(1, 1, {x});
    const GapResult gap = dc_equiv_gap(A, {1});
    const double lo = 4 * gap.dist, hi = kTwoPi * gap.dist;
    const double excess = std::max(lo - gap.gap, gap.gap - hi);
    r.worst = std::max(r.worst, excess);
    if (excess > kSandwichSlack) ++r.violations;
  }
  finish(r);
  return r;
}

InvariantResult check_homotopy(const Scenario& s, std::size_t pairs, std::uint64_t seed) {
  InvariantResult r{"homotopy invariance of periods", false, pairs, 0, 0.0, 1e-9, {}};
  Rng g(seed);
  const ModelManifold& M = s.manifold;
  const Point t0 = s.base();
  const auto cycles = M.cycles(t0);
  for (std::size_t i = 0; i < pairs; ++i) {
    const ClosedOneForm& w = s.forms[i % s.forms.size()];
    double straight = 0, bent = 0;
    if (M.d() == 0) {
      const double rad = 0.25 * M.disk_radius();
      bent = integrate_converged(w, circle(t0, rad, g.real(0, 0.2 * rad), g.integer(1, 4))).value;
    } else {
      const std::size_t l = i % M.d();
      // wiggle amplitude stays below the clearance margin of the generators
      const double eps = g.real(0.0, 0.4 * M.puncture_radius());
      straight = integrate_converged(w, cycles[l].path).value;
      bent = integrate_converged(w, wiggled_loop(t0, l, eps, g.integer(1, 4), g.integer(1, 4))).value;
    }
    const double dev = std::fabs(straight - bent);
    r.worst = std::max(r.worst, dev);
    if (dev > r.tolerance) ++r.violations;
  }
  finish(r);
  return r;
}

InvariantResult check_period_linearity(const Scenario& s, std::size_t samples, std::uint64_t seed) {
  InvariantResult r{"period map linearity (exact, rational inputs)", false, samples, 0, 0.0, 0.0, {}};
  Rng g(seed);
  const ModelManifold& M = s.manifold;
  const Point t0 = s.base();
  const VariableSet vars = VariableSet::chart(2);
  auto random_form = [&] {
    std::vector<NumberRepr> lam;
    for (std::size_t l = 0; l < M.d(); ++l) lam.push_back(NumberRepr::rational(g.integer(-9, 9), g.integer(1, 7)));
    const Expr v = Expr::constant(g.real(-0.5, 0.5)) * sin(Expr::var(0) + Expr::constant(2.0) * Expr::var(1));
    return ClosedOneForm(std::move(lam), v);
  };
  for (std::size_t i = 0; i < samples; ++i) {
    const ClosedOneForm w1 = random_form(), w2 = random_form();
    const BigRational a(g.integer(-5, 5), g.integer(1, 4)), b(g.integer(-5, 5), g.integer(1, 4));
    const PeriodResult lhs = period_matrix({w1.combine(a, w2, b)}, M, t0);
    const PeriodResult p1 = period_matrix({w1}, M, t0), p2 = period_matrix({w2}, M, t0);
    for (std::size_t l = 0; l < M.d(); ++l) {
      const NumberRepr expect = a * p1.exact.at(l, 0) + b * p2.exact.at(l, 0);
      if (!(lhs.exact.at(l, 0) == expect)) {
        ++r.violations;
        r.detail = "row " + std::to_string(l) + ": " + lhs.exact.at(l, 0).literal() + " != " + expect.literal();
      }
    }
  }
  finish(r);
  return r;
}

InvariantResult check_fourier_round_trip(const Scenario& s, std::size_t samples, std::uint64_t seed) {
  InvariantResult r{"partial_fourier o synthesize round trip", false, samples, 0, 0.0, 1e-12, {}};
  Rng g(seed);
  const CoreGrid grid = s.manifold.core_grid(8, s.base());
  std::vector<Point> nodes;
  for (long i = grid.lo; i <= grid.hi(); ++i)
    for (long j = grid.lo; j <= grid.hi(); ++j)
      if (grid.active(i, j)) nodes.push_back(grid.node(i, j));
  const long xi_max = s.m == 1 ? 6 : 3;
  for (std::size_t i = 0; i < samples; ++i) {
    FourierSide F(s.m, xi_max, nodes);
    for (int k = 0; k < 6; ++k) {
      Frequency xi(s.m);
      for (long& v : xi) v = g.integer(-xi_max, xi_max);
      std::vector<Complex> c(nodes.size());
      for (Complex& z : c) z = Complex(g.real(-1, 1), g.real(-1, 1));
      F.set(xi, std::move(c));
    }
    const std::size_t n = static_cast<std::size_t>(2 * xi_max + 1 + g.integer(0, 3));
    const FourierSide back = partial_fourier(synthesize(F, n, 1), xi_max, 1);
    const double dev = max_abs_difference(F, back);
    r.worst = std::max(r.worst, dev);
    if (dev > r.tolerance) ++r.violations;
  }
  finish(r);
  return r;
}

InvariantResult check_cover(const Scenario& s, std::size_t forms, std::uint64_t seed) {
  InvariantResult r{"integrality iff single-valued cover phases", false, 0, 0, 0.0, 0.0, {}};
  Rng g(seed);
  const ModelManifold& M = s.manifold;
  const Point t0 = s.base();
  auto probe = [&](const ClosedOneForm& w, const std::string& label) {
    bool integral = false;
    try {
      integral = is_integral(w, M, t0).integral;
    } catch (const Indeterminate&) {
      return;
    }
    const CoverCheck c = cover_check(w, M, t0, 50, static_cast<unsigned>(g.integer(1, 1 << 30)));
    ++r.samples;
    if (c.ok != integral) {
      ++r.violations;
      r.detail = label + ": integral=" + (integral ? "true" : "false") + " but cover deviation " +
                 std::to_string(c.max_deviation);
    }
  };
  for (std::size_t k = 0; k < s.forms.size(); ++k) probe(s.forms[k], "form " + std::to_string(k + 1));
  const Expr v = Expr::constant(0.3) * cos(Expr::var(0) - Expr::var(1));
  for (std::size_t i = 0; i < forms; ++i) {
    std::vector<NumberRepr> integral_lam, fractional_lam;
    for (std::size_t l = 0; l < M.d(); ++l) {
      integral_lam.push_back(NumberRepr::rational(g.integer(-3, 3)));
      // an odd numerator over 2 is never an integer
      fractional_lam.push_back(NumberRepr::rational(2 * g.integer(-3, 3) + 1, 2));
    }
    probe(ClosedOneForm(integral_lam, v), "random integral form");
    if (M.d() > 0) probe(ClosedOneForm(fractional_lam, v), "random fractional form");
  }
  finish(r);
  return r;
}

std::vector<InvariantResult> run_invariants(const Scenario& s, std::uint64_t seed) {
  return {check_sandwich(10000, seed), check_homotopy(s, 100, seed + 1), check_period_linearity(s, 20, seed + 2),
          check_fourier_round_trip(s, 10, seed + 3), check_cover(s, 4, seed + 4)};
}

}  // namespace ghlab
