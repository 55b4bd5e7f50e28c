#include "ghlab/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ghlab/errors.hpp"
#include "ghlab/solver.hpp"

namespace ghlab {

namespace {

constexpr double kCoverTol = 1e-9;
constexpr unsigned kRhsBits = 400;
// synthesize + partial_fourier only below this many torus samples
constexpr std::size_t kTransformBudget = std::size_t{1} << 24;

long linf(const Frequency& xi) {
  long n = 0;
  for (long v : xi) n = std::max(n, std::labs(v));
  return n;
}

// theta = sum_k c_k omega_k
ClosedOneForm combination(const std::vector<ClosedOneForm>& forms, const std::vector<BigRational>& c) {
  ClosedOneForm theta = forms[0].combine(c[0], forms[0], BigRational(0));
  for (std::size_t k = 1; k < forms.size(); ++k) theta = theta.combine(BigRational(1), forms[k], c[k]);
  return theta;
}

// lambda . t + v as an expression; lambda must be exact integers here
Expr chart_potential(const std::vector<double>& lambda, const Expr& v) {
  Expr s = v;
  for (std::size_t l = 0; l < lambda.size(); ++l)
    if (lambda[l] != 0) s = Expr::constant(lambda[l]) * Expr::var(l) + s;
  return simplify(s);
}

std::vector<Point> active_nodes(const CoreGrid& g) {
  std::vector<Point> out;
  for (long i = g.lo; i <= g.hi(); ++i)
    for (long j = g.lo; j <= g.hi(); ++j)
      if (g.active(i, j)) out.push_back(g.node(i, j));
  return out;
}

std::vector<Complex> phase_values(const Expr& phase, const std::vector<Point>& nodes, double scale = 1.0) {
  const Program p(phase);
  std::vector<Complex> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) {
    const double x[2] = {n[0], n[1]};
    out.push_back(std::polar(scale, p(x)));
  }
  return out;
}

double unimodular_deviation(const FourierSide& F) {
  double dev = 0;
  for (const auto& [xi, c] : F.coefficients())
    for (const Complex& z : c) dev = std::max(dev, std::fabs(std::abs(z) - 1.0));
  return dev;
}

}  // namespace

std::string singular_kind_name(SingularKind k) { return k == SingularKind::Rational ? "rational" : "liouville"; }

CoverCheck cover_check(const ClosedOneForm& theta, const ModelManifold& M, const Point& t0, std::size_t pairs,
                       unsigned seed) {
  CoverCheck out;
  const CoreGrid g = M.core_grid(32, t0);
  const std::vector<Point> nodes = active_nodes(g);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
  std::uniform_int_distribution<long> wind(-3, 3);
  for (std::size_t k = 0; k < pairs; ++k) {
    CoverPoint a{nodes[pick(rng)], std::vector<long>(M.d())};
    CoverPoint b{a.t, std::vector<long>(M.d())};
    for (std::size_t l = 0; l < M.d(); ++l) {
      a.w[l] = wind(rng);
      b.w[l] = wind(rng);
    }
    const LiftResult r = lift_potential(theta, M, t0, a, b);
    out.max_deviation = std::max(out.max_deviation, std::abs(std::polar(1.0, r.value) - Complex(1, 0)));
  }
  out.pairs = pairs;
  out.ok = out.max_deviation <= kCoverTol;
  return out;
}

SingularSolution build_rational(const std::vector<ClosedOneForm>& forms, const ModelManifold& M, const Point& t0,
                                const Frequency& xi0, std::size_t terms, std::size_t grid, unsigned threads) {
  if (forms.empty() || xi0.size() != forms.size()) throw InvalidArgument("direction length differs from the number of forms");
  if (linf(xi0) == 0) throw InvalidArgument("direction xi0 must be nonzero");
  if (terms == 0) throw InvalidArgument("need at least one term");
  std::vector<BigRational> c;
  for (long v : xi0) c.emplace_back(v);
  const ClosedOneForm theta = combination(forms, c);
  const Integrality integ = is_integral(theta, M, t0);
  if (!integ.integral) throw NotIntegral("xi0 . omega is not integral: " + integ.evidence);

  SingularSolution out;
  out.kind = SingularKind::Rational;
  out.direction = xi0;
  out.truncation = terms;
  out.grid = grid;
  out.cover = cover_check(theta, M, t0);
  if (!out.cover.ok) throw NotIntegral("cover check failed: deviation " + std::to_string(out.cover.max_deviation));

  const Expr psi = chart_potential(theta.lambda_double(), theta.exact_part());
  const CoreGrid g = M.core_grid(grid, t0);
  const std::vector<Point> nodes = active_nodes(g);
  const long top = static_cast<long>(terms) * linf(xi0);
  FourierSide direct(forms.size(), top, nodes);
  for (std::size_t j = 1; j <= terms; ++j) {
    SingularTerm t;
    for (long v : xi0) t.xi.push_back(-static_cast<long>(j) * v);
    t.phase = simplify(Expr::constant(static_cast<double>(j)) * psi);
    // termwise L u: d c + i (xi . omega) c with c = exp(i phase)
    const FormSum f = apply_L({{t.xi, ComplexExpr{cos(t.phase), sin(t.phase)}}}, forms);
    const ComplexProgram f1(f.at(t.xi)[0]), f2(f.at(t.xi)[1]);
    for (const auto& n : nodes) {
      const double x[2] = {n[0], n[1]};
      out.residual = std::max({out.residual, std::abs(f1(x)), std::abs(f2(x))});
    }
    direct.set(t.xi, phase_values(t.phase, nodes));
    out.terms.push_back(std::move(t));
  }

  std::size_t samples = nodes.size();
  for (std::size_t k = 0; k < forms.size(); ++k) samples *= static_cast<std::size_t>(2 * top + 1);
  if (samples <= kTransformBudget) {
    const TorusSamples s = synthesize(direct, static_cast<std::size_t>(2 * top + 1), threads);
    FourierSide back = partial_fourier(s, top, threads);
    // keep only the term frequencies; the rest is round-off
    FourierSide u(forms.size(), top, nodes);
    for (const auto& t : out.terms) u.set(t.xi, back.get(t.xi));
    out.transform_checked = true;
    out.u = std::move(u);
  } else {
    out.u = std::move(direct);
  }
  out.unimodular_deviation = unimodular_deviation(*out.u);
  out.u_decay = decay_report(*out.u);
  return out;
}

SingularSolution build_liouville(const std::vector<ClosedOneForm>& forms, const ModelManifold& M, const Point& t0,
                                 const LiouvilleWitness& w, std::size_t J, const BigRational& C, std::size_t grid) {
  if (forms.empty()) throw InvalidArgument("no forms");
  if (J == 0 || w.xi.size() < J || w.p.size() < J) throw WitnessRejected("witness shorter than the requested depth");
  const PeriodMatrix A = lambda_matrix(forms, M);
  const LiouvilleCheck check = verify_liouville_witness(A, w, C, J);
  if (!check.ok)
    throw WitnessRejected("Liouville inequality fails at j = " + std::to_string(check.first_failing));

  SingularSolution out;
  out.kind = SingularKind::Liouville;
  out.witness = w;
  out.truncation = J;
  out.grid = grid;
  const CoreGrid g = M.core_grid(grid, t0);
  const std::vector<Point> nodes = active_nodes(g);

  long top = 0;
  std::vector<Frequency> freqs;
  for (std::size_t j = 0; j < J; ++j) {
    Frequency xi;
    for (const BigInt& v : w.xi[j]) {
      if (!v.fits_slong_p()) throw WitnessRejected("witness frequency exceeds the machine range");
      xi.push_back(-v.get_si());
    }
    if (!freqs.empty() && linf(xi) <= linf(freqs.back())) throw WitnessRejected("witness frequencies must grow strictly");
    top = std::max(top, linf(xi));
    freqs.push_back(std::move(xi));
  }
  FourierSide u(forms.size(), top, nodes), Lu(forms.size(), top, nodes);

  for (std::size_t j = 0; j < J; ++j) {
    SingularTerm t;
    t.xi = freqs[j];
    t.p = w.p[j];
    // psi_j = p_j . t + xi_j . v
    std::vector<double> p_d;
    for (const BigInt& v : t.p) p_d.push_back(v.get_d());
    Expr v = Expr::constant(0);
    for (std::size_t k = 0; k < forms.size(); ++k)
      if (w.xi[j][k] != 0) v = v + Expr::constant(w.xi[j][k].get_d()) * forms[k].exact_part();
    t.phase = chart_potential(p_d, v);

    // rhs coefficient -i (A xi_j - p_j)_l dtheta_l exp(i psi_j): decided at 400 bits
    BigRational worst_hi(0);
    double dominant = 0.0;
    std::vector<double> jump(A.rows());
    for (std::size_t l = 0; l < A.rows(); ++l) {
      Enclosure e = Enclosure::exact(BigRational(-t.p[l]));
      for (std::size_t k = 0; k < A.cols(); ++k)
        if (w.xi[j][k] != 0) e = e + BigRational(w.xi[j][k]) * A.at(l, k).enclose(kRhsBits);
      jump[l] = e.midpoint().get_d();
      const Enclosure a = e.abs();
      if (a.hi > worst_hi) {
        worst_hi = a.hi;
        dominant = e.midpoint().get_d();
      }
    }
    BigInt norm = 0;
    for (const BigInt& v : w.xi[j]) norm = std::max<BigInt>(norm, abs(v));
    BigInt power = 1;
    for (std::size_t e = 1; e <= j; ++e) power *= norm;  // |xi_j|^{j - 1} with j counted from 1
    const BigRational bound = C / BigRational(power);
    t.rhs_sup = worst_hi.get_d();
    t.rhs_bound = bound.get_d();
    out.rhs_ok = out.rhs_ok && worst_hi <= bound;

    // formula check in double: L(term) against the stated rhs
    {
      const FormSum f = apply_L({{t.xi, ComplexExpr{cos(t.phase), sin(t.phase)}}}, forms);
      const ComplexProgram f1(f.at(t.xi)[0]), f2(f.at(t.xi)[1]), c({cos(t.phase), sin(t.phase)});
      for (const auto& n : nodes) {
        const double x[2] = {n[0], n[1]};
        const Complex cc = c(x);
        const Complex r1 = f1(x) - Complex(0, -1) * (jump.size() > 0 ? jump[0] : 0.0) * cc;
        const Complex r2 = f2(x) - Complex(0, -1) * (jump.size() > 1 ? jump[1] : 0.0) * cc;
        out.formula_residual =
            std::max(out.formula_residual, std::max(std::abs(r1), std::abs(r2)) / (1.0 + static_cast<double>(linf(t.xi))));
      }
    }

    u.set(t.xi, phase_values(t.phase, nodes));
    std::vector<Complex> rhs = phase_values(t.phase, nodes, 1.0);
    for (Complex& z : rhs) z *= Complex(0, -dominant);
    Lu.set(t.xi, std::move(rhs));
    out.terms.push_back(std::move(t));
  }
  out.unimodular_deviation = unimodular_deviation(u);
  out.u_decay = decay_report(u);
  out.Lu_decay = decay_report(Lu);
  out.u = std::move(u);
  out.Lu = std::move(Lu);
  return out;
}

}  // namespace ghlab
