#include "ghlab/geometry.hpp"

#include <cmath>
#include <numbers>

#include "ghlab/errors.hpp"

namespace ghlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Expr affine(double a, double slope) { return Expr::constant(a) + Expr::constant(slope) * Expr::var(0); }

}  // namespace

// ---------------------------------------------------------------------------
// Paths

Path::Path(Expr x1, Expr x2) : x_{std::move(x1), std::move(x2)} {
  for (std::size_t i = 0; i < 2; ++i) {
    if (x_[i].arity() > 1) throw InvalidArgument("path components may only depend on the parameter s");
    p_[i] = Program(x_[i]);
    dp_[i] = Program(differentiate(x_[i], 0));
  }
}

Path Path::segment(const Point& a, const Point& b) {
  return Path(affine(a[0], b[0] - a[0]), affine(a[1], b[1] - a[1]));
}

VariableSet Path::parameter() { return VariableSet({"s"}); }

Point Path::at(double s) const {
  const double x[1] = {s};
  return {p_[0](x), p_[1](x)};
}

Point Path::velocity(double s) const {
  const double x[1] = {s};
  return {dp_[0](x), dp_[1](x)};
}

std::vector<Path> l_path(const Point& a, const Point& b, int first) {
  const Point corner = first == 0 ? Point{b[0], a[1]} : Point{a[0], b[1]};
  std::vector<Path> out;
  if (corner != a) out.push_back(Path::segment(a, corner));
  if (corner != b) out.push_back(Path::segment(corner, b));
  return out;
}

// ---------------------------------------------------------------------------
// Manifolds

std::size_t CoreGrid::active_count() const {
  std::size_t c = 0;
  for (auto v : in_core) c += v;
  return c;
}

ModelManifold ModelManifold::punctured_torus(double c1, double c2, double r) {
  if (!(c1 > 0 && c1 < kTwoPi && c2 > 0 && c2 < kTwoPi))
    throw InvalidArgument("puncture centre must lie in (0, 2pi)^2");
  if (!(r > 0 && r < std::numbers::pi / 1.5)) throw InvalidArgument("puncture radius must be in (0, pi/1.5)");
  ModelManifold m;
  m.kind_ = ManifoldKind::PuncturedTorus;
  m.c_ = {c1, c2};
  m.r_ = r;
  return m;
}

ModelManifold ModelManifold::disk(double radius) {
  if (!(radius > 0)) throw InvalidArgument("disk radius must be positive");
  ModelManifold m;
  m.kind_ = ManifoldKind::Disk;
  m.R_ = radius;
  return m;
}

std::string ModelManifold::kind_name() const {
  return kind_ == ManifoldKind::PuncturedTorus ? "punctured_torus" : "disk";
}

double ModelManifold::clearance(const Point& t) const {
  if (kind_ == ManifoldKind::Disk) return R_ - std::hypot(t[0], t[1]);
  const double dx = std::remainder(t[0] - c_[0], kTwoPi);
  const double dy = std::remainder(t[1] - c_[1], kTwoPi);
  return std::hypot(dx, dy) - r_;
}

bool ModelManifold::in_core(const Point& t) const {
  if (kind_ == ManifoldKind::Disk) return std::hypot(t[0], t[1]) <= 0.9 * R_;
  return clearance(t) >= 0.0;
}

Point ModelManifold::default_basepoint() const {
  if (kind_ == ManifoldKind::Disk) return {0.0, 0.0};
  return {c_[0] + std::numbers::pi, c_[1] + std::numbers::pi};
}

std::vector<Cycle> ModelManifold::cycles(const Point& t0) const {
  std::vector<Cycle> out;
  if (kind_ == ManifoldKind::Disk) return out;
  for (std::size_t l = 0; l < 2; ++l) {
    Cycle c{"sigma" + std::to_string(l + 1),
            l == 0 ? Path(affine(t0[0], kTwoPi), Expr::constant(t0[1]))
                   : Path(Expr::constant(t0[0]), affine(t0[1], kTwoPi)),
            t0,
            {l == 0 ? 1L : 0L, l == 1 ? 1L : 0L}};
    for (int i = 0; i <= 256; ++i)
      if (clearance(c.path.at(i / 256.0)) < 0.5 * r_)
        throw InvalidArgument("generator cycle through the base point passes within 1.5r of the puncture");
    out.push_back(std::move(c));
  }
  return out;
}

CoreGrid ModelManifold::core_grid(std::size_t g, const Point& t0) const {
  if (g < 4 || g % 2 != 0) throw InvalidArgument("grid size must be an even number >= 4");
  CoreGrid grid;
  grid.origin = t0;
  grid.lo = -static_cast<long>(g / 2);
  if (kind_ == ManifoldKind::PuncturedTorus) {
    grid.n = g;
    grid.h = kTwoPi / static_cast<double>(g);
  } else {
    grid.n = g + 1;
    grid.h = 0.9 * R_ / static_cast<double>(g / 2);
  }
  grid.in_core.assign(grid.n * grid.n, 0);
  for (long i = grid.lo; i <= grid.hi(); ++i)
    for (long j = grid.lo; j <= grid.hi(); ++j)
      grid.in_core[grid.flat(i, j)] = in_core(grid.node(i, j)) ? 1 : 0;
  return grid;
}

Point ModelManifold::reduce(const Point& t, const Point& t0, std::vector<long>* winding) const {
  if (kind_ == ManifoldKind::Disk) return t;
  Point out = t;
  for (std::size_t i = 0; i < 2; ++i) {
    const double k = std::round((t[i] - t0[i]) / kTwoPi);
    out[i] = t[i] - kTwoPi * k;
    if (winding) (*winding)[i] += static_cast<long>(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Forms

ClosedOneForm::ClosedOneForm(std::vector<NumberRepr> lambda, Expr v) : lambda_(std::move(lambda)), v_(std::move(v)) {
  if (!lambda_.empty() && lambda_.size() != 2) throw InvalidArgument("cohomology coefficients must have length 0 or 2");
  if (v_.arity() > 2) throw InvalidArgument("exact part may only depend on t1, t2");
  for (const auto& l : lambda_) lambda_d_.push_back(l.to_double());
  for (std::size_t i = 0; i < 2; ++i) {
    Expr c = differentiate(v_, i);
    if (!lambda_d_.empty()) c = Expr::constant(lambda_d_[i]) + c;
    comp_[i] = c;
    comp_p_[i] = Program(c);
  }
  v_p_ = Program(v_);
}

std::vector<double> ClosedOneForm::lambda_double() const { return lambda_d_; }

Expr ClosedOneForm::component(std::size_t i) const { return comp_.at(i); }

Point ClosedOneForm::at(const Point& t) const { return {comp_p_[0](t), comp_p_[1](t)}; }

double ClosedOneForm::potential(const Point& x) const {
  double s = v_p_(x);
  for (std::size_t i = 0; i < lambda_d_.size(); ++i) s += lambda_d_[i] * x[i];
  return s;
}

Expr ClosedOneForm::curl() const { return differentiate(comp_[1], 0) - differentiate(comp_[0], 1); }

ClosedOneForm ClosedOneForm::combine(const BigRational& a, const ClosedOneForm& other, const BigRational& b) const {
  if (lambda_.size() != other.lambda_.size()) throw InvalidArgument("combining forms on different manifolds");
  std::vector<NumberRepr> lam;
  for (std::size_t i = 0; i < lambda_.size(); ++i) lam.push_back(a * lambda_[i] + b * other.lambda_[i]);
  return ClosedOneForm(std::move(lam),
                       Expr::constant(a.get_d()) * v_ + Expr::constant(b.get_d()) * other.v_);
}

void validate_form(const ClosedOneForm& w, const ModelManifold& M) {
  if (M.d() != w.lambda().size())
    throw InvalidArgument("form has " + std::to_string(w.lambda().size()) + " cohomology coefficients, manifold has d = " +
                          std::to_string(M.d()));
  const VariableSet vars = VariableSet::chart(2);
  const Point t0 = M.default_basepoint();
  const CoreGrid grid = M.core_grid(64, t0);
  std::vector<std::vector<double>> pts;
  for (long i = grid.lo; i <= grid.hi(); ++i)
    for (long j = grid.lo; j <= grid.hi(); ++j)
      if (grid.active(i, j)) {
        const Point p = grid.node(i, j);
        pts.push_back({p[0], p[1]});
      }
  check_domain(w.exact_part(), pts, vars);
  const Program curl(w.curl());
  for (const auto& p : pts)
    if (std::fabs(curl(p)) > 1e-10) throw DomainViolation("form is not closed: curl exceeds 1e-10 on the core grid");
  if (M.kind() == ManifoldKind::PuncturedTorus) {
    const Program v(w.exact_part());
    for (std::size_t k = 0; k < pts.size(); k += 37) {
      const auto& p = pts[k];
      const double base = v(p);
      const double s1[2] = {p[0] + kTwoPi, p[1]};
      const double s2[2] = {p[0], p[1] + kTwoPi};
      if (std::fabs(v(s1) - base) > 1e-9 || std::fabs(v(s2) - base) > 1e-9)
        throw DomainViolation("exact part " + to_string(w.exact_part(), vars) + " is not 2pi-periodic");
    }
  }
}

// ---------------------------------------------------------------------------
// Quadrature

QuadratureResult integrate_over_path(const ClosedOneForm& w, const Path& p, std::size_t panels, int order) {
  if (panels < 1) throw InvalidArgument("panel count must be >= 1");
  const auto& rule = gauss_legendre(order);
  auto f = [&](double s) {
    const Point x = p.at(s);
    const Point v = p.velocity(s);
    const Point om = w.at(x);
    return om[0] * v[0] + om[1] * v[1];
  };
  QuadratureResult r;
  r.panels = panels;
  r.coarse = integrate_composite<double>(f, 0.0, 1.0, panels, rule);
  r.fine = integrate_composite<double>(f, 0.0, 1.0, 2 * panels, rule);
  r.value = r.fine;
  r.converged = std::fabs(r.fine - r.coarse) <= kQuadratureTol;
  return r;
}

QuadratureResult integrate_converged(const ClosedOneForm& w, const Path& p, std::size_t panels, int order) {
  QuadratureResult r;
  for (std::size_t n = panels; n <= 4096; n *= 2) {
    r = integrate_over_path(w, p, n, order);
    if (r.converged) return r;
  }
  throw QuadratureNotConverged(r.coarse, r.fine);
}

PeriodResult period_matrix(const std::vector<ClosedOneForm>& forms, const ModelManifold& M, const Point& t0) {
  if (forms.empty()) throw InvalidArgument("period matrix needs at least one form");
  const std::size_t d = M.d();
  const std::size_t m = forms.size();
  const auto cycles = M.cycles(t0);
  std::vector<NumberRepr> entries;
  PeriodResult out{PeriodMatrix(0, m, {}), std::vector<std::vector<double>>(d, std::vector<double>(m)), 0.0};
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t k = 0; k < m; ++k) {
      if (forms[k].lambda().size() != d) throw InvalidArgument("form does not match the manifold");
      entries.push_back(forms[k].lambda()[l]);
      const double q = integrate_converged(forms[k], cycles[l].path).value / kTwoPi;
      out.quad[l][k] = q;
      out.max_deviation = std::max(out.max_deviation, std::fabs(q - forms[k].lambda()[l].to_double()));
    }
  out.exact = PeriodMatrix(d, m, std::move(entries));
  return out;
}

Integrality is_integral(const ClosedOneForm& w, const ModelManifold& M, const Point& t0) {
  Integrality out;
  const auto cycles = M.cycles(t0);
  for (const auto& c : cycles) out.periods.push_back(integrate_converged(w, c.path).value);
  if (M.d() == 0) {
    out.integral = true;
    out.exact = true;
    out.evidence = "no generator cycles: every period vanishes";
    return out;
  }
  out.exact = true;
  out.integral = true;
  for (std::size_t l = 0; l < w.lambda().size(); ++l) {
    const NumberRepr& x = w.lambda()[l];
    bool integer = false;
    if (x.is_rational()) {
      integer = x.is_integer();
    } else if (x.as_quadratic() || x.as_liouville()) {
      integer = false;
    } else {
      const Enclosure e = x.enclose(kDefaultPrecisionBits);
      const BigInt f = floor_of(e.hi);
      if (e.contains(BigRational(f))) {
        const double dist = std::fabs(out.periods[l] / kTwoPi - std::round(out.periods[l] / kTwoPi));
        if (dist <= 1e-9)
          throw Indeterminate("period " + std::to_string(l + 1) + " is within 1e-9 of 2pi Z but not decidable");
      }
      integer = false;
    }
    if (!integer) {
      out.integral = false;
      out.evidence = "coefficient " + std::to_string(l + 1) + " = " + x.literal() + " is not an integer";
      return out;
    }
  }
  out.evidence = "all cohomology coefficients are integers";
  return out;
}

LiftResult lift_potential(const ClosedOneForm& w, const ModelManifold& M, const Point& t0, const CoverPoint& from,
                          const CoverPoint& to) {
  const std::size_t d = M.d();
  std::vector<double> periods;
  for (const auto& c : M.cycles(t0)) periods.push_back(integrate_converged(w, c.path).value);

  auto chart_part = [&](const Point& t, int first) {
    double s = 0.0;
    for (const auto& seg : l_path(t0, t, first)) s += integrate_converged(w, seg).value;
    return s;
  };
  auto psi = [&](const CoverPoint& p, int first, double* analytic) {
    std::vector<long> W = p.w;
    W.resize(d, 0);
    if (!M.in_core(p.t)) throw InvalidArgument("cover point outside the compact core");
    const Point t = M.reduce(p.t, t0, &W);
    double s = chart_part(t, first);
    Point lift = t;
    for (std::size_t l = 0; l < d; ++l) {
      s += static_cast<double>(W[l]) * periods[l];
      lift[l] += kTwoPi * static_cast<double>(W[l]);
    }
    *analytic = w.potential(lift) - w.potential(t0);
    return s;
  };
  LiftResult r;
  double a_from = 0.0, a_to = 0.0;
  r.value = psi(to, 0, &a_to) - psi(from, 0, &a_from);
  r.alternate = psi(to, 1, &a_to) - psi(from, 1, &a_from);
  r.analytic = a_to - a_from;
  if (std::fabs(r.value - r.alternate) > kQuadratureTol) throw QuadratureNotConverged(r.value, r.alternate);
  return r;
}

}  // namespace ghlab
