#include "ghlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <thread>

#include "ghlab/errors.hpp"

namespace ghlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCellTol = 1e-12;
constexpr std::size_t kMaxCellPanels = 64;
constexpr std::size_t kMaxCyclePanels = 4096;
constexpr double kPathTol = 1e-9;

long linf(const Frequency& xi) {
  long n = 0;
  for (long v : xi) n = std::max(n, std::labs(v));
  return n;
}

// xi . omega_i as an expression
Expr xi_dot_omega(const Frequency& xi, const std::vector<ClosedOneForm>& forms, std::size_t i) {
  Expr acc = Expr::constant(0);
  for (std::size_t k = 0; k < forms.size(); ++k)
    if (xi[k] != 0) acc = acc + Expr::constant(static_cast<double>(xi[k])) * forms[k].component(i);
  return acc;
}

// exp(i psi_xi(X)) f_xi(X) along chart coordinates X, as a pair of components
class TwistedIntegrand {
 public:
  TwistedIntegrand(const Frequency& xi, const FormCoefficient& f, const std::vector<ClosedOneForm>& forms, bool twist)
      : xi_(xi), forms_(forms), f1_(f[0]), f2_(f[1]), twist_(twist) {}

  double psi(const Point& X) const { return twist_ ? twisted_potential(xi_, forms_, X) : 0.0; }

  // integrand of the straight segment a -> b at X, times |b - a| excluded
  Complex along(const Point& X, const Point& dir, double* mag) const {
    const double p[2] = {X[0], X[1]};
    const Complex g = f1_(p) * dir[0] + f2_(p) * dir[1];
    if (mag) *mag = std::abs(g);
    return twist_ ? g * std::polar(1.0, psi(X)) : g;
  }

 private:
  Frequency xi_;
  const std::vector<ClosedOneForm>& forms_;
  ComplexProgram f1_, f2_;
  bool twist_;
};

struct SegmentIntegral {
  Complex value;
  double scale = 0.0;   // sum of |w g|
  double sup = 0.0;     // max |g| at the nodes
  std::size_t panels = 0;
};

SegmentIntegral composite(const TwistedIntegrand& I, const Point& a, const Point& b, std::size_t panels,
                          const GaussLegendreRule& rule) {
  const Point dir{b[0] - a[0], b[1] - a[1]};
  SegmentIntegral out;
  out.panels = panels;
  const double h = 1.0 / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double s = mid + 0.5 * h * rule.nodes[i];
      double mag = 0;
      const Complex g = I.along({a[0] + s * dir[0], a[1] + s * dir[1]}, dir, &mag);
      const double w = 0.5 * h * rule.weights[i];
      out.value += w * g;
      out.scale += w * mag;
      out.sup = std::max(out.sup, mag);
    }
  }
  return out;
}

// Panel doubling until the (n, 2n) pair agrees relative to the L1 scale.
SegmentIntegral adaptive(const TwistedIntegrand& I, const Point& a, const Point& b, std::size_t start,
                         std::size_t max_panels, double tol) {
  const GaussLegendreRule& rule = gauss_legendre(16);
  SegmentIntegral coarse = composite(I, a, b, start, rule);
  if (start == 1) {
    // one panel: GL8 against GL16 bounds the GL8 error, so it over-covers GL16
    const SegmentIntegral low = composite(I, a, b, 1, gauss_legendre(8));
    if (std::abs(coarse.value - low.value) <= tol * coarse.scale + 1e-300) return coarse;
  }
  for (std::size_t n = 2 * start; n <= max_panels; n *= 2) {
    SegmentIntegral fine = composite(I, a, b, n, rule);
    if (std::abs(fine.value - coarse.value) <= tol * fine.scale + 1e-300) return fine;
    coarse = std::move(fine);
  }
  throw QuadratureNotConverged(std::abs(coarse.value), std::abs(composite(I, a, b, max_panels, rule).value));
}

bool segment_clear(const ModelManifold& M, const Point& a, const Point& b) {
  for (int k = 1; k < 4; ++k) {
    const double s = k / 4.0;
    if (!M.in_core({a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])})) return false;
  }
  return true;
}

// Cumulative int_{t0}^{node} exp(i psi) f over the grid: row through t0, then columns.
struct Walk {
  std::vector<Complex> J;
  std::vector<unsigned char> reached;
};

Walk walk_grid(const TwistedIntegrand& I, const ModelManifold& M, const CoreGrid& g) {
  Walk w;
  w.J.assign(g.n * g.n, Complex(0, 0));
  w.reached.assign(g.n * g.n, 0);
  if (!g.active(0, 0)) throw InvalidArgument("base point is not an active grid node");
  w.reached[g.flat(0, 0)] = 1;
  auto step = [&](long i, long j, long i2, long j2) {
    if (i2 < g.lo || i2 > g.hi() || j2 < g.lo || j2 > g.hi()) return false;
    if (!g.active(i2, j2)) return false;
    const Point a = g.node(i, j), b = g.node(i2, j2);
    if (!segment_clear(M, a, b)) return false;
    w.J[g.flat(i2, j2)] = w.J[g.flat(i, j)] + adaptive(I, a, b, 1, kMaxCellPanels, kCellTol).value;
    w.reached[g.flat(i2, j2)] = 1;
    return true;
  };
  for (long dir : {1L, -1L})
    for (long i = 0; step(i, 0, i + dir, 0); i += dir) {
    }
  for (long i = g.lo; i <= g.hi(); ++i) {
    if (!w.reached[g.flat(i, 0)]) continue;
    for (long dir : {1L, -1L})
      for (long j = 0; step(i, j, i, j + dir); j += dir) {
      }
  }
  return w;
}

// Alternate path: along the column through t0 first, then the row.
std::optional<Complex> vertical_first(const TwistedIntegrand& I, const ModelManifold& M, const CoreGrid& g, long ti,
                                      long tj) {
  Complex J(0, 0);
  long i = 0, j = 0;
  while (j != tj || i != ti) {
    long i2 = i, j2 = j;
    if (j != tj) {
      j2 += tj > j ? 1 : -1;
    } else {
      i2 += ti > i ? 1 : -1;
    }
    if (!g.active(i2, j2)) return std::nullopt;
    const Point a = g.node(i, j), b = g.node(i2, j2);
    if (!segment_clear(M, a, b)) return std::nullopt;
    J += adaptive(I, a, b, 1, kMaxCellPanels, kCellTol).value;
    i = i2;
    j = j2;
  }
  return J;
}

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = count * t / threads; i < count * (t + 1) / threads; ++i) body(i);
    });
  for (auto& th : pool) th.join();
}

std::vector<Frequency> box(std::size_t m, long R) {
  std::vector<Frequency> out;
  Frequency v(m, -R);
  while (true) {
    out.push_back(v);
    std::size_t i = m;
    while (true) {
      if (i == 0) return out;
      --i;
      if (v[i] < R) {
        ++v[i];
        for (std::size_t j = i + 1; j < m; ++j) v[j] = -R;
        break;
      }
    }
  }
}

// 2 pi frac(xi . a_l) from exact enclosures, in [0, 2 pi)
double phase_jump(const PeriodMatrix& A, const Frequency& xi, std::size_t l) {
  Enclosure v = Enclosure::exact(0);
  for (std::size_t k = 0; k < A.cols(); ++k)
    if (xi[k] != 0) v = v + BigRational(xi[k]) * A.at(l, k).enclose(kDefaultPrecisionBits);
  BigRational mid = v.midpoint();
  mid -= BigRational(floor_of(mid));
  return kTwoPi * mid.get_d();
}

}  // namespace

double twisted_potential(const Frequency& xi, const std::vector<ClosedOneForm>& forms, const Point& X) {
  double s = 0;
  for (std::size_t k = 0; k < forms.size(); ++k)
    if (xi[k] != 0) s += static_cast<double>(xi[k]) * forms[k].potential(X);
  return s;
}

PeriodMatrix lambda_matrix(const std::vector<ClosedOneForm>& forms, const ModelManifold& M) {
  const std::size_t d = M.d(), m = forms.size();
  std::vector<NumberRepr> e;
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t k = 0; k < m; ++k) {
      const auto& lam = forms[k].lambda();
      e.push_back(l < lam.size() ? lam[l] : NumberRepr::rational(0));
    }
  return PeriodMatrix(d, m, std::move(e));
}

FormSum apply_L(const FourierSum& v, const std::vector<ClosedOneForm>& forms) {
  FormSum f;
  for (const auto& [xi, c] : v) {
    if (xi.size() != forms.size()) throw InvalidArgument("frequency length differs from the number of forms");
    FormCoefficient out;
    for (std::size_t i = 0; i < 2; ++i) {
      const Expr w = simplify(xi_dot_omega(xi, forms, i));
      out[i] = differentiate(c, i) + (w.is_zero() ? ComplexExpr{} : times_i(w * c));
      out[i] = {simplify(out[i].re), simplify(out[i].im)};
    }
    f.emplace(xi, std::move(out));
  }
  return f;
}

ComplexExpr twisted_curl(const FormCoefficient& f, const Frequency& xi, const std::vector<ClosedOneForm>& forms) {
  const Expr w1 = xi_dot_omega(xi, forms, 0), w2 = xi_dot_omega(xi, forms, 1);
  ComplexExpr c = differentiate(f[1], 0) - differentiate(f[0], 1) + times_i(w1 * f[1] - w2 * f[0]);
  return {simplify(c.re), simplify(c.im)};
}

Compatibility check_compatibility(const FormCoefficient& f, const Frequency& xi, const std::vector<ClosedOneForm>& forms,
                                  const ModelManifold& M, const Point& t0, std::size_t grid) {
  Compatibility out;
  const ComplexProgram curl(twisted_curl(f, xi, forms));
  const ComplexProgram f1(f[0]), f2(f[1]);
  const CoreGrid g = M.core_grid(grid, t0);
  double scale = 1.0;
  const double xin = static_cast<double>(linf(xi));
  for (long i = g.lo; i <= g.hi(); ++i)
    for (long j = g.lo; j <= g.hi(); ++j) {
      if (!g.active(i, j)) continue;
      const Point p = g.node(i, j);
      const double x[2] = {p[0], p[1]};
      out.curl_max = std::max(out.curl_max, std::abs(curl(x)));
      scale = std::max(scale, (1.0 + xin) * std::max(std::abs(f1(x)), std::abs(f2(x))));
    }
  out.ok = out.curl_max <= 1e-9 * scale;
  if (linf(xi) == 0) {
    const TwistedIntegrand I(xi, f, forms, false);
    for (const auto& c : M.cycles(t0)) {
      const Point a = c.path.at(0.0);
      const Point b{a[0] + kTwoPi * static_cast<double>(c.winding[0]), a[1] + kTwoPi * static_cast<double>(c.winding[1])};
      const double per = std::abs(adaptive(I, a, b, 8, kMaxCyclePanels, 1e-13).value);
      out.periods.push_back(per);
      out.ok = out.ok && per <= 1e-9 * scale;
    }
  }
  return out;
}

BaseValue solve_coefficient_at_base(const Frequency& xi, const std::vector<ClosedOneForm>& forms,
                                    const FormCoefficient& f, const ModelManifold& M, const Point& t0, double tol) {
  if (M.d() == 0) throw NoCycles();
  if (linf(xi) == 0) throw InvalidArgument("base value formula needs xi != 0");
  const PeriodMatrix A = lambda_matrix(forms, M);
  BaseValue out;
  std::vector<double> jump(M.d());
  for (std::size_t l = 0; l < M.d(); ++l) {
    jump[l] = phase_jump(A, xi, l);
    out.gaps.push_back(2.0 * std::fabs(std::sin(0.5 * jump[l])));
  }
  out.row = static_cast<std::size_t>(std::max_element(out.gaps.begin(), out.gaps.end()) - out.gaps.begin());
  out.divisor = out.gaps[out.row];
  if (out.divisor < tol) throw DivisorBelowTol(xi, out.divisor);

  const auto cycles = M.cycles(t0);
  const Cycle& c = cycles[out.row];
  const Point a = c.path.at(0.0);
  const Point b{a[0] + kTwoPi * static_cast<double>(c.winding[0]), a[1] + kTwoPi * static_cast<double>(c.winding[1])};
  const TwistedIntegrand I(xi, f, forms, true);
  const SegmentIntegral s = adaptive(I, a, b, 8, kMaxCyclePanels, 1e-13);
  out.integral = s.value;
  out.path_length = std::hypot(b[0] - a[0], b[1] - a[1]);
  out.sup_f = s.sup / out.path_length;
  out.panels = s.panels;
  // exp(i psi(Q_l)) - exp(i psi(Q0)) = exp(i psi(Q0)) (exp(i jump) - 1)
  const Complex denom = std::polar(1.0, I.psi(t0)) * (std::polar(1.0, jump[out.row]) - Complex(1, 0));
  out.value = s.value / denom;
  return out;
}

Extension extend_coefficient(const Frequency& xi, const Complex& base, const FormCoefficient& f,
                             const std::vector<ClosedOneForm>& forms, const ModelManifold& M, const CoreGrid& grid,
                             unsigned seed) {
  const bool twist = linf(xi) != 0;
  const TwistedIntegrand I(xi, f, forms, twist);
  const Walk w = walk_grid(I, M, grid);
  Extension out;
  out.reached = w.reached;
  out.values.assign(w.J.size(), Complex(0, 0));
  const Point t0 = grid.origin;
  const Complex start = std::polar(1.0, I.psi(t0)) * base;
  double scale = std::abs(base);
  for (long i = grid.lo; i <= grid.hi(); ++i)
    for (long j = grid.lo; j <= grid.hi(); ++j) {
      const std::size_t k = grid.flat(i, j);
      if (!w.reached[k]) continue;
      out.values[k] = std::polar(1.0, -I.psi(grid.node(i, j))) * (start + w.J[k]);
      scale = std::max(scale, std::abs(w.J[k]));
    }
  std::mt19937_64 rng(seed * 7919u + 17u);
  std::uniform_int_distribution<long> pick(grid.lo, grid.hi());
  for (int tries = 0; out.spot_checks < 10 && tries < 1000; ++tries) {
    const long i = pick(rng), j = pick(rng);
    if (!w.reached[grid.flat(i, j)]) continue;
    const auto alt = vertical_first(I, M, grid, i, j);
    if (!alt) continue;
    out.path_check = std::max(out.path_check, std::abs(*alt - w.J[grid.flat(i, j)]));
    ++out.spot_checks;
  }
  if (out.path_check > kPathTol * std::max(1.0, scale))
    throw QuadratureNotConverged(out.path_check, kPathTol * std::max(1.0, scale));
  return out;
}

std::string conclusion_name(Conclusion c) {
  switch (c) {
    case Conclusion::GhConsistent: return "GH_CONSISTENT";
    case Conclusion::NotGhDemonstrated: return "NOT_GH_DEMONSTRATED";
    case Conclusion::Inconclusive: return "INCONCLUSIVE";
  }
  return "UNKNOWN";
}

SolveResult solve(const Scenario& s, const SolveOptions& opt) {
  if (s.forms.size() != s.m) throw InvalidArgument("scenario declares m = " + std::to_string(s.m) + " but has " +
                                                   std::to_string(s.forms.size()) + " forms");
  const Point t0 = s.base();
  const ModelManifold& M = s.manifold;
  const FormSum rhs = s.manufactured ? apply_L(*s.manufactured, s.forms) : s.rhs;
  const CoreGrid grid = M.core_grid(s.grid, t0);
  const PeriodMatrix A = lambda_matrix(s.forms, M);

  GHVerdict verdict{classify(A, opt.classify), std::nullopt, {}, Conclusion::Inconclusive, {}, {}};
  SolveResult out{FourierSide(s.m, s.xi_max, {}), grid, std::move(verdict), period_matrix(s.forms, M, t0), {}, 0.0};

  const std::vector<Frequency> freqs = box(s.m, s.xi_max);
  struct ModeResult {
    std::optional<Extension> ext;
    std::optional<DivisorRow> divisor;
    std::optional<ModeError> error;
  };
  std::vector<ModeResult> results(freqs.size());
  parallel_for(freqs.size(), opt.threads, [&](std::size_t idx) {
    const Frequency& xi = freqs[idx];
    ModeResult& r = results[idx];
    const auto it = rhs.find(xi);
    const FormCoefficient f = it == rhs.end() ? FormCoefficient{} : it->second;
    try {
      const Compatibility comp = check_compatibility(f, xi, s.forms, M, t0, s.grid);
      if (!comp.ok)
        throw DomainViolation("rhs mode fails the compatibility condition (curl " + std::to_string(comp.curl_max) + ")");
      Complex base(0, 0);
      if (linf(xi) != 0) {
        if (f[0].is_zero() && f[1].is_zero()) {
          r.ext = Extension{};
          return;
        }
        const BaseValue b = solve_coefficient_at_base(xi, s.forms, f, M, t0, s.tol);
        base = b.value;
        DivisorRow row{xi, b.row, b.divisor, dc_equiv_gap(A, xi).gap, std::abs(b.value),
                       b.path_length * b.sup_f / b.divisor};
        if (row.base_abs > row.growth_bound * (1 + 1e-12) + 1e-300)
          throw DomainViolation("base value exceeds the triangle-inequality bound");
        r.divisor = row;
      }
      r.ext = extend_coefficient(xi, base, f, s.forms, M, grid, static_cast<unsigned>(idx));
    } catch (const Error& e) {
      r.error = ModeError{xi, e.kind(), e.what()};
    }
  });

  // nodes reached for every mode that ran the walk
  std::vector<unsigned char> common;
  for (const auto& r : results)
    if (r.ext && !r.ext->reached.empty()) {
      if (common.empty()) {
        common = r.ext->reached;
      } else {
        for (std::size_t k = 0; k < common.size(); ++k) common[k] = common[k] && r.ext->reached[k];
      }
    }
  std::vector<Point> nodes;
  std::vector<std::size_t> flat;
  for (long i = grid.lo; i <= grid.hi(); ++i)
    for (long j = grid.lo; j <= grid.hi(); ++j) {
      const std::size_t k = grid.flat(i, j);
      if (common.empty() ? grid.active(i, j) : common[k] != 0) {
        nodes.push_back(grid.node(i, j));
        flat.push_back(k);
      }
    }
  out.u = FourierSide(s.m, s.xi_max, nodes);
  for (std::size_t idx = 0; idx < freqs.size(); ++idx) {
    ModeResult& r = results[idx];
    if (r.error) {
      out.errors.push_back(*r.error);
      continue;
    }
    std::vector<Complex> c(nodes.size(), Complex(0, 0));
    if (r.ext && !r.ext->values.empty()) {
      for (std::size_t p = 0; p < flat.size(); ++p) c[p] = r.ext->values[flat[p]];
      out.path_check = std::max(out.path_check, r.ext->path_check);
    }
    out.u.set(freqs[idx], std::move(c));
    if (r.divisor) out.verdict.divisors.push_back(*r.divisor);
  }

  GHVerdict& v = out.verdict;
  try {
    v.decay = decay_report(out.u, opt.decay);
  } catch (const Error& e) {
    v.decay_error = e.what();
  }
  const Verdict cls = v.classification.verdict;
  if (cls == Verdict::Rational || cls == Verdict::Liouville) {
    v.conclusion = Conclusion::NotGhDemonstrated;
    v.reason = "classification " + verdict_name(cls) + ": a singular solution construction applies";
  } else if (!out.errors.empty()) {
    v.conclusion = Conclusion::Inconclusive;
    v.reason = std::to_string(out.errors.size()) + " mode(s) failed";
  } else if (!v.decay) {
    v.conclusion = Conclusion::Inconclusive;
    v.reason = "no decay verdict: " + v.decay_error;
  } else if (v.decay->verdict == DecayKind::Rapid) {
    v.conclusion = Conclusion::GhConsistent;
    v.reason = "classification " + verdict_name(cls) + " and RAPID coefficient decay";
  } else {
    v.conclusion = Conclusion::Inconclusive;
    v.reason = "coefficient decay " + decay_kind_name(v.decay->verdict);
  }
  return out;
}

}  // namespace ghlab
