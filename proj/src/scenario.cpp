#include "ghlab/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "ghlab/errors.hpp"

namespace ghlab {

namespace {

const VariableSet& chart_vars() {
  static const VariableSet v = VariableSet::chart(2);
  return v;
}

class Reader {
 public:
  explicit Reader(std::string path) : path_(std::move(path)) {}

  [[noreturn]] void fail(const toml::node& n, const std::string& what) const {
    throw SchemaError(path_, static_cast<long>(n.source().begin.line), what);
  }
  [[noreturn]] void fail(long line, const std::string& what) const { throw SchemaError(path_, line, what); }

  void only(const toml::table& t, const std::string& where, std::set<std::string> allowed) const {
    for (auto&& [k, v] : t)
      if (!allowed.count(std::string(k.str())))
        fail(static_cast<long>(k.source().begin.line), "unknown key '" + std::string(k.str()) + "' in " + where);
  }

  const toml::table& table(const toml::node& n, const std::string& where) const {
    if (!n.is_table()) fail(n, where + " must be a table");
    return *n.as_table();
  }
  const toml::array& array(const toml::node& n, const std::string& where) const {
    if (!n.is_array()) fail(n, where + " must be an array");
    return *n.as_array();
  }
  std::string string(const toml::node& n, const std::string& where) const {
    if (!n.is_string()) fail(n, where + " must be a string");
    return n.value<std::string>().value();
  }
  long integer(const toml::node& n, const std::string& where, long lo, long hi) const {
    if (!n.is_integer()) fail(n, where + " must be an integer");
    const auto v = n.value<std::int64_t>().value();
    if (v < lo || v > hi) fail(n, where + " = " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    return static_cast<long>(v);
  }
  double real(const toml::node& n, const std::string& where) const {
    if (!n.is_number()) fail(n, where + " must be a number");
    const double v = n.value<double>().value();
    if (!std::isfinite(v)) fail(n, where + " must be finite");
    return v;
  }
  double positive(const toml::node& n, const std::string& where) const {
    const double v = real(n, where);
    if (v <= 0) fail(n, where + " must be positive");
    return v;
  }
  std::vector<double> reals(const toml::node& n, const std::string& where, std::size_t size) const {
    const toml::array& a = array(n, where);
    if (a.size() != size) fail(n, where + " must have " + std::to_string(size) + " entries");
    std::vector<double> out;
    for (const auto& e : a) out.push_back(real(e, where));
    return out;
  }
  Frequency frequency(const toml::node& n, const std::string& where, std::size_t m) const {
    const toml::array& a = array(n, where);
    if (a.size() != m) fail(n, where + " must have m = " + std::to_string(m) + " entries");
    Frequency xi;
    for (const auto& e : a) xi.push_back(integer(e, where, -1000000000L, 1000000000L));
    return xi;
  }
  Expr expr(const toml::node& n, const std::string& where) const {
    const std::string s = string(n, where);
    try {
      return simplify(parse_expr(s, chart_vars()));
    } catch (const Error& e) {
      fail(n, where + ": " + e.what());
    }
  }
  // "re" or ["re"] or ["re", "im"]
  ComplexExpr complex_expr(const toml::node& n, const std::string& where) const {
    if (n.is_string()) return ComplexExpr::real(expr(n, where));
    const toml::array& a = array(n, where);
    if (a.empty() || a.size() > 2) fail(n, where + " must be a string or [re, im]");
    ComplexExpr c = ComplexExpr::real(expr(a[0], where + "[re]"));
    if (a.size() == 2) c.im = expr(a[1], where + "[im]");
    return c;
  }
  NumberRepr number(const toml::node& n, const std::string& where) const {
    if (n.is_integer()) return NumberRepr::rational(n.value<std::int64_t>().value());
    if (!n.is_string()) fail(n, where + " must be a number literal string or an integer");
    try {
      return parse_number(n.value<std::string>().value());
    } catch (const Error& e) {
      fail(n, where + ": " + e.what());
    }
  }

 private:
  std::string path_;
};

ModelManifold read_manifold(const Reader& r, const toml::node* n) {
  if (!n) throw SchemaError("", 0, "missing [manifold]");
  const toml::table& t = r.table(*n, "[manifold]");
  r.only(t, "[manifold]", {"type", "puncture", "radius"});
  const toml::node* type = t.get("type");
  if (!type) r.fail(*n, "[manifold] needs a type");
  const std::string kind = r.string(*type, "manifold.type");
  if (kind == "punctured_torus") {
    if (t.get("radius")) r.fail(*t.get("radius"), "manifold.radius applies only to disks");
    std::vector<double> p{std::numbers::pi, std::numbers::pi, 0.3};
    if (const toml::node* pn = t.get("puncture")) p = r.reals(*pn, "manifold.puncture", 3);
    try {
      return ModelManifold::punctured_torus(p[0], p[1], p[2]);
    } catch (const Error& e) {
      r.fail(*n, std::string("manifold: ") + e.what());
    }
  }
  if (kind == "disk") {
    if (t.get("puncture")) r.fail(*t.get("puncture"), "manifold.puncture applies only to punctured tori");
    const toml::node* rn = t.get("radius");
    try {
      return ModelManifold::disk(rn ? r.positive(*rn, "manifold.radius") : 1.0);
    } catch (const Error& e) {
      r.fail(*n, std::string("manifold: ") + e.what());
    }
  }
  r.fail(*type, "manifold.type must be punctured_torus or disk, got '" + kind + "'");
}

}  // namespace

ScenarioFile parse_scenario(std::string_view text, const std::string& path) {
  toml::table root;
  try {
    root = toml::parse(text, path);
  } catch (const toml::parse_error& e) {
    throw SchemaError(path, static_cast<long>(e.source().begin.line), std::string(e.description()));
  }
  const Reader r(path);
  r.only(root, "the top level",
         {"name", "manifold", "torus", "forms", "rhs", "manufactured", "manufactured_family", "solver", "diophantine",
          "counterexample", "output"});

  ModelManifold M = [&] {
    try {
      return read_manifold(r, root.get("manifold"));
    } catch (const SchemaError& e) {
      if (e.line() == 0) throw SchemaError(path, 1, "missing [manifold] table");
      throw;
    }
  }();
  ScenarioFile out{path, Scenario(std::move(M)), {}, {}, {}};
  Scenario& s = out.scenario;
  if (const toml::node* n = root.get("name")) s.name = r.string(*n, "name");

  if (const toml::node* n = root.get("torus")) {
    const toml::table& t = r.table(*n, "[torus]");
    r.only(t, "[torus]", {"m", "xi_max"});
    if (const toml::node* v = t.get("m")) s.m = static_cast<std::size_t>(r.integer(*v, "torus.m", 1, 4));
    if (const toml::node* v = t.get("xi_max")) s.xi_max = r.integer(*v, "torus.xi_max", 0, 4096);
  }

  const toml::node* forms = root.get("forms");
  if (!forms) throw SchemaError(path, 1, "missing [[forms]]");
  {
    const toml::array& a = r.array(*forms, "forms");
    if (a.size() != s.m)
      r.fail(*forms, "expected m = " + std::to_string(s.m) + " forms, found " + std::to_string(a.size()));
    for (std::size_t k = 0; k < a.size(); ++k) {
      const std::string where = "forms[" + std::to_string(k + 1) + "]";
      const toml::table& t = r.table(a[k], where);
      r.only(t, where, {"lambda", "v"});
      std::vector<NumberRepr> lam;
      if (const toml::node* ln = t.get("lambda")) {
        const toml::array& la = r.array(*ln, where + ".lambda");
        if (la.size() != s.manifold.d())
          r.fail(*ln, where + ".lambda needs d = " + std::to_string(s.manifold.d()) + " entries");
        for (const auto& e : la) lam.push_back(r.number(e, where + ".lambda"));
      } else if (s.manifold.d() != 0) {
        r.fail(a[k], where + " needs lambda");
      }
      const Expr v = t.get("v") ? r.expr(*t.get("v"), where + ".v") : Expr::constant(0);
      ClosedOneForm w(std::move(lam), v);
      try {
        validate_form(w, s.manifold);
      } catch (const Error& e) {
        r.fail(a[k], where + ": " + e.what());
      }
      s.forms.push_back(std::move(w));
    }
  }

  const bool has_rhs = root.get("rhs") != nullptr;
  const bool has_man = root.get("manufactured") || root.get("manufactured_family");
  if (has_rhs && has_man) r.fail(*root.get("rhs"), "rhs and manufactured are mutually exclusive");
  if (const toml::node* n = root.get("rhs")) {
    const toml::array& a = r.array(*n, "rhs");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string where = "rhs[" + std::to_string(i + 1) + "]";
      const toml::table& t = r.table(a[i], where);
      r.only(t, where, {"xi", "dt1", "dt2"});
      if (!t.get("xi")) r.fail(a[i], where + " needs xi");
      const Frequency xi = r.frequency(*t.get("xi"), where + ".xi", s.m);
      FormCoefficient f;
      if (const toml::node* c = t.get("dt1")) f[0] = r.complex_expr(*c, where + ".dt1");
      if (const toml::node* c = t.get("dt2")) f[1] = r.complex_expr(*c, where + ".dt2");
      if (!s.rhs.emplace(xi, f).second) r.fail(a[i], where + ": duplicate frequency");
    }
  }
  if (has_man) {
    FourierSum v;
    if (const toml::node* n = root.get("manufactured")) {
      const toml::array& a = r.array(*n, "manufactured");
      for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string where = "manufactured[" + std::to_string(i + 1) + "]";
        const toml::table& t = r.table(a[i], where);
        r.only(t, where, {"xi", "v"});
        if (!t.get("xi") || !t.get("v")) r.fail(a[i], where + " needs xi and v");
        const Frequency xi = r.frequency(*t.get("xi"), where + ".xi", s.m);
        if (!v.emplace(xi, r.complex_expr(*t.get("v"), where + ".v")).second) r.fail(a[i], where + ": duplicate frequency");
      }
    }
    if (const toml::node* n = root.get("manufactured_family")) {
      const toml::table& t = r.table(*n, "[manufactured_family]");
      r.only(t, "[manufactured_family]", {"range", "decay", "v"});
      if (!t.get("range") || !t.get("v")) r.fail(*n, "[manufactured_family] needs range and v");
      const toml::array& ra = r.array(*t.get("range"), "manufactured_family.range");
      if (ra.size() != 2) r.fail(*t.get("range"), "manufactured_family.range must be [lo, hi]");
      const long lo = r.integer(ra[0], "manufactured_family.range", 0, 4096);
      const long hi = r.integer(ra[1], "manufactured_family.range", lo, 4096);
      const double decay = t.get("decay") ? r.real(*t.get("decay"), "manufactured_family.decay") : 1.0;
      const ComplexExpr base = r.complex_expr(*t.get("v"), "manufactured_family.v");
      Frequency xi(s.m, -hi);
      while (true) {
        long norm = 0;
        for (long c : xi) norm = std::max(norm, std::labs(c));
        if (norm >= lo && norm <= hi) {
          const Expr w = Expr::constant(std::exp(-decay * static_cast<double>(norm)));
          ComplexExpr c{simplify(w * base.re), simplify(w * base.im)};
          if (!v.emplace(xi, std::move(c)).second) r.fail(*n, "manufactured_family overlaps [[manufactured]]");
        }
        std::size_t k = s.m;
        while (k > 0 && xi[k - 1] == hi) xi[--k] = -hi;
        if (k == 0) break;
        ++xi[k - 1];
      }
    }
    s.manufactured = std::move(v);
  }

  if (const toml::node* n = root.get("solver")) {
    const toml::table& t = r.table(*n, "[solver]");
    r.only(t, "[solver]", {"tol", "grid", "basepoint"});
    if (const toml::node* v = t.get("tol")) s.tol = r.positive(*v, "solver.tol");
    if (const toml::node* v = t.get("grid")) s.grid = static_cast<std::size_t>(r.integer(*v, "solver.grid", 4, 1024));
    if (const toml::node* v = t.get("basepoint")) {
      const auto b = r.reals(*v, "solver.basepoint", 2);
      s.basepoint = Point{b[0], b[1]};
      if (!s.manifold.in_core(*s.basepoint)) r.fail(*v, "solver.basepoint lies outside the compact core");
    }
  }
  if (const toml::node* n = root.get("diophantine")) {
    const toml::table& t = r.table(*n, "[diophantine]");
    r.only(t, "[diophantine]", {"radius", "depth", "precision_bits"});
    if (const toml::node* v = t.get("radius")) out.classify.radius = r.integer(*v, "diophantine.radius", 1, 1000000);
    if (const toml::node* v = t.get("depth"))
      out.classify.depth = static_cast<std::size_t>(r.integer(*v, "diophantine.depth", 1, 12));
    if (const toml::node* v = t.get("precision_bits"))
      out.classify.precision_bits = static_cast<unsigned>(r.integer(*v, "diophantine.precision_bits", 64, 1 << 16));
  }
  if (const toml::node* n = root.get("counterexample")) {
    const toml::table& t = r.table(*n, "[counterexample]");
    r.only(t, "[counterexample]", {"kind", "terms", "direction"});
    if (const toml::node* v = t.get("kind")) {
      out.counterexample.kind = r.string(*v, "counterexample.kind");
      if (out.counterexample.kind != "rational" && out.counterexample.kind != "liouville")
        r.fail(*v, "counterexample.kind must be rational or liouville");
    }
    if (const toml::node* v = t.get("terms"))
      out.counterexample.terms = static_cast<std::size_t>(r.integer(*v, "counterexample.terms", 1, 4096));
    if (const toml::node* v = t.get("direction"))
      out.counterexample.direction = r.frequency(*v, "counterexample.direction", s.m);
  }
  if (const toml::node* n = root.get("output")) {
    const toml::table& t = r.table(*n, "[output]");
    r.only(t, "[output]", {"directory", "format"});
    if (const toml::node* v = t.get("directory")) out.output.directory = r.string(*v, "output.directory");
    if (const toml::node* v = t.get("format")) {
      out.output.format = r.string(*v, "output.format");
      if (out.output.format != "csv" && out.output.format != "json") r.fail(*v, "output.format must be csv or json");
    }
  }
  return out;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, 0, "cannot open scenario file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

}  // namespace ghlab
