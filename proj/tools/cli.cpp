#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>

#include "ghlab/counterexample.hpp"
#include "ghlab/errors.hpp"
#include "ghlab/invariants.hpp"
#include "ghlab/report.hpp"
#include "ghlab/scenario.hpp"
#include "ghlab/solver.hpp"

namespace ghlab::cli {

namespace {

using json = nlohmann::ordered_json;

struct Flags {
  std::string scenario;
  std::optional<long> xi_max;
  std::optional<long> radius;
  std::optional<std::size_t> terms;
  std::optional<double> tol;
  std::optional<std::size_t> grid;
  std::optional<unsigned> precision_bits;
  unsigned threads = 0;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> kind;
};

struct Context {
  ScenarioFile file;
  std::string dir;
  std::string format;
  unsigned threads = 0;
};

std::string str(const BigInt& v) { return v.get_str(); }
std::string str(const BigRational& v) { return v.get_str(); }
std::string num(double x) { return format_double(x); }

template <class V>
json int_list(const V& v) {
  json a = json::array();
  for (const auto& x : v) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, BigInt>) {
      if (x.fits_slong_p()) {
        a.push_back(x.get_si());
      } else {
        a.push_back(x.get_str());
      }
    } else {
      a.push_back(x);
    }
  }
  return a;
}

json metadata(const Context& c, const std::string& command) {
  const Scenario& s = c.file.scenario;
  return {{"schema", kReportSchema},
          {"command", command},
          {"scenario", c.file.path},
          {"name", s.name},
          {"manifold", s.manifold.kind_name()},
          {"m", s.m},
          {"d", s.manifold.d()}};
}

PeriodMatrix matrix(const Context& c) { return lambda_matrix(c.file.scenario.forms, c.file.scenario.manifold); }

json summary_json(const DcSummary& s) {
  return {{"radius", s.radius},
          {"precision_bits", s.precision_bits},
          {"count", s.count},
          {"rho_hat", report_number(s.rho_hat)},
          {"rho_at", s.rho_at},
          {"min_q_delta", report_number(s.min_q_delta)},
          {"min_q_delta_at", s.min_q_delta_at},
          {"tail_from", s.tail_from},
          {"tail_min_q_delta", report_number(s.tail_min_q_delta)},
          {"tail_min_at", s.tail_min_at}};
}

json classification_json(const Classification& c) {
  json j{{"verdict", verdict_name(c.verdict)}, {"precision_bits", c.precision_bits}, {"norm", norm_name(c.norm)}};
  if (c.rational) {
    j["xi"] = int_list(c.rational->xi);
    j["exact"] = c.rational->exact;
    j["minimal"] = c.rational->minimal;
  }
  if (c.liouville) {
    const LiouvilleVerdict& l = *c.liouville;
    json xi = json::array(), p = json::array();
    for (const auto& v : l.witness.xi) xi.push_back(int_list(v));
    for (const auto& v : l.witness.p) p.push_back(int_list(v));
    j["liouville"] = {{"column", l.column + 1},
                      {"C", str(l.C)},
                      {"depth", l.depth},
                      {"xi", xi},
                      {"p", p},
                      {"verified", l.check.verified},
                      {"margin", report_number(l.check.margin)}};
  }
  if (c.certificate) {
    json piv = json::array();
    for (const auto& p : c.certificate->pivots)
      piv.push_back({{"column", p.column + 1}, {"row", p.row + 1}, {"c", str(p.c)}, {"max_quotient", str(p.max_quotient)}});
    j["certificate"] = {{"rho", report_number(c.certificate->rho)},
                        {"C", str(c.certificate->C)},
                        {"C_value", report_number(c.certificate->C.get_d())},
                        {"pivots", piv},
                        {"basis", c.certificate->basis}};
  }
  if (c.empirical) j["empirical"] = summary_json(*c.empirical);
  j["diagnostic"] = c.diagnostic;
  return j;
}

Table decay_table(const std::string& name, const std::optional<DecayReport>& d) {
  Table t{name, {"shell", "sup", "verdict"}, {}};
  if (!d) return t;
  for (const auto& [r, s] : d->shells) t.add({std::to_string(r), num(s), decay_kind_name(d->verdict)});
  return t;
}

json decay_json(const std::optional<DecayReport>& d, const std::string& error) {
  if (!d) return {{"verdict", nullptr}, {"error", error}};
  return {{"verdict", decay_kind_name(d->verdict)},
          {"alpha", report_number(d->alpha)},
          {"xi_max", d->xi_max},
          {"dense", d->dense},
          {"rule", d->rule},
          {"floor", report_number(d->thresholds.floor)}};
}

ClassifyPolicy policy(const Context& c, const Flags& f) {
  ClassifyPolicy p = c.file.classify;
  if (f.radius) p.radius = *f.radius;
  if (f.precision_bits) p.precision_bits = *f.precision_bits;
  p.threads = c.threads;
  return p;
}

int cmd_classify(const Context& c, const Flags& f, std::ostream& out) {
  const Classification cl = classify(matrix(c), policy(c, f));
  json doc = metadata(c, "classify");
  doc["classification"] = classification_json(cl);
  doc["verdict"] = verdict_name(cl.verdict);
  if (cl.rational) doc["xi"] = int_list(cl.rational->xi);
  write_json(doc, c.dir, "verdict");
  out << "verdict: " << verdict_name(cl.verdict);
  if (cl.rational) {
    out << " xi=(";
    for (std::size_t k = 0; k < cl.rational->xi.size(); ++k) out << (k ? "," : "") << cl.rational->xi[k];
    out << ")";
  }
  out << "\n";
  return kOk;
}

int cmd_periods(const Context& c, const Flags&, std::ostream& out) {
  const Scenario& s = c.file.scenario;
  const PeriodResult pr = period_matrix(s.forms, s.manifold, s.base());
  Table t{"periods", {"row", "form", "exact", "exact_value", "quadrature", "deviation"}, {}};
  for (std::size_t l = 0; l < pr.exact.rows(); ++l)
    for (std::size_t k = 0; k < pr.exact.cols(); ++k) {
      const double e = pr.exact.at(l, k).to_double();
      t.add({std::to_string(l + 1), std::to_string(k + 1), pr.exact.at(l, k).literal(), num(e), num(pr.quad[l][k]),
             num(std::fabs(e - pr.quad[l][k]))});
    }
  write_table(t, c.dir, c.format);
  json doc = metadata(c, "periods");
  doc["max_deviation"] = report_number(pr.max_deviation);
  json integral = json::array();
  for (const auto& w : s.forms) integral.push_back(is_integral(w, s.manifold, s.base()).integral);
  doc["integral"] = integral;
  write_json(doc, c.dir, "verdict");
  out << "periods: " << pr.exact.rows() << "x" << pr.exact.cols() << ", max deviation " << num(pr.max_deviation) << "\n";
  return kOk;
}

int cmd_dcscan(const Context& c, const Flags& f, std::ostream& out) {
  const ClassifyPolicy p = policy(c, f);
  const PeriodMatrix A = matrix(c);
  const DcScan scan = dc_scan(A, p.radius, p.precision_bits, c.threads);
  Table t{"dcscan", {}, {}};
  for (std::size_t k = 0; k < A.cols(); ++k) t.columns.push_back("xi_" + std::to_string(k + 1));
  for (std::size_t l = 0; l < A.rows(); ++l) t.columns.push_back("eta_" + std::to_string(l + 1));
  t.columns.insert(t.columns.end(), {"delta", "log_delta"});
  for (const auto& r : scan.rows) {
    std::vector<std::string> row;
    for (long v : r.xi) row.push_back(std::to_string(v));
    for (const auto& v : r.eta) row.push_back(str(v));
    row.push_back(num(r.delta));
    row.push_back(num(r.log_delta));
    t.add(std::move(row));
  }
  write_table(t, c.dir, c.format);
  json doc = metadata(c, "dcscan");
  doc["summary"] = summary_json(scan.summary);
  write_json(doc, c.dir, "verdict");
  out << "dcscan: R=" << scan.summary.radius << " rows=" << scan.summary.count << " rho_hat=" << num(scan.summary.rho_hat)
      << " min_q_delta=" << num(scan.summary.min_q_delta) << " tail_min_q_delta=" << num(scan.summary.tail_min_q_delta)
      << "\n";
  return kOk;
}

std::vector<std::string> freq_cells(const Frequency& xi) {
  std::vector<std::string> out;
  for (long v : xi) out.push_back(std::to_string(v));
  return out;
}

std::vector<std::string> xi_columns(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < m; ++k) out.push_back("xi_" + std::to_string(k + 1));
  return out;
}

int cmd_solve(Context& c, const Flags& f, std::ostream& out) {
  Scenario& s = c.file.scenario;
  if (f.xi_max) s.xi_max = *f.xi_max;
  if (f.tol) s.tol = *f.tol;
  if (f.grid) s.grid = *f.grid;
  SolveOptions opt;
  opt.threads = c.threads;
  opt.classify = policy(c, f);
  const SolveResult r = solve(s, opt);

  Table coef{"coefficients", xi_columns(s.m), {}};
  coef.columns.insert(coef.columns.end(), {"node", "t1", "t2", "re", "im"});
  const auto& nodes = r.u.nodes();
  for (const auto& [xi, vals] : r.u.coefficients())
    for (std::size_t p = 0; p < nodes.size(); ++p) {
      auto row = freq_cells(xi);
      row.insert(row.end(), {std::to_string(p), num(nodes[p][0]), num(nodes[p][1]), num(vals[p].real()), num(vals[p].imag())});
      coef.add(std::move(row));
    }
  write_table(coef, c.dir, c.format);
  write_table(decay_table("decay", r.verdict.decay), c.dir, c.format);
  Table div{"divisors", xi_columns(s.m), {}};
  div.columns.insert(div.columns.end(), {"row", "divisor", "gap", "base_abs", "growth_bound"});
  for (const auto& d : r.verdict.divisors) {
    auto row = freq_cells(d.xi);
    row.insert(row.end(), {std::to_string(d.row + 1), num(d.divisor), num(d.gap), num(d.base_abs), num(d.growth_bound)});
    div.add(std::move(row));
  }
  write_table(div, c.dir, c.format);

  json doc = metadata(c, "solve");
  doc["xi_max"] = s.xi_max;
  doc["tol"] = report_number(s.tol);
  doc["grid"] = s.grid;
  doc["classification"] = classification_json(r.verdict.classification);
  doc["decay"] = decay_json(r.verdict.decay, r.verdict.decay_error);
  doc["conclusion"] = conclusion_name(r.verdict.conclusion);
  doc["reason"] = r.verdict.reason;
  doc["path_check"] = report_number(r.path_check);
  doc["period_deviation"] = report_number(r.periods.max_deviation);
  json errs = json::array();
  for (const auto& e : r.errors) errs.push_back({{"xi", e.xi}, {"kind", e.kind}, {"message", e.message}});
  doc["errors"] = errs;
  write_json(doc, c.dir, "verdict");
  out << "conclusion: " << conclusion_name(r.verdict.conclusion) << " (" << r.verdict.reason << ")\n";
  if (r.verdict.decay) out << "decay: " << decay_kind_name(r.verdict.decay->verdict) << "\n";
  return r.verdict.conclusion == Conclusion::Inconclusive ? kIndeterminate : kOk;
}

int cmd_counterexample(const Context& c, const Flags& f, std::ostream& out) {
  const Scenario& s = c.file.scenario;
  const CounterexampleConfig& cfg = c.file.counterexample;
  std::string kind = f.kind ? *f.kind : cfg.kind;
  const std::size_t terms = f.terms ? *f.terms : cfg.terms;
  std::optional<Classification> cl;
  if (kind.empty() || (kind == "rational" && !cfg.direction) || kind == "liouville") {
    cl = classify(matrix(c), policy(c, f));
    if (kind.empty()) {
      if (cl->verdict == Verdict::Rational) kind = "rational";
      else if (cl->verdict == Verdict::Liouville) kind = "liouville";
      else throw InvalidArgument("classification is " + verdict_name(cl->verdict) + ": no counterexample construction applies");
    }
  }
  SingularSolution sol;
  if (kind == "rational") {
    Frequency xi0;
    if (cfg.direction) {
      xi0 = *cfg.direction;
    } else {
      if (!cl->rational) throw NotIntegral("no rational witness: classification is " + verdict_name(cl->verdict));
      for (const auto& v : cl->rational->xi) xi0.push_back(v.get_si());
    }
    sol = build_rational(s.forms, s.manifold, s.base(), xi0, terms, f.grid ? *f.grid : 64, c.threads);
  } else {
    if (!cl->liouville) throw WitnessRejected("classification is " + verdict_name(cl->verdict) + ", not liouville");
    const PeriodMatrix A = matrix(c);
    const auto w = liouville_witness_from_column(A, cl->liouville->column, terms);
    if (!w) throw WitnessRejected("no witness sequence for the Liouville column");
    sol = build_liouville(s.forms, s.manifold, s.base(), *w, terms, cl->liouville->C, f.grid ? *f.grid : 64);
  }

  json doc_terms = metadata(c, "counterexample");
  doc_terms["kind"] = singular_kind_name(sol.kind);
  doc_terms["truncation"] = sol.truncation;
  if (!sol.direction.empty()) doc_terms["direction"] = sol.direction;
  json tl = json::array();
  const VariableSet vars = VariableSet::chart(2);
  for (const auto& t : sol.terms) {
    json o{{"xi", t.xi}, {"phase", to_string(t.phase, vars)}};
    if (sol.kind == SingularKind::Liouville) {
      o["p"] = int_list(t.p);
      o["rhs_sup"] = report_number(t.rhs_sup);
      o["rhs_bound"] = report_number(t.rhs_bound);
    }
    tl.push_back(std::move(o));
  }
  doc_terms["terms"] = tl;
  write_json(doc_terms, c.dir, "terms");
  write_table(decay_table("u_decay", sol.u_decay), c.dir, c.format);
  write_table(decay_table("Lu_decay", sol.Lu_decay), c.dir, c.format);

  json res = metadata(c, "counterexample");
  res["kind"] = singular_kind_name(sol.kind);
  res["grid"] = sol.grid;
  res["residual"] = report_number(sol.residual);
  res["formula_residual"] = report_number(sol.formula_residual);
  res["unimodular_deviation"] = report_number(sol.unimodular_deviation);
  res["transform_checked"] = sol.transform_checked;
  res["rhs_ok"] = sol.rhs_ok;
  if (sol.kind == SingularKind::Rational)
    res["cover"] = {{"ok", sol.cover.ok}, {"pairs", sol.cover.pairs}, {"max_deviation", report_number(sol.cover.max_deviation)}};
  res["u_decay"] = decay_json(sol.u_decay, "");
  res["Lu_decay"] = sol.Lu_decay ? decay_json(sol.Lu_decay, "") : json{{"verdict", "ZERO"}, {"note", "L u vanishes termwise"}};
  write_json(res, c.dir, "residual");
  out << "counterexample: " << singular_kind_name(sol.kind) << ", " << sol.terms.size() << " terms, u decay "
      << decay_kind_name(sol.u_decay->verdict);
  if (sol.Lu_decay) out << ", L u decay " << decay_kind_name(sol.Lu_decay->verdict);
  out << "\n";
  return kOk;
}

int cmd_verify(const Context& c, const Flags&, std::ostream& out) {
  const auto results = run_invariants(c.file.scenario);
  Table t{"invariants", {"name", "passed", "samples", "violations", "worst", "tolerance", "detail"}, {}};
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    t.add({r.name, r.passed ? "true" : "false", std::to_string(r.samples), std::to_string(r.violations), num(r.worst),
           num(r.tolerance), r.detail});
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
  }
  write_table(t, c.dir, c.format);
  json doc = metadata(c, "verify");
  doc["passed"] = passed;
  doc["failed"] = results.size() - passed;
  write_json(doc, c.dir, "verify");
  out << passed << " passed, " << results.size() - passed << " failed\n";
  return passed == results.size() ? kOk : kError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gh-lab: global hypoellipticity diagnostics on M x T^m"};
  app.require_subcommand(1);
  Flags f;
  const std::vector<std::string> names{"classify", "periods", "dcscan", "solve", "counterexample", "verify"};
  const std::vector<std::string> help{"classify the period matrix", "exact and quadrature periods",
                                      "brute Diophantine scan", "solve L u = f mode by mode",
                                      "build a singular solution", "run the invariant suite"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("scenario", f.scenario, "scenario TOML file")->required();
    sub->add_option("--xi-max", f.xi_max, "Fourier cutoff")->check(CLI::Range(0L, 4096L));
    sub->add_option("--radius", f.radius, "scan radius")->check(CLI::Range(1L, 1000000L));
    sub->add_option("--terms", f.terms, "counterexample terms")->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
    sub->add_option("--tol", f.tol, "divisor tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--grid", f.grid, "core grid nodes per axis")->check(CLI::Range(std::size_t{4}, std::size_t{1024}));
    sub->add_option("--precision-bits", f.precision_bits, "enclosure precision")->check(CLI::Range(64u, 65536u));
    sub->add_option("--threads", f.threads, "worker threads (0: hardware)")->envname("GHLAB_THREADS");
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--format", f.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    if (names[i] == "counterexample")
      sub->add_option("--kind", f.kind, "rational or liouville")->check(CLI::IsMember({"rational", "liouville"}));
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Context c{load_scenario(f.scenario), "", "", f.threads};
    c.dir = f.out ? *f.out : c.file.output.directory;
    c.format = f.format ? *f.format : c.file.output.format;
    if (command == "classify") return cmd_classify(c, f, out);
    if (command == "periods") return cmd_periods(c, f, out);
    if (command == "dcscan") return cmd_dcscan(c, f, out);
    if (command == "solve") return cmd_solve(c, f, out);
    if (command == "counterexample") return cmd_counterexample(c, f, out);
    return cmd_verify(c, f, out);
  } catch (const Indeterminate& e) {
    err << "indeterminate: " << e.what() << "\n";
    return kIndeterminate;
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace ghlab::cli
