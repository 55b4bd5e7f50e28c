#include "ghlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <numbers>

#include "ghlab/errors.hpp"

namespace ghlab {

struct ExprNode {
  Op op = Op::Const;
  double value = 0.0;
  std::size_t index = 0;
  int exponent = 0;
  std::shared_ptr<const ExprNode> a;
  std::shared_ptr<const ExprNode> b;
};

namespace {

bool is_binary(Op op) { return op == Op::Add || op == Op::Sub || op == Op::Mul || op == Op::Div; }

double ipow(double x, int n) {
  if (n < 0) return 1.0 / ipow(x, -n);
  double r = 1.0;
  while (n) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// VariableSet

VariableSet VariableSet::chart(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("t" + std::to_string(i));
  return VariableSet(std::move(names));
}

std::size_t VariableSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return names_.size();
}

// ---------------------------------------------------------------------------
// Expr nodes

Expr::Expr() {
  static const auto zero = std::make_shared<const ExprNode>();
  n_ = zero;
}

Expr Expr::constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Const;
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::pi() {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Pi;
  n->value = std::numbers::pi;
  return Expr(std::move(n));
}

Expr Expr::var(std::size_t index) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Var;
  n->index = index;
  return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr a, Expr b) {
  if (!is_binary(op)) throw InvalidArgument("Expr::binary with a non-binary op");
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->a = std::move(a.n_);
  n->b = std::move(b.n_);
  return Expr(std::move(n));
}

Expr Expr::unary(Op op, Expr a) {
  if (op != Op::Neg && op != Op::Sin && op != Op::Cos && op != Op::Exp)
    throw InvalidArgument("Expr::unary with a non-unary op");
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->a = std::move(a.n_);
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Pow;
  n->exponent = exponent;
  n->a = std::move(base.n_);
  return Expr(std::move(n));
}

Op Expr::op() const { return n_->op; }
double Expr::value() const { return n_->value; }
std::size_t Expr::index() const { return n_->index; }
int Expr::exponent() const { return n_->exponent; }
Expr Expr::lhs() const { return Expr(n_->a); }
Expr Expr::rhs() const { return Expr(n_->b); }

bool Expr::operator==(const Expr& o) const {
  if (n_ == o.n_) return true;
  if (op() != o.op()) return false;
  switch (op()) {
    case Op::Const: return std::memcmp(&n_->value, &o.n_->value, sizeof(double)) == 0;
    case Op::Pi: return true;
    case Op::Var: return index() == o.index();
    case Op::Pow: return exponent() == o.exponent() && lhs() == o.lhs();
    case Op::Neg:
    case Op::Sin:
    case Op::Cos:
    case Op::Exp: return lhs() == o.lhs();
    default: return lhs() == o.lhs() && rhs() == o.rhs();
  }
}

std::size_t Expr::arity() const {
  switch (op()) {
    case Op::Const:
    case Op::Pi: return 0;
    case Op::Var: return index() + 1;
    case Op::Pow:
    case Op::Neg:
    case Op::Sin:
    case Op::Cos:
    case Op::Exp: return lhs().arity();
    default: return std::max(lhs().arity(), rhs().arity());
  }
}

std::size_t Expr::node_count() const {
  switch (op()) {
    case Op::Const:
    case Op::Pi:
    case Op::Var: return 1;
    case Op::Pow:
    case Op::Neg:
    case Op::Sin:
    case Op::Cos:
    case Op::Exp: return 1 + lhs().node_count();
    default: return 1 + lhs().node_count() + rhs().node_count();
  }
}

// ---------------------------------------------------------------------------
// Smart constructors

namespace {

bool constant_value(const Expr& e, double& v) {
  if (e.op() == Op::Const || e.op() == Op::Pi) {
    v = e.value();
    return true;
  }
  return false;
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  double x = 0, y = 0;
  const bool ca = constant_value(a, x), cb = constant_value(b, y);
  if (ca && cb) return Expr::constant(x + y);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (b.op() == Op::Neg) return a - b.lhs();
  return Expr::binary(Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  double x = 0, y = 0;
  const bool ca = constant_value(a, x), cb = constant_value(b, y);
  if (ca && cb) return Expr::constant(x - y);
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a == b) return Expr::constant(0.0);
  if (b.op() == Op::Neg) return a + b.lhs();
  return Expr::binary(Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  double x = 0, y = 0;
  const bool ca = constant_value(a, x), cb = constant_value(b, y);
  if (ca && cb) return Expr::constant(x * y);
  if (a.is_zero() || b.is_zero()) return Expr::constant(0.0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (ca && x == -1.0) return -b;
  if (cb && y == -1.0) return -a;
  if (a.op() == Op::Neg && b.op() == Op::Neg) return a.lhs() * b.lhs();
  if (a.op() == Op::Neg) return -(a.lhs() * b);
  if (b.op() == Op::Neg) return -(a * b.lhs());
  return Expr::binary(Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  double x = 0, y = 0;
  const bool ca = constant_value(a, x), cb = constant_value(b, y);
  if (cb && y == 0.0) throw DomainViolation("division by the constant 0");
  if (ca && cb) return Expr::constant(x / y);
  if (a.is_zero()) return Expr::constant(0.0);
  if (b.is_one()) return a;
  if (a == b) return Expr::constant(1.0);
  return Expr::binary(Op::Div, a, b);
}

Expr operator-(const Expr& a) {
  double x = 0;
  if (constant_value(a, x)) return Expr::constant(-x);
  if (a.op() == Op::Neg) return a.lhs();
  return Expr::unary(Op::Neg, a);
}

Expr pow(const Expr& a, int n) {
  double x = 0;
  if (n == 0) return Expr::constant(1.0);
  if (n == 1) return a;
  if (constant_value(a, x)) {
    if (x == 0.0 && n < 0) throw DomainViolation("0 raised to a negative power");
    return Expr::constant(ipow(x, n));
  }
  if (a.op() == Op::Pow) return pow(a.lhs(), a.exponent() * n);
  return Expr::power(a, n);
}

Expr sin(const Expr& a) {
  double x = 0;
  if (a.is_zero()) return Expr::constant(0.0);
  if (a.op() == Op::Const && constant_value(a, x)) return Expr::constant(std::sin(x));
  return Expr::unary(Op::Sin, a);
}

Expr cos(const Expr& a) {
  double x = 0;
  if (a.is_zero()) return Expr::constant(1.0);
  if (a.op() == Op::Const && constant_value(a, x)) return Expr::constant(std::cos(x));
  return Expr::unary(Op::Cos, a);
}

Expr exp(const Expr& a) {
  double x = 0;
  if (a.is_zero()) return Expr::constant(1.0);
  if (a.op() == Op::Const && constant_value(a, x)) return Expr::constant(std::exp(x));
  return Expr::unary(Op::Exp, a);
}

Expr normalize(const Expr& e) {
  switch (e.op()) {
    case Op::Const:
    case Op::Pi:
    case Op::Var: return e;
    case Op::Pow: return Expr::power(normalize(e.lhs()), e.exponent());
    case Op::Neg: {
      const Expr a = normalize(e.lhs());
      if (a.op() == Op::Const) return Expr::constant(-a.value());
      return Expr::unary(Op::Neg, a);
    }
    case Op::Sin:
    case Op::Cos:
    case Op::Exp: return Expr::unary(e.op(), normalize(e.lhs()));
    default: return Expr::binary(e.op(), normalize(e.lhs()), normalize(e.rhs()));
  }
}

Expr simplify(const Expr& e) {
  switch (e.op()) {
    case Op::Const:
    case Op::Pi:
    case Op::Var: return e;
    case Op::Add: return simplify(e.lhs()) + simplify(e.rhs());
    case Op::Sub: return simplify(e.lhs()) - simplify(e.rhs());
    case Op::Mul: return simplify(e.lhs()) * simplify(e.rhs());
    case Op::Div: return simplify(e.lhs()) / simplify(e.rhs());
    case Op::Pow: return pow(simplify(e.lhs()), e.exponent());
    case Op::Neg: return -simplify(e.lhs());
    case Op::Sin: return sin(simplify(e.lhs()));
    case Op::Cos: return cos(simplify(e.lhs()));
    case Op::Exp: return exp(simplify(e.lhs()));
  }
  return e;
}

Expr differentiate(const Expr& e, std::size_t var) {
  switch (e.op()) {
    case Op::Const:
    case Op::Pi: return Expr::constant(0.0);
    case Op::Var: return Expr::constant(e.index() == var ? 1.0 : 0.0);
    case Op::Add: return differentiate(e.lhs(), var) + differentiate(e.rhs(), var);
    case Op::Sub: return differentiate(e.lhs(), var) - differentiate(e.rhs(), var);
    case Op::Mul: {
      const Expr& a = e.lhs();
      const Expr& b = e.rhs();
      return differentiate(a, var) * b + a * differentiate(b, var);
    }
    case Op::Div: {
      const Expr& a = e.lhs();
      const Expr& b = e.rhs();
      const Expr da = differentiate(a, var);
      const Expr db = differentiate(b, var);
      if (db.is_zero()) return da / b;
      return (da * b - a * db) / pow(b, 2);
    }
    case Op::Pow: {
      const int n = e.exponent();
      const Expr& a = e.lhs();
      return Expr::constant(static_cast<double>(n)) * (differentiate(a, var) * pow(a, n - 1));
    }
    case Op::Neg: return -differentiate(e.lhs(), var);
    case Op::Sin: return differentiate(e.lhs(), var) * cos(e.lhs());
    case Op::Cos: return -(differentiate(e.lhs(), var) * sin(e.lhs()));
    case Op::Exp: return differentiate(e.lhs(), var) * e;
  }
  return Expr::constant(0.0);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VariableSet& vars) : s_(text), vars_(vars) {}

  Expr run() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError("empty expression", pos_);
    Expr e = expr();
    skip();
    if (pos_ < s_.size()) throw SyntaxError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw SyntaxError(std::string("expected '") + c + "'", pos_);
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      if (accept('+')) {
        e = Expr::binary(Op::Add, e, term());
      } else if (accept('-')) {
        e = Expr::binary(Op::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    while (true) {
      if (accept('*')) {
        e = Expr::binary(Op::Mul, e, factor());
      } else if (accept('/')) {
        e = Expr::binary(Op::Div, e, factor());
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    Expr base = atom();
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
        neg = s_[pos_] == '-';
        ++pos_;
      }
      const std::size_t digits = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == digits) throw SyntaxError("exponent must be an integer literal", start);
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
        throw SyntaxError("exponent must be an integer literal", start);
      const long n = std::strtol(std::string(s_.substr(digits, pos_ - digits)).c_str(), nullptr, 10);
      if (n > 1000) throw SyntaxError("exponent too large", start);
      base = Expr::power(base, static_cast<int>(neg ? -n : n));
    }
    return base;
  }

  Expr atom() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      Expr a = atom();
      if (a.op() == Op::Const) return Expr::constant(-a.value());
      return Expr::unary(Op::Neg, a);
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string_view id = s_.substr(start, pos_ - start);
      if (id == "pi") return Expr::pi();
      if (id == "sin" || id == "cos" || id == "exp") {
        expect('(');
        Expr arg = expr();
        expect(')');
        const Op op = id == "sin" ? Op::Sin : id == "cos" ? Op::Cos : Op::Exp;
        return Expr::unary(op, arg);
      }
      const std::size_t idx = vars_.find(id);
      if (idx == vars_.size()) throw UnknownIdentifier(std::string(id), start);
      return Expr::var(idx);
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        pos_ = p;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    const std::string text(s_.substr(start, pos_ - start));
    if (text == ".") throw SyntaxError("malformed number", start);
    return Expr::constant(std::strtod(text.c_str(), nullptr));
  }

  std::string_view s_;
  const VariableSet& vars_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Pow: return 3;
    case Op::Const: return e.value() < 0 || std::signbit(e.value()) ? 0 : 5;
    case Op::Neg: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[64];
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", v);
  }
  return buf;
}

void print(const Expr& e, const VariableSet& vars, std::string& out);

void print_paren(const Expr& e, const VariableSet& vars, std::string& out, bool paren) {
  if (paren) out += '(';
  print(e, vars, out);
  if (paren) out += ')';
}

void print(const Expr& e, const VariableSet& vars, std::string& out) {
  switch (e.op()) {
    case Op::Const: {
      // negative constants print parenthesised so that they parse back as constants
      const double v = e.value();
      if (std::signbit(v)) {
        out += "(-" + format_number(-v) + ")";
      } else {
        out += format_number(v);
      }
      return;
    }
    case Op::Pi: out += "pi"; return;
    case Op::Var:
      out += e.index() < vars.size() ? vars.name(e.index()) : "v" + std::to_string(e.index());
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const int p = precedence(e);
      print_paren(e.lhs(), vars, out, precedence(e.lhs()) < p);
      out += e.op() == Op::Add ? " + " : e.op() == Op::Sub ? " - " : e.op() == Op::Mul ? "*" : "/";
      print_paren(e.rhs(), vars, out, precedence(e.rhs()) <= p);
      return;
    }
    case Op::Pow:
      print_paren(e.lhs(), vars, out, precedence(e.lhs()) < 5);
      out += "^" + std::to_string(e.exponent());
      return;
    case Op::Neg:
      out += '-';
      print_paren(e.lhs(), vars, out, precedence(e.lhs()) < 5);
      return;
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
      out += e.op() == Op::Sin ? "sin(" : e.op() == Op::Cos ? "cos(" : "exp(";
      print(e.lhs(), vars, out);
      out += ')';
      return;
  }
}

}  // namespace

Expr parse_expr(std::string_view text, const VariableSet& vars) { return Parser(text, vars).run(); }

std::string to_string(const Expr& e, const VariableSet& vars) {
  std::string out;
  print(e, vars, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double eval_rec(const Expr& e, std::span<const double> x) {
  switch (e.op()) {
    case Op::Const:
    case Op::Pi: return e.value();
    case Op::Var:
      if (e.index() >= x.size()) throw InvalidArgument("evaluation point has too few coordinates");
      return x[e.index()];
    case Op::Add: return eval_rec(e.lhs(), x) + eval_rec(e.rhs(), x);
    case Op::Sub: return eval_rec(e.lhs(), x) - eval_rec(e.rhs(), x);
    case Op::Mul: return eval_rec(e.lhs(), x) * eval_rec(e.rhs(), x);
    case Op::Div: {
      const double den = eval_rec(e.rhs(), x);
      if (den == 0.0) throw DomainViolation("division by zero");
      return eval_rec(e.lhs(), x) / den;
    }
    case Op::Pow: return ipow(eval_rec(e.lhs(), x), e.exponent());
    case Op::Neg: return -eval_rec(e.lhs(), x);
    case Op::Sin: return std::sin(eval_rec(e.lhs(), x));
    case Op::Cos: return std::cos(eval_rec(e.lhs(), x));
    case Op::Exp: return std::exp(eval_rec(e.lhs(), x));
  }
  return 0.0;
}

void collect_denominators(const Expr& e, std::vector<Expr>& out) {
  switch (e.op()) {
    case Op::Const:
    case Op::Pi:
    case Op::Var: return;
    case Op::Pow:
      if (e.exponent() < 0) out.push_back(e.lhs());
      collect_denominators(e.lhs(), out);
      return;
    case Op::Neg:
    case Op::Sin:
    case Op::Cos:
    case Op::Exp: collect_denominators(e.lhs(), out); return;
    case Op::Div: out.push_back(e.rhs()); [[fallthrough]];
    default:
      collect_denominators(e.lhs(), out);
      collect_denominators(e.rhs(), out);
  }
}

}  // namespace

double evaluate(const Expr& e, std::span<const double> point) {
  const double v = eval_rec(e, point);
  if (!std::isfinite(v)) throw DomainViolation("non-finite value");
  return v;
}

void check_domain(const Expr& e, std::span<const std::vector<double>> points, const VariableSet& vars) {
  std::vector<Expr> dens;
  collect_denominators(e, dens);
  // a denominator taking both signs on the connected domain vanishes somewhere
  std::vector<int> sign(dens.size(), 0);
  for (const auto& p : points) {
    for (std::size_t k = 0; k < dens.size(); ++k) {
      const double v = eval_rec(dens[k], p);
      const int s = v > 0 ? 1 : -1;
      if (!(std::fabs(v) > 1e-12) || (sign[k] != 0 && sign[k] != s))
        throw DomainViolation("denominator " + to_string(dens[k], vars) + " vanishes in the chart domain");
      sign[k] = s;
    }
    const double v = eval_rec(e, p);
    if (!std::isfinite(v)) throw DomainViolation("expression " + to_string(e, vars) + " is not finite on the domain");
  }
}

// ---------------------------------------------------------------------------
// Program

Program::Program(const Expr& root) {
  std::size_t depth = 0;
  auto emit = [&](auto&& self, const Expr& e) -> void {
    switch (e.op()) {
      case Op::Const:
      case Op::Pi:
        code_.push_back({Op::Const, 0, e.value()});
        ++depth;
        break;
      case Op::Var:
        code_.push_back({Op::Var, static_cast<int>(e.index()), 0.0});
        constant_ = false;
        ++depth;
        break;
      case Op::Pow:
        self(self, e.lhs());
        code_.push_back({Op::Pow, e.exponent(), 0.0});
        break;
      case Op::Neg:
      case Op::Sin:
      case Op::Cos:
      case Op::Exp:
        self(self, e.lhs());
        code_.push_back({e.op(), 0, 0.0});
        break;
      default:
        self(self, e.lhs());
        self(self, e.rhs());
        code_.push_back({e.op(), 0, 0.0});
        --depth;
    }
    depth_ = std::max(depth_, depth);
  };
  emit(emit, root);
}

double Program::operator()(std::span<const double> x) const {
  if (code_.empty()) return 0.0;
  constexpr std::size_t kInline = 64;
  double inline_stack[kInline];
  std::vector<double> heap;
  double* st = inline_stack;
  if (depth_ > kInline) {
    heap.resize(depth_);
    st = heap.data();
  }
  std::size_t sp = 0;
  for (const auto& in : code_) {
    switch (in.op) {
      case Op::Const: st[sp++] = in.value; break;
      case Op::Var: st[sp++] = x[static_cast<std::size_t>(in.arg)]; break;
      case Op::Add: --sp; st[sp - 1] += st[sp]; break;
      case Op::Sub: --sp; st[sp - 1] -= st[sp]; break;
      case Op::Mul: --sp; st[sp - 1] *= st[sp]; break;
      case Op::Div: --sp; st[sp - 1] /= st[sp]; break;
      case Op::Pow: st[sp - 1] = ipow(st[sp - 1], in.arg); break;
      case Op::Neg: st[sp - 1] = -st[sp - 1]; break;
      case Op::Sin: st[sp - 1] = std::sin(st[sp - 1]); break;
      case Op::Cos: st[sp - 1] = std::cos(st[sp - 1]); break;
      case Op::Exp: st[sp - 1] = std::exp(st[sp - 1]); break;
      case Op::Pi: break;
    }
  }
  const double v = st[0];
  if (!std::isfinite(v)) throw DomainViolation("non-finite value");
  return v;
}

// ---------------------------------------------------------------------------
// Complex expressions

ComplexExpr operator+(const ComplexExpr& a, const ComplexExpr& b) { return {a.re + b.re, a.im + b.im}; }
ComplexExpr operator-(const ComplexExpr& a, const ComplexExpr& b) { return {a.re - b.re, a.im - b.im}; }
ComplexExpr operator*(const ComplexExpr& a, const ComplexExpr& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
ComplexExpr operator*(const Expr& a, const ComplexExpr& b) { return {a * b.re, a * b.im}; }
ComplexExpr times_i(const ComplexExpr& a) { return {-a.im, a.re}; }

ComplexExpr differentiate(const ComplexExpr& e, std::size_t var) {
  return {differentiate(e.re, var), differentiate(e.im, var)};
}

std::complex<double> evaluate(const ComplexExpr& e, std::span<const double> point) {
  return {evaluate(e.re, point), evaluate(e.im, point)};
}

std::string to_string(const ComplexExpr& e, const VariableSet& vars) {
  if (e.im.is_zero()) return to_string(e.re, vars);
  std::string s = e.re.is_zero() ? std::string() : to_string(e.re, vars) + " + ";
  return s + "i*(" + to_string(e.im, vars) + ")";
}

}  // namespace ghlab
