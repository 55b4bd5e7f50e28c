#pragma once

// Scalar expressions over a fixed set of real variables: parser, printer,
// constant-folding simplifier, exact symbolic derivative and evaluators.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' int)?
//   atom   := number | 'pi' | var | func '(' expr ')' | '(' expr ')' | '-' atom
//   func   := 'sin' | 'cos' | 'exp'

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ghlab {

class VariableSet {
 public:
  VariableSet() = default;
  explicit VariableSet(std::vector<std::string> names) : names_(std::move(names)) {}
  /// t1, ..., tn
  static VariableSet chart(std::size_t n);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  /// index of `name`, or size() when absent
  std::size_t find(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

enum class Op { Const, Pi, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };

struct ExprNode;

class Expr {
 public:
  /// The constant 0.
  Expr();

  static Expr constant(double v);
  static Expr pi();
  static Expr var(std::size_t index);

  // Raw constructors: build the node exactly as given.
  static Expr binary(Op op, Expr a, Expr b);
  static Expr unary(Op op, Expr a);
  static Expr power(Expr base, int exponent);

  Op op() const;
  double value() const;       // Const only
  std::size_t index() const;  // Var only
  int exponent() const;       // Pow only
  Expr lhs() const;  // first operand
  Expr rhs() const;  // second operand of binary nodes

  bool is_const() const { return op() == Op::Const; }
  bool is_zero() const { return is_const() && value() == 0.0; }
  bool is_one() const { return is_const() && value() == 1.0; }

  /// Structural equality (constants compared bitwise-equal as doubles).
  bool operator==(const Expr& other) const;

  /// Largest variable index used plus one.
  std::size_t arity() const;
  std::size_t node_count() const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : n_(std::move(n)) {}
  std::shared_ptr<const ExprNode> n_;
};

// Smart constructors: fold constants and drop neutral elements.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& a, int n);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr exp(const Expr& a);

Expr parse_expr(std::string_view text, const VariableSet& vars);
std::string to_string(const Expr& e, const VariableSet& vars);

/// Folds negated literals -(c) into constants; the parser produces this form,
/// so parse(to_string(e)) == normalize(e).
Expr normalize(const Expr& e);
/// Bottom-up rebuild through the smart constructors.
Expr simplify(const Expr& e);
Expr differentiate(const Expr& e, std::size_t var);

/// Throws DomainViolation on a non-finite result.
double evaluate(const Expr& e, std::span<const double> point);

/// Throws DomainViolation if some division denominator is within 1e-12 of
/// zero or changes sign across the points (which sample a connected domain),
/// or if the value is non-finite at any of them.
void check_domain(const Expr& e, std::span<const std::vector<double>> points, const VariableSet& vars);

/// Postfix tape for repeated evaluation.
class Program {
 public:
  Program() = default;
  explicit Program(const Expr& e);
  double operator()(std::span<const double> point) const;
  bool is_constant() const { return constant_; }

 private:
  struct Instr {
    Op op;
    int arg;
    double value;
  };
  std::vector<Instr> code_;
  std::size_t depth_ = 0;
  bool constant_ = true;
};

/// re + i*im with real expressions.
struct ComplexExpr {
  Expr re;
  Expr im;

  static ComplexExpr real(Expr e) { return {std::move(e), Expr()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool operator==(const ComplexExpr& o) const { return re == o.re && im == o.im; }
};

ComplexExpr operator+(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr operator-(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr operator*(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr operator*(const Expr& a, const ComplexExpr& b);
/// i * a
ComplexExpr times_i(const ComplexExpr& a);
ComplexExpr differentiate(const ComplexExpr& e, std::size_t var);
std::complex<double> evaluate(const ComplexExpr& e, std::span<const double> point);
std::string to_string(const ComplexExpr& e, const VariableSet& vars);

class ComplexProgram {
 public:
  ComplexProgram() = default;
  explicit ComplexProgram(const ComplexExpr& e) : re_(e.re), im_(e.im) {}
  std::complex<double> operator()(std::span<const double> point) const { return {re_(point), im_(point)}; }

 private:
  Program re_;
  Program im_;
};

}  // namespace ghlab
