#pragma once

// Number tower for period entries: exact rationals, quadratic irrationals,
// continued-fraction streams and constructed Liouville numbers. Every value can
// be enclosed in a rational interval of any requested width.

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ghlab {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline constexpr unsigned kDefaultPrecisionBits = 200;

/// Closed rational interval [lo, hi].
struct Enclosure {
  BigRational lo;
  BigRational hi;

  static Enclosure exact(const BigRational& x) { return {x, x}; }

  BigRational width() const { return hi - lo; }
  BigRational midpoint() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const BigRational& x) const { return lo <= x && x <= hi; }
  bool contains(const Enclosure& other) const { return lo <= other.lo && other.hi <= hi; }
  double to_double() const;

  Enclosure operator+(const Enclosure& o) const { return {lo + o.lo, hi + o.hi}; }
  Enclosure operator-(const Enclosure& o) const { return {lo - o.hi, hi - o.lo}; }
  Enclosure operator-() const { return {-hi, -lo}; }
  Enclosure abs() const;
};

Enclosure operator*(const BigRational& k, const Enclosure& e);
Enclosure max(const Enclosure& a, const Enclosure& b);

/// 2^{-bits} as an exact rational.
BigRational dyadic_epsilon(unsigned bits);

/// Exponent schedule e_1 < e_2 < ... of a constructed Liouville number.
struct LiouvilleSchedule {
  std::string name;
  std::function<unsigned long(std::size_t)> exponent;  // j >= 1
  std::size_t max_index = 0;                          // largest j with a representable exponent

  static LiouvilleSchedule factorial();
};

/// p_j / q_j with q_j = base^{e_j}: the j-th partial sum of a Liouville number.
struct LiouvilleTerm {
  BigInt p;
  BigInt q;
};

class NumberRepr {
 public:
  struct Rational {
    BigRational value;
  };
  /// (a + b*sqrt(D)) / c with c > 0, b != 0, D > 1 square-free.
  struct Quadratic {
    BigInt a, b, c, D;
  };
  struct ContinuedFraction {
    std::shared_ptr<const std::function<BigInt(std::size_t)>> quotient;
    std::size_t cutoff = 0;
    std::string literal;
  };
  struct Liouville {
    unsigned long base = 2;
    LiouvilleSchedule schedule;
  };

  static NumberRepr rational(BigRational value);
  static NumberRepr rational(long p, long q = 1);
  static NumberRepr quadratic(BigInt a, BigInt b, BigInt D, BigInt c);
  static NumberRepr golden_ratio();
  static NumberRepr sqrt(long D);
  /// Continued fraction [a0; a1, ..., (period...)]. Finite expansions give
  /// the exact rational, eventually periodic ones the exact quadratic surd.
  static NumberRepr continued_fraction(std::vector<BigInt> prefix, std::vector<BigInt> period = {});
  /// Generic stream a_k = quotient(k), k < cutoff.
  static NumberRepr continued_fraction(std::function<BigInt(std::size_t)> quotient, std::size_t cutoff,
                                       std::string literal);
  static NumberRepr liouville(unsigned long base, LiouvilleSchedule schedule);

  /// Rational interval of width <= 2^{-bits} containing the value.
  Enclosure enclose(unsigned bits = kDefaultPrecisionBits) const;
  double to_double() const;

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  bool is_integer() const;
  std::optional<BigRational> as_rational() const;
  const Quadratic* as_quadratic() const { return std::get_if<Quadratic>(&v_); }
  const ContinuedFraction* as_continued_fraction() const { return std::get_if<ContinuedFraction>(&v_); }
  const Liouville* as_liouville() const { return std::get_if<Liouville>(&v_); }
  /// Rational or quadratic irrational: linear relations are decidable exactly.
  bool is_algebraic_exact() const { return is_rational() || as_quadratic() != nullptr; }

  /// Witness partial sum of a constructed Liouville number.
  LiouvilleTerm liouville_term(std::size_t j) const;

  std::string literal() const;
  std::string kind_name() const;

  /// Exact for rationals and quadratic irrationals sharing the same D;
  /// throws InvalidArgument otherwise.
  friend NumberRepr operator+(const NumberRepr& x, const NumberRepr& y);
  friend NumberRepr operator*(const BigRational& k, const NumberRepr& x);
  friend NumberRepr reciprocal(const NumberRepr& x);

  bool operator==(const NumberRepr& other) const;

 private:
  using Storage = std::variant<Rational, Quadratic, ContinuedFraction, Liouville>;
  explicit NumberRepr(Storage v) : v_(std::move(v)) {}
  Storage v_;
};

/// Exact CF expansion of a quadratic irrational: eventually periodic.
struct QuadraticExpansion {
  std::vector<BigInt> prefix;  // a0, ..., before the period
  std::vector<BigInt> period;
  /// max a_k over k >= 1
  BigInt max_partial_quotient() const;
  BigInt at(std::size_t k) const;
};
QuadraticExpansion expand_quadratic(const NumberRepr::Quadratic& q);

std::vector<BigInt> partial_quotients(const NumberRepr& x, std::size_t count);

/// p_k/q_k, k < count, in lowest terms.
std::vector<BigRational> cf_convergents(const NumberRepr& x, std::size_t count);

enum class Norm { linf, l1 };
std::string norm_name(Norm n);

struct LatticePoint {
  std::vector<BigInt> eta;
  Enclosure delta;   // ||v + eta||
  bool tie = false;  // some component was exactly half-integral
};

/// eta* minimising ||v + eta|| over Z^d. Ties at half-integers take the
/// smaller eta (round toward -infinity) and are flagged.
LatticePoint nearest_lattice(std::span<const Enclosure> v, Norm norm = Norm::linf);

/// Parses "p/q", "(a+b*sqrt(D))/c", "cf:[a0;a1,...]" (optionally with a
/// parenthesised period at the end) and "liouville:base=B,schedule=factorial".
NumberRepr parse_number(std::string_view text);

BigInt floor_of(const BigRational& x);
BigInt isqrt(const BigInt& n);
bool is_perfect_square(const BigInt& n);

}  // namespace ghlab
