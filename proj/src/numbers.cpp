#include "ghlab/numbers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "ghlab/errors.hpp"

namespace ghlab {

namespace {

BigInt pow_ui(unsigned long base, unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

BigRational canonical(BigRational x) {
  x.canonicalize();
  return x;
}

// largest witness denominator materialised, in bits
constexpr double kMaxLiouvilleBits = 1u << 26;

std::size_t bit_length(const BigInt& n) {
  return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

}  // namespace

BigInt floor_of(const BigRational& x) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw InvalidArgument("isqrt of a negative integer");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const BigInt& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

BigRational dyadic_epsilon(unsigned bits) {
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
  return BigRational(BigInt(1), den);
}

double Enclosure::to_double() const { return midpoint().get_d(); }

Enclosure Enclosure::abs() const {
  if (lo >= 0) return *this;
  if (hi <= 0) return -*this;
  return {BigRational(0), std::max(BigRational(-lo), hi)};
}

Enclosure operator*(const BigRational& k, const Enclosure& e) {
  if (k >= 0) return {k * e.lo, k * e.hi};
  return {k * e.hi, k * e.lo};
}

Enclosure max(const Enclosure& a, const Enclosure& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

LiouvilleSchedule LiouvilleSchedule::factorial() {
  LiouvilleSchedule s;
  s.name = "factorial";
  s.exponent = [](std::size_t j) {
    unsigned long f = 1;
    for (std::size_t i = 2; i <= j; ++i) f *= i;
    return f;
  };
  s.max_index = 20;
  return s;
}

// ---------------------------------------------------------------------------
// Construction

NumberRepr NumberRepr::rational(BigRational value) { return NumberRepr(Rational{canonical(std::move(value))}); }

NumberRepr NumberRepr::rational(long p, long q) {
  if (q == 0) throw InvalidArgument("rational with zero denominator");
  return rational(BigRational(BigInt(p), BigInt(q)));
}

NumberRepr NumberRepr::quadratic(BigInt a, BigInt b, BigInt D, BigInt c) {
  if (c == 0) throw InvalidArgument("quadratic irrational with zero denominator");
  if (D <= 0) throw InvalidArgument("quadratic irrational needs D > 0");
  if (b == 0) throw InvalidArgument("quadratic irrational needs b != 0 (use a rational)");
  // move square factors of D into b
  for (BigInt p = 2; p * p <= D; ++p) {
    const BigInt p2 = p * p;
    while (D % p2 == 0) {
      D /= p2;
      b *= p;
    }
  }
  if (D == 1) throw InvalidArgument("quadratic irrational needs D not a perfect square");
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  BigInt g = gcd(gcd(a, b), c);
  if (g > 1) {
    a /= g;
    b /= g;
    c /= g;
  }
  return NumberRepr(Quadratic{a, b, c, D});
}

NumberRepr NumberRepr::golden_ratio() { return quadratic(1, 1, 5, 2); }

NumberRepr NumberRepr::sqrt(long D) { return quadratic(0, 1, D, 1); }

NumberRepr NumberRepr::continued_fraction(std::vector<BigInt> prefix, std::vector<BigInt> period) {
  if (prefix.empty()) throw InvalidArgument("continued fraction needs a0");
  for (std::size_t k = 1; k < prefix.size(); ++k)
    if (prefix[k] < 1) throw InvalidArgument("partial quotients a_k (k >= 1) must be positive");
  for (const auto& a : period)
    if (a < 1) throw InvalidArgument("partial quotients a_k (k >= 1) must be positive");
  if (period.empty()) {
    // finite expansion: fold back into an exact rational
    BigRational x(prefix.back());
    for (std::size_t k = prefix.size() - 1; k-- > 0;) x = BigRational(prefix[k]) + 1 / x;
    return rational(x);
  }
  // y = [(period)] solves k1 y^2 + (k0 - h1) y - h0 = 0 with h1/k1, h0/k0 the
  // last two convergents of one period
  BigInt h0 = 1, k0 = 0, h1 = period[0], k1 = 1;
  for (std::size_t i = 1; i < period.size(); ++i) {
    BigInt h2 = period[i] * h1 + h0, k2 = period[i] * k1 + k0;
    h0 = std::move(h1);
    k0 = std::move(k1);
    h1 = std::move(h2);
    k1 = std::move(k2);
  }
  const BigInt disc = (k0 - h1) * (k0 - h1) + 4 * k1 * h0;
  NumberRepr x = quadratic(h1 - k0, 1, disc, 2 * k1);
  for (std::size_t k = prefix.size(); k-- > 0;) x = NumberRepr::rational(BigRational(prefix[k])) + reciprocal(x);
  return x;
}

NumberRepr NumberRepr::continued_fraction(std::function<BigInt(std::size_t)> quotient, std::size_t cutoff,
                                          std::string literal) {
  if (cutoff == 0) throw InvalidArgument("continued fraction stream needs a positive cutoff");
  ContinuedFraction cf;
  cf.quotient = std::make_shared<const std::function<BigInt(std::size_t)>>(std::move(quotient));
  cf.cutoff = cutoff;
  cf.literal = std::move(literal);
  return NumberRepr(std::move(cf));
}

NumberRepr NumberRepr::liouville(unsigned long base, LiouvilleSchedule schedule) {
  if (base < 2) throw InvalidArgument("Liouville base must be >= 2");
  if (!schedule.exponent || schedule.max_index < 2) throw InvalidArgument("Liouville schedule is empty");
  if (schedule.exponent(1) < 1) throw InvalidArgument("Liouville schedule must start at e_1 >= 1");
  for (std::size_t j = 1; j < schedule.max_index; ++j) {
    const unsigned long ej = schedule.exponent(j);
    const unsigned long ej1 = schedule.exponent(j + 1);
    if (ej1 <= ej || ej1 < (j + 1) * ej)
      throw InvalidArgument("Liouville schedule must satisfy e_{j+1} >= (j+1) e_j");
  }
  return NumberRepr(Liouville{base, std::move(schedule)});
}

// ---------------------------------------------------------------------------
// Queries

bool NumberRepr::is_integer() const {
  const auto* r = std::get_if<Rational>(&v_);
  return r != nullptr && r->value.get_den() == 1;
}

std::optional<BigRational> NumberRepr::as_rational() const {
  if (const auto* r = std::get_if<Rational>(&v_)) return r->value;
  return std::nullopt;
}

LiouvilleTerm NumberRepr::liouville_term(std::size_t j) const {
  const auto* l = as_liouville();
  if (l == nullptr) throw InvalidArgument("liouville_term on a non-Liouville number");
  if (j < 1 || j > l->schedule.max_index) throw PrecisionExhausted("Liouville schedule index out of range");
  const unsigned long ej = l->schedule.exponent(j);
  LiouvilleTerm t;
  t.q = pow_ui(l->base, ej);
  t.p = 0;
  for (std::size_t i = 1; i <= j; ++i) t.p += pow_ui(l->base, ej - l->schedule.exponent(i));
  return t;
}

Enclosure NumberRepr::enclose(unsigned bits) const {
  const BigRational eps = dyadic_epsilon(bits);
  return std::visit(
      [&](const auto& x) -> Enclosure {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>) {
          return Enclosure::exact(x.value);
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          const unsigned long k = bits + bit_length(abs(x.b)) + 2;
          BigInt scaled = x.D;
          mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * k);
          const BigInt s = isqrt(scaled);
          BigInt two_k;
          mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k);
          Enclosure root{BigRational(s, two_k), BigRational(BigInt(s + 1), two_k)};
          root.lo.canonicalize();
          root.hi.canonicalize();
          Enclosure num = BigRational(x.b) * root;
          num.lo += x.a;
          num.hi += x.a;
          return BigRational(BigInt(1), x.c) * num;
        } else if constexpr (std::is_same_v<T, ContinuedFraction>) {
          const auto& q = *x.quotient;
          BigInt p_prev = 1, q_prev = 0;
          BigInt p_cur = q(0), q_cur = 1;
          for (std::size_t k = 1; k < x.cutoff; ++k) {
            const BigInt a = q(k);
            BigInt p_next = a * p_cur + p_prev;
            BigInt q_next = a * q_cur + q_prev;
            p_prev = std::move(p_cur);
            q_prev = std::move(q_cur);
            p_cur = std::move(p_next);
            q_cur = std::move(q_next);
            // value lies between consecutive convergents; width 1/(q_prev q_cur)
            if (BigRational(BigInt(1), BigInt(q_prev * q_cur)) <= eps) {
              BigRational c0 = canonical(BigRational(p_prev, q_prev));
              BigRational c1 = canonical(BigRational(p_cur, q_cur));
              return {std::min(c0, c1), std::max(c0, c1)};
            }
          }
          throw PrecisionExhausted("continued fraction cutoff reached before width 2^-" + std::to_string(bits));
        } else {
          // S_J + tail, tail in (b^{-e_{J+1}}, b^{-e_{J+1}} b/(b-1)]
          for (std::size_t J = 1; J < x.schedule.max_index; ++J) {
            const unsigned long e_next = x.schedule.exponent(J + 1);
            const double log_q = static_cast<double>(e_next) * std::log2(static_cast<double>(x.base));
            if (log_q + std::log2(static_cast<double>(x.base - 1)) < bits) continue;
            if (log_q > kMaxLiouvilleBits) break;
            const BigInt q_next = pow_ui(x.base, e_next);
            BigRational tail_width(BigInt(1), BigInt(q_next * (x.base - 1)));
            tail_width.canonicalize();
            if (tail_width > eps) continue;
            const LiouvilleTerm t = liouville_term(J);
            BigRational partial = canonical(BigRational(t.p, t.q));
            BigRational lo = partial + canonical(BigRational(BigInt(1), q_next));
            BigRational hi = partial + canonical(BigRational(BigInt(x.base), BigInt(q_next * (x.base - 1))));
            return {lo, hi};
          }
          throw PrecisionExhausted("Liouville schedule too short for width 2^-" + std::to_string(bits));
        }
      },
      v_);
}

double NumberRepr::to_double() const { return enclose(64).to_double(); }

std::string NumberRepr::literal() const {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>) {
          return x.value.get_str();
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          std::string s = "(" + x.a.get_str() + (x.b < 0 ? "-" : "+") + BigInt(abs(x.b)).get_str() + "*sqrt(" +
                          x.D.get_str() + "))";
          if (x.c != 1) s += "/" + x.c.get_str();
          return s;
        } else if constexpr (std::is_same_v<T, ContinuedFraction>) {
          return x.literal;
        } else {
          return "liouville:base=" + std::to_string(x.base) + ",schedule=" + x.schedule.name;
        }
      },
      v_);
}

std::string NumberRepr::kind_name() const {
  switch (v_.index()) {
    case 0: return "rational";
    case 1: return "quadratic_irrational";
    case 2: return "cf_stream";
    default: return "liouville_constructed";
  }
}

bool NumberRepr::operator==(const NumberRepr& other) const {
  if (v_.index() != other.v_.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(other.v_);
        if constexpr (std::is_same_v<T, Rational>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          return x.a == y.a && x.b == y.b && x.c == y.c && x.D == y.D;
        } else if constexpr (std::is_same_v<T, ContinuedFraction>) {
          return x.literal == y.literal && x.cutoff == y.cutoff;
        } else {
          return x.base == y.base && x.schedule.name == y.schedule.name;
        }
      },
      v_);
}

NumberRepr operator+(const NumberRepr& x, const NumberRepr& y) {
  const auto rx = x.as_rational();
  const auto ry = y.as_rational();
  if (rx && ry) return NumberRepr::rational(*rx + *ry);
  const auto* qx = x.as_quadratic();
  const auto* qy = y.as_quadratic();
  if (qx && ry) {
    const BigRational a = BigRational(qx->a, qx->c) + *ry;
    // (A + b sqrt D)/c with A rational: clear the denominator of A
    const BigRational ac = a * BigRational(qx->c);
    const BigInt den = ac.get_den();
    return NumberRepr::quadratic(ac.get_num(), qx->b * den, qx->D, qx->c * den);
  }
  if (rx && qy) return y + x;
  if (qx && qy && qx->D == qy->D) {
    const BigInt b = qx->b * qy->c + qy->b * qx->c;
    const BigInt a = qx->a * qy->c + qy->a * qx->c;
    const BigInt c = qx->c * qy->c;
    if (b == 0) return NumberRepr::rational(BigRational(a, c));
    return NumberRepr::quadratic(a, b, qx->D, c);
  }
  throw InvalidArgument("exact sum not supported for " + x.kind_name() + " + " + y.kind_name());
}

NumberRepr reciprocal(const NumberRepr& x) {
  if (auto r = x.as_rational()) {
    if (*r == 0) throw InvalidArgument("reciprocal of zero");
    return NumberRepr::rational(1 / *r);
  }
  if (const auto* q = x.as_quadratic()) return NumberRepr::quadratic(q->c * q->a, -q->c * q->b, q->D, q->a * q->a - q->b * q->b * q->D);
  throw InvalidArgument("exact reciprocal not supported for " + x.kind_name());
}

NumberRepr operator*(const BigRational& k, const NumberRepr& x) {
  if (k == 0) return NumberRepr::rational(0);
  if (auto r = x.as_rational()) return NumberRepr::rational(k * *r);
  if (const auto* q = x.as_quadratic()) {
    const BigInt n = k.get_num();
    const BigInt d = k.get_den();
    return NumberRepr::quadratic(n * q->a, n * q->b, q->D, d * q->c);
  }
  throw InvalidArgument("exact scaling not supported for " + x.kind_name());
}

// ---------------------------------------------------------------------------
// Continued fractions

BigInt QuadraticExpansion::max_partial_quotient() const {
  BigInt m = 0;
  for (std::size_t k = 1; k < prefix.size(); ++k) m = std::max(m, prefix[k]);
  for (const auto& a : period) m = std::max(m, a);
  return m;
}

BigInt QuadraticExpansion::at(std::size_t k) const {
  if (k < prefix.size()) return prefix[k];
  return period[(k - prefix.size()) % period.size()];
}

QuadraticExpansion expand_quadratic(const NumberRepr::Quadratic& q) {
  // x = (P + sqrt(N)) / Q with Q | N - P^2
  const int sign = q.b > 0 ? 1 : -1;
  BigInt P = sign * q.a;
  BigInt Q = sign * q.c;
  BigInt N = q.b * q.b * q.D;
  if (BigInt(N - P * P) % Q != 0) {
    const BigInt absq = abs(Q);
    P *= absq;
    N *= Q * Q;
    Q *= absq;
  }
  const BigInt s = isqrt(N);
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  std::vector<BigInt> quotients;
  while (true) {
    auto key = std::make_pair(P.get_str(16), Q.get_str(16));
    if (auto it = seen.find(key); it != seen.end()) {
      QuadraticExpansion e;
      e.prefix.assign(quotients.begin(), quotients.begin() + static_cast<long>(it->second));
      e.period.assign(quotients.begin() + static_cast<long>(it->second), quotients.end());
      return e;
    }
    seen.emplace(std::move(key), quotients.size());
    BigInt a;
    if (Q > 0) {
      mpz_fdiv_q(a.get_mpz_t(), BigInt(P + s).get_mpz_t(), Q.get_mpz_t());
    } else {
      BigInt absq = -Q;
      mpz_fdiv_q(a.get_mpz_t(), BigInt(P + s).get_mpz_t(), absq.get_mpz_t());
      a = -(a + 1);
    }
    quotients.push_back(a);
    P = a * Q - P;
    Q = (N - P * P) / Q;
  }
}

namespace {

// Partial quotients certified by both ends of an enclosure.
std::vector<BigInt> interval_quotients(Enclosure e, std::size_t count, bool& terminated) {
  std::vector<BigInt> out;
  terminated = false;
  while (out.size() < count) {
    const BigInt fl = floor_of(e.lo);
    const BigInt fh = floor_of(e.hi);
    if (fl != fh) break;
    out.push_back(fl);
    e.lo -= fl;
    e.hi -= fl;
    if (e.lo == 0) {
      if (e.hi == 0) terminated = true;
      break;
    }
    e = {1 / e.hi, 1 / e.lo};
  }
  return out;
}

}  // namespace

std::vector<BigInt> partial_quotients(const NumberRepr& x, std::size_t count) {
  if (auto r = x.as_rational()) {
    bool terminated = false;
    auto q = interval_quotients(Enclosure::exact(*r), count, terminated);
    if (q.size() < count)
      throw PrecisionExhausted("rational " + r->get_str() + " has only " + std::to_string(q.size()) +
                               " partial quotients");
    return q;
  }
  if (const auto* qi = x.as_quadratic()) {
    const QuadraticExpansion e = expand_quadratic(*qi);
    std::vector<BigInt> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(e.at(k));
    return out;
  }
  if (const auto* cf = x.as_continued_fraction()) {
    if (count > cf->cutoff)
      throw PrecisionExhausted("continued fraction stream cutoff " + std::to_string(cf->cutoff) + " reached");
    std::vector<BigInt> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back((*cf->quotient)(k));
    return out;
  }
  for (unsigned bits = 256; bits <= (1u << 16); bits *= 2) {
    bool terminated = false;
    auto q = interval_quotients(x.enclose(bits), count, terminated);
    if (q.size() >= count) return q;
  }
  throw PrecisionExhausted("could not certify " + std::to_string(count) + " partial quotients");
}

std::vector<BigRational> cf_convergents(const NumberRepr& x, std::size_t count) {
  if (count == 0) throw InvalidArgument("cf_convergents needs count >= 1");
  const auto a = partial_quotients(x, count);
  std::vector<BigRational> out;
  BigInt p_prev = 1, q_prev = 0, p_cur = a[0], q_cur = 1;
  out.emplace_back(p_cur, q_cur);
  for (std::size_t k = 1; k < count; ++k) {
    BigInt p_next = a[k] * p_cur + p_prev;
    BigInt q_next = a[k] * q_cur + q_prev;
    p_prev = std::move(p_cur);
    q_prev = std::move(q_cur);
    p_cur = std::move(p_next);
    q_cur = std::move(q_next);
    out.emplace_back(p_cur, q_cur);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nearest lattice point

std::string norm_name(Norm n) { return n == Norm::linf ? "linf" : "l1"; }

LatticePoint nearest_lattice(std::span<const Enclosure> v, Norm norm) {
  static const BigRational max_width = dyadic_epsilon(8);
  LatticePoint out;
  out.delta = Enclosure::exact(0);
  const BigRational half(1, 2);
  for (const auto& comp : v) {
    if (comp.width() >= max_width) throw InvalidArgument("nearest_lattice: enclosure wider than 2^-8");
    const BigRational mid = comp.midpoint();
    const BigInt rounded = floor_of(mid + half);
    if (comp.is_point() && BigRational(mid - floor_of(mid)) == half) out.tie = true;
    const BigInt eta = -rounded;
    const Enclosure r = (comp + Enclosure::exact(BigRational(eta))).abs();
    out.eta.push_back(eta);
    out.delta = norm == Norm::linf ? max(out.delta, r) : out.delta + r;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Literal grammar

namespace {

class LiteralCursor {
 public:
  explicit LiteralCursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  BigInt integer() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected integer");
    std::string text(s_.substr(start, pos_ - start));
    if (text[0] == '+') text.erase(0, 1);
    return BigInt(text);
  }
  std::string word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (pos_ == start) fail("expected a word");
    return std::string(s_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError("number literal: " + msg, pos_);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

NumberRepr parse_cf(LiteralCursor& c) {
  c.expect("[");
  std::vector<BigInt> prefix{c.integer()};
  std::vector<BigInt> period;
  if (c.accept(";")) {
    if (c.peek() != ']') {
      do {
        if (c.accept("(")) {
          do period.push_back(c.integer());
          while (c.accept(","));
          c.expect(")");
          break;
        }
        prefix.push_back(c.integer());
      } while (c.accept(","));
    }
  }
  c.expect("]");
  return NumberRepr::continued_fraction(std::move(prefix), std::move(period));
}

NumberRepr parse_liouville(LiteralCursor& c) {
  unsigned long base = 2;
  std::string schedule = "factorial";
  do {
    const std::string key = c.word();
    c.expect("=");
    if (key == "base") {
      const BigInt b = c.integer();
      if (b < 2 || !b.fits_ulong_p()) c.fail("base must be an integer >= 2");
      base = b.get_ui();
    } else if (key == "schedule") {
      schedule = c.word();
    } else {
      c.fail("unknown liouville key '" + key + "'");
    }
  } while (c.accept(","));
  if (schedule != "factorial") c.fail("unknown schedule '" + schedule + "' (supported: factorial)");
  return NumberRepr::liouville(base, LiouvilleSchedule::factorial());
}

NumberRepr parse_quadratic(LiteralCursor& c) {
  // (a+b*sqrt(D))/c, also (a-b*sqrt(D)), (a+sqrt(D)), sqrt(D)
  BigInt a = 0, b = 1, D, den = 1;
  const bool paren = c.accept("(");
  if (paren && c.peek() != 's') {
    a = c.integer();
    if (c.accept("+")) {
      b = 1;
    } else if (c.accept("-")) {
      b = -1;
    } else {
      c.fail("expected '+' or '-'");
    }
    if (c.peek() != 's') {
      b *= c.integer();
      c.expect("*");
    }
  }
  c.expect("sqrt");
  c.expect("(");
  D = c.integer();
  c.expect(")");
  if (paren) c.expect(")");
  if (c.accept("/")) den = c.integer();
  try {
    return NumberRepr::quadratic(a, b, D, den);
  } catch (const InvalidArgument& e) {
    c.fail(e.what());
  }
}

}  // namespace

NumberRepr parse_number(std::string_view text) {
  LiteralCursor c(text);
  NumberRepr out = NumberRepr::rational(0);
  if (c.accept("cf:")) {
    out = parse_cf(c);
  } else if (c.accept("liouville:")) {
    out = parse_liouville(c);
  } else if (text.find("sqrt") != std::string_view::npos) {
    out = parse_quadratic(c);
  } else {
    const BigInt p = c.integer();
    BigInt q = 1;
    if (c.accept("/")) q = c.integer();
    if (q == 0) c.fail("zero denominator");
    out = NumberRepr::rational(BigRational(p, q));
  }
  if (!c.done()) c.fail("trailing characters");
  return out;
}

}  // namespace ghlab
