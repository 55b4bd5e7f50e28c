#include "ghlab/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "ghlab/errors.hpp"
#include "ghlab/intlinalg.hpp"

namespace ghlab {

namespace {

constexpr std::size_t kEnumerationCap = 4'000'000;
constexpr std::size_t kScanCap = 20'000'000;

std::string format_xi(const std::vector<long>& xi) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < xi.size(); ++i) os << (i ? "," : "") << xi[i];
  os << ')';
  return os.str();
}

long linf(const std::vector<long>& xi) {
  long n = 0;
  for (long v : xi) n = std::max(n, std::labs(v));
  return n;
}

// Visits every vector of [-r, r]^m with |v|_inf == r in lexicographic order;
// `normalised` keeps only those whose first nonzero component is positive.
// Stops early when `f` returns false.
bool for_each_in_shell(std::size_t m, long r, bool normalised, const std::function<bool(const std::vector<long>&)>& f) {
  std::vector<long> v(m, -r);
  if (normalised) v[0] = 0;
  while (true) {
    bool on_shell = false, positive = !normalised;
    for (long x : v) {
      if (std::labs(x) == r) on_shell = true;
      if (!positive && x != 0) {
        if (x < 0) break;
        positive = true;
      }
    }
    if (on_shell && positive && !f(v)) return false;
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (v[i] < r) {
        ++v[i];
        for (std::size_t j = i + 1; j < m; ++j) v[j] = -r;
        break;
      }
      if (i == 0) return true;
    }
  }
}

std::size_t shell_size(std::size_t m, long r) {
  const double outer = std::pow(2.0 * r + 1, static_cast<double>(m));
  const double inner = std::pow(2.0 * r - 1, static_cast<double>(m));
  return static_cast<std::size_t>(outer - inner);
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// Integer form of A restricted to `cols`: entry = r + sum_D s_D sqrt(D) with
// N*r and N*s_D integral. xi is a witness iff every N*S xi vanishes and
// N*R xi = 0 mod N, since 1 and the sqrt(D) are linearly independent over Q.
class ExactSystem {
 public:
  ExactSystem(const PeriodMatrix& A, std::vector<std::size_t> cols) : cols_(std::move(cols)), d_(A.rows()) {
    const std::size_t mc = cols_.size();
    std::vector<std::vector<BigRational>> R(d_, std::vector<BigRational>(mc, 0));
    std::map<BigInt, std::vector<std::vector<BigRational>>> S;
    N_ = 1;
    for (std::size_t l = 0; l < d_; ++l)
      for (std::size_t i = 0; i < mc; ++i) {
        const NumberRepr& x = A.at(l, cols_[i]);
        if (auto r = x.as_rational()) {
          R[l][i] = *r;
        } else if (const auto* q = x.as_quadratic()) {
          R[l][i] = BigRational(q->a, q->c);
          R[l][i].canonicalize();
          auto& s = S.try_emplace(q->D, d_, std::vector<BigRational>(mc, 0)).first->second;
          s[l][i] = BigRational(q->b, q->c);
          s[l][i].canonicalize();
        } else {
          throw InvalidArgument("exact system over a non-exact entry");
        }
      }
    for (const auto& row : R)
      for (const auto& v : row) N_ = lcm(N_, v.get_den());
    for (const auto& [D, s] : S)
      for (const auto& row : s)
        for (const auto& v : row) N_ = lcm(N_, v.get_den());
    auto scale = [&](const std::vector<BigRational>& row) {
      IntVector out;
      for (const auto& v : row) out.push_back(BigInt(v.get_num() * (N_ / v.get_den())));
      return out;
    };
    for (const auto& row : R) NR_.push_back(scale(row));
    for (const auto& [D, s] : S)
      for (const auto& row : s) NS_.push_back(scale(row));
  }

  const std::vector<std::size_t>& columns() const { return cols_; }

  // xi indexed by the restricted columns
  bool member(const std::vector<long>& xi) const {
    BigInt acc;
    for (const auto& row : NS_) {
      acc = 0;
      for (std::size_t i = 0; i < xi.size(); ++i) acc += row[i] * xi[i];
      if (acc != 0) return false;
    }
    for (const auto& row : NR_) {
      acc = 0;
      for (std::size_t i = 0; i < xi.size(); ++i) acc += row[i] * xi[i];
      if (BigInt(acc % N_) != 0) return false;
    }
    return true;
  }

  // Projection to xi of the kernel of [N R, -N I; N S, 0] over Z^{mc + d}.
  std::vector<IntVector> lattice_basis() const {
    const std::size_t mc = cols_.size();
    IntMatrix G;
    for (std::size_t l = 0; l < d_; ++l) {
      IntVector row = NR_[l];
      row.resize(mc + d_, 0);
      row[mc + l] = -N_;
      G.push_back(std::move(row));
    }
    for (const auto& s : NS_) {
      IntVector row = s;
      row.resize(mc + d_, 0);
      G.push_back(std::move(row));
    }
    std::vector<IntVector> out;
    for (auto& v : integer_kernel(G, mc + d_)) {
      v.resize(mc);
      if (std::any_of(v.begin(), v.end(), [](const BigInt& x) { return x != 0; })) out.push_back(std::move(v));
    }
    return out;
  }

 private:
  std::vector<std::size_t> cols_;
  std::size_t d_;
  BigInt N_;
  IntMatrix NR_, NS_;
};

std::vector<BigInt> sign_normalised(IntVector v) {
  for (const auto& x : v)
    if (x != 0) {
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
  return v;
}

// Minimal witness in the restricted columns, or none.
std::optional<RationalWitness> exact_witness(const ExactSystem& sys) {
  const std::size_t mc = sys.columns().size();
  if (mc == 0) return std::nullopt;
  const auto basis = sys.lattice_basis();
  if (basis.empty()) return std::nullopt;
  BigInt bound = -1;
  const IntVector* best = nullptr;
  for (const auto& v : basis) {
    BigInt n = 0;
    for (const auto& x : v) n = std::max(n, BigInt(abs(x)));
    if (bound < 0 || n < bound) {
      bound = n;
      best = &v;
    }
  }
  std::size_t visited = 0;
  for (long r = 1; BigInt(r) <= bound; ++r) {
    visited += shell_size(mc, r);
    if (visited > kEnumerationCap) break;
    std::optional<std::vector<long>> hit;
    for_each_in_shell(mc, r, true, [&](const std::vector<long>& v) {
      if (!sys.member(v)) return true;
      hit = v;
      return false;
    });
    if (hit) {
      RationalWitness w;
      w.exact = true;
      for (long x : *hit) w.xi.emplace_back(x);
      return w;
    }
  }
  RationalWitness w;
  w.exact = true;
  w.minimal = false;
  w.xi = sign_normalised(*best);
  return w;
}

std::vector<BigInt> embed(const std::vector<BigInt>& sub, const std::vector<std::size_t>& cols, std::size_t m) {
  std::vector<BigInt> out(m, 0);
  for (std::size_t i = 0; i < cols.size(); ++i) out[cols[i]] = sub[i];
  return out;
}

// Entries scaled to 2^B: |A(l, k) 2^B - M(l, k)| <= 2.
class FixedPoint {
 public:
  FixedPoint(const PeriodMatrix& A, unsigned bits) : bits_(bits), d_(A.rows()), m_(A.cols()) {
    const BigInt one = BigInt(1) << bits;
    for (const auto& x : A.entries()) {
      const Enclosure e = x.enclose(bits + 2);
      M_.push_back(floor_of(e.lo * one));
    }
  }

  unsigned bits() const { return bits_; }

  struct Residual {
    std::vector<BigInt> eta;
    BigInt max_abs;  // max_l |(A xi)_l 2^B + eta_l 2^B|, up to err
    BigInt err;
  };

  Residual eval(const std::vector<long>& xi) const {
    Residual out;
    long l1 = 0;
    for (long v : xi) l1 += std::labs(v);
    out.err = 2 * l1;
    out.max_abs = 0;
    BigInt v, q;
    for (std::size_t l = 0; l < d_; ++l) {
      v = 0;
      for (std::size_t k = 0; k < m_; ++k)
        if (xi[k] > 0) {
          mpz_addmul_ui(v.get_mpz_t(), M_[l * m_ + k].get_mpz_t(), static_cast<unsigned long>(xi[k]));
        } else if (xi[k] < 0) {
          mpz_submul_ui(v.get_mpz_t(), M_[l * m_ + k].get_mpz_t(), static_cast<unsigned long>(-xi[k]));
        }
      // q = floor(v / 2^B + 1/2)
      q = v + (BigInt(1) << (bits_ - 1));
      mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), bits_);
      BigInt r = v - (q << bits_);
      r = abs(r);
      if (r > out.max_abs) out.max_abs = r;
      out.eta.push_back(-q);
    }
    return out;
  }

  double to_double(const BigInt& units) const { return std::ldexp(units.get_d(), -static_cast<int>(bits_)); }
  double log_of(const BigInt& units) const {
    long e = 0;
    const double mant = mpz_get_d_2exp(&e, units.get_mpz_t());
    return std::log(mant) + (static_cast<double>(e) - bits_) * std::numbers::ln2;
  }

 private:
  unsigned bits_;
  std::size_t d_, m_;
  std::vector<BigInt> M_;
};

std::vector<std::size_t> exact_columns(const PeriodMatrix& A) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < A.cols(); ++k) {
    bool ok = true;
    for (std::size_t l = 0; l < A.rows(); ++l) ok = ok && A.at(l, k).is_algebraic_exact();
    if (ok) out.push_back(k);
  }
  return out;
}

bool supported_on(const std::vector<long>& xi, const std::vector<std::size_t>& cols) {
  for (std::size_t k = 0; k < xi.size(); ++k)
    if (xi[k] != 0 && std::find(cols.begin(), cols.end(), k) == cols.end()) return false;
  return true;
}

std::vector<long> restrict_to(const std::vector<long>& xi, const std::vector<std::size_t>& cols) {
  std::vector<long> out;
  for (std::size_t k : cols) out.push_back(xi[k]);
  return out;
}

// Columns where any witness has xi_k = 0: some row holds a single non-exact
// entry at k, a constructed Liouville number, which is transcendental and so
// cannot be balanced by the algebraic remainder of the row.
std::vector<bool> forced_zero(const PeriodMatrix& A) {
  std::vector<bool> forced(A.cols(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t l = 0; l < A.rows(); ++l) {
      std::size_t count = 0, at = 0;
      for (std::size_t k = 0; k < A.cols(); ++k)
        if (!forced[k] && !A.at(l, k).is_algebraic_exact()) {
          ++count;
          at = k;
        }
      if (count == 1 && A.at(l, at).as_liouville() && !forced[at]) {
        forced[at] = true;
        changed = true;
      }
    }
  }
  return forced;
}

}  // namespace

std::vector<std::vector<long>> shell(std::size_t m, long r) {
  std::vector<std::vector<long>> out;
  if (m == 0 || r < 1) return out;
  for_each_in_shell(m, r, true, [&](const std::vector<long>& v) {
    out.push_back(v);
    return true;
  });
  return out;
}

std::optional<RationalWitness> find_rational_witness(const PeriodMatrix& A, long radius, unsigned bits) {
  if (radius < 1) throw InvalidArgument("find_rational_witness needs radius >= 1");
  const std::size_t m = A.cols();
  if (A.rows() == 0) {
    RationalWitness w;
    w.exact = true;
    w.xi.assign(m, 0);
    w.xi[0] = 1;
    return w;
  }
  const std::vector<bool> forced = forced_zero(A);
  const std::vector<std::size_t> exact = exact_columns(A);
  bool decidable = true;
  for (std::size_t k = 0; k < m; ++k)
    if (!forced[k] && std::find(exact.begin(), exact.end(), k) == exact.end()) decidable = false;

  const ExactSystem sys(A, exact);
  if (decidable) {
    auto w = exact_witness(sys);
    if (w) w->xi = embed(w->xi, exact, m);
    return w;
  }

  const FixedPoint fp(A, bits);
  for (long r = 1; r <= radius; ++r) {
    std::optional<std::vector<long>> hit;
    for_each_in_shell(m, r, true, [&](const std::vector<long>& xi) {
      for (std::size_t k = 0; k < m; ++k)
        if (forced[k] && xi[k] != 0) return true;
      const auto res = fp.eval(xi);
      if (res.max_abs > res.err) return true;
      if (supported_on(xi, exact)) {
        if (sys.member(restrict_to(xi, exact))) {
          hit = xi;
          return false;
        }
        return true;
      }
      throw Indeterminate("near-hit at xi=" + format_xi(xi) + ": |A xi - eta| within enclosure width 2^-" +
                          std::to_string(bits) + " at a non-exact entry");
    });
    if (hit) {
      RationalWitness w;
      for (long x : *hit) w.xi.emplace_back(x);
      return w;
    }
  }
  // witnesses supported on exact columns beyond the radius
  if (auto w = exact_witness(sys)) {
    w->xi = embed(w->xi, exact, m);
    w->exact = false;
    w->minimal = false;
    return w;
  }
  return std::nullopt;
}

DcScan dc_scan(const PeriodMatrix& A, long R, unsigned bits, unsigned threads) {
  if (R < 1) throw InvalidArgument("dc_scan needs radius R >= 1");
  DcScan out;
  out.summary.radius = R;
  out.summary.precision_bits = bits;
  out.summary.tail_from = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(R))));
  if (A.rows() == 0) return out;
  const std::size_t m = A.cols();

  std::size_t total = 0;
  for (long r = 1; r <= R; ++r) {
    total += shell_size(m, r);
    if (total > kScanCap) throw InvalidArgument("dc_scan: more than " + std::to_string(kScanCap) + " frequencies");
  }
  out.rows.reserve(total);
  for (long r = 1; r <= R; ++r)
    for_each_in_shell(m, r, false, [&](const std::vector<long>& xi) {
      out.rows.push_back({xi, {}, 0.0, 0.0});
      return true;
    });

  const std::vector<std::size_t> exact = exact_columns(A);
  const ExactSystem sys(A, exact);
  const FixedPoint fp(A, bits);
  auto evaluate_row = [&](DcRow& row) {
    FixedPoint::Residual res = fp.eval(row.xi);
    const FixedPoint* used = &fp;
    std::optional<FixedPoint> finer;
    if (res.max_abs <= res.err) {
      if (supported_on(row.xi, exact) && sys.member(restrict_to(row.xi, exact)))
        throw RationalInsideRadius(row.xi, "rational witness xi=" + format_xi(row.xi) + " inside the scan radius");
      for (unsigned b = bits * 4; b <= bits * 16 && res.max_abs <= res.err; b *= 4) {
        finer.emplace(A, b);
        res = finer->eval(row.xi);
        used = &*finer;
      }
      if (res.max_abs <= res.err)
        throw Indeterminate("delta at xi=" + format_xi(row.xi) + " unresolved at " + std::to_string(bits * 16) +
                            " bits");
    }
    row.eta = std::move(res.eta);
    row.delta = used->to_double(res.max_abs);
    row.log_delta = used->log_of(res.max_abs);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, out.rows.size() / 256)));
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::size_t> error_at(threads, out.rows.size());
  auto worker = [&](unsigned t) {
    const std::size_t lo = out.rows.size() * t / threads, hi = out.rows.size() * (t + 1) / threads;
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        evaluate_row(out.rows[i]);
      } catch (...) {
        errors[t] = std::current_exception();
        error_at[t] = i;
        return;
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  // deterministic: the earliest failing row wins
  const auto first = std::min_element(error_at.begin(), error_at.end()) - error_at.begin();
  if (errors[static_cast<std::size_t>(first)]) std::rethrow_exception(errors[static_cast<std::size_t>(first)]);

  DcSummary& s = out.summary;
  s.count = out.rows.size();
  bool have_min = false, have_tail = false, have_rho = false;
  for (const auto& row : out.rows) {
    const long n = linf(row.xi);
    BigInt eta_n = 0;
    for (const auto& e : row.eta) eta_n = std::max(eta_n, BigInt(abs(e)));
    const double denom = std::log(static_cast<double>(n) + eta_n.get_d());
    if (denom > 0) {
      const double rho = -row.log_delta / denom;
      if (!have_rho || rho > s.rho_hat) {
        s.rho_hat = rho;
        s.rho_at = row.xi;
        have_rho = true;
      }
    }
    const double qd = static_cast<double>(n) * row.delta;
    if (!have_min || qd < s.min_q_delta) {
      s.min_q_delta = qd;
      s.min_q_delta_at = row.xi;
      have_min = true;
    }
    if (n >= s.tail_from && (!have_tail || qd < s.tail_min_q_delta)) {
      s.tail_min_q_delta = qd;
      s.tail_min_at = row.xi;
      have_tail = true;
    }
  }
  return out;
}

LiouvilleCheck verify_liouville_witness(const PeriodMatrix& A, const LiouvilleWitness& w, const BigRational& C,
                                        std::size_t J, unsigned bits) {
  const std::size_t d = A.rows(), m = A.cols();
  if (w.xi.size() < J || w.p.size() < J) throw InvalidArgument("witness sequence shorter than the depth J");
  LiouvilleCheck out;
  out.precision_bits = bits;
  out.ok = true;
  BigInt prev_q = 1;
  for (std::size_t j = 1; j <= J; ++j) {
    const auto& xi = w.xi[j - 1];
    const auto& p = w.p[j - 1];
    if (xi.size() != m || p.size() != d) throw InvalidArgument("witness term has the wrong shape");
    BigInt norm = 0;
    for (const auto& x : xi) norm = std::max(norm, BigInt(abs(x)));
    bool pre_ok = norm != 0;
    if (m == 1) pre_ok = pre_ok && xi[0] >= 2 && xi[0] > prev_q;
    if (m == 1) prev_q = xi[0];
    // scale = q^{j-1} (m = 1, dividing by q) or |xi|^j
    BigInt scale;
    mpz_pow_ui(scale.get_mpz_t(), norm.get_mpz_t(), m == 1 ? j - 1 : j);
    const unsigned need = static_cast<unsigned>((j + 1) * mpz_sizeinbase(norm.get_mpz_t(), 2)) + 72;
    bool pass = false, decided = false;
    double lhs = 0.0;
    for (unsigned b = std::max(bits, need); !decided && b <= std::max(bits, need) * 16; b *= 4) {
      Enclosure worst = Enclosure::exact(0);
      for (std::size_t l = 0; l < d; ++l) {
        Enclosure v = Enclosure::exact(BigRational(-p[l]));
        for (std::size_t k = 0; k < m; ++k)
          if (xi[k] != 0) v = v + BigRational(xi[k]) * A.at(l, k).enclose(b);
        worst = max(worst, v.abs());
      }
      const Enclosure value = BigRational(scale) * worst;
      lhs = value.midpoint().get_d();
      out.precision_bits = std::max(out.precision_bits, b);
      if (value.hi <= C) {
        pass = true;
        decided = true;
      } else if (value.lo > C) {
        decided = true;
      }
    }
    pass = pass && pre_ok;
    out.lhs.push_back(lhs);
    const double margin = C.get_d() - lhs;
    out.margin = j == 1 ? margin : std::min(out.margin, margin);
    if (!pass && out.ok) {
      out.ok = false;
      out.first_failing = j;
    }
    if (out.ok) out.verified = j;
  }
  return out;
}

std::optional<LiouvilleWitness> liouville_witness_from_column(const PeriodMatrix& A, std::size_t k, std::size_t J) {
  const NumberRepr* lead = nullptr;
  for (std::size_t l = 0; l < A.rows(); ++l) {
    const NumberRepr& x = A.at(l, k);
    if (const auto* L = x.as_liouville()) {
      if (lead) {
        const auto* L0 = lead->as_liouville();
        if (L0->base != L->base || L0->schedule.name != L->schedule.name) return std::nullopt;
      } else {
        lead = &x;
      }
    } else if (!x.is_integer()) {
      return std::nullopt;
    }
  }
  if (!lead) return std::nullopt;
  LiouvilleWitness w;
  for (std::size_t j = 1; j <= J; ++j) {
    const LiouvilleTerm t = lead->liouville_term(j);
    std::vector<BigInt> xi(A.cols(), 0);
    xi[k] = t.q;
    std::vector<BigInt> p;
    for (std::size_t l = 0; l < A.rows(); ++l) {
      const NumberRepr& x = A.at(l, k);
      if (x.as_liouville()) {
        p.push_back(t.p);
      } else {
        p.push_back(BigInt(x.as_rational()->get_num() * t.q));
      }
    }
    w.xi.push_back(std::move(xi));
    w.p.push_back(std::move(p));
  }
  return w;
}

GapResult dc_equiv_gap(const PeriodMatrix& A, const std::vector<long>& xi, unsigned bits) {
  if (xi.size() != A.cols()) throw InvalidArgument("dc_equiv_gap: xi has the wrong length");
  if (linf(xi) == 0) throw InvalidArgument("dc_equiv_gap needs xi != 0");
  GapResult out;
  for (std::size_t l = 0; l < A.rows(); ++l) {
    Enclosure v = Enclosure::exact(0);
    for (std::size_t k = 0; k < A.cols(); ++k)
      if (xi[k] != 0) v = v + BigRational(xi[k]) * A.at(l, k).enclose(bits);
    const Enclosure one[1] = {v};
    const double dist = nearest_lattice(one).delta.to_double();
    const double gap = 2.0 * std::fabs(std::sin(std::numbers::pi * dist));
    if (l == 0 || gap > out.gap) {
      out.gap = gap;
      out.row = l;
      out.dist = dist;
    }
  }
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Rational: return "rational";
    case Verdict::Liouville: return "liouville";
    case Verdict::DiophantineCertified: return "diophantine_certified";
    case Verdict::Empirical: return "empirical";
  }
  return "unknown";
}

namespace {

// Pivot rows for every column: a quadratic irrational x at (l, k) with the
// rest of row l rational over the common denominator c. Then for xi_k != 0,
// |eta_l + (A xi)_l| >= ||c x xi_k|| / c >= 1 / (c (M + 2) |xi_k|), where M
// bounds the partial quotients of c x.
std::optional<DiophantineCertificate> pivot_certificate(const PeriodMatrix& A) {
  DiophantineCertificate cert;
  bool first = true;
  for (std::size_t k = 0; k < A.cols(); ++k) {
    std::optional<Pivot> best;
    BigRational best_C;
    for (std::size_t l = 0; l < A.rows(); ++l) {
      const auto* q = A.at(l, k).as_quadratic();
      if (!q) continue;
      BigInt c = 1;
      bool ok = true;
      for (std::size_t j = 0; j < A.cols() && ok; ++j) {
        if (j == k) continue;
        if (auto r = A.at(l, j).as_rational()) {
          c = lcm(c, r->get_den());
        } else {
          ok = false;
        }
      }
      if (!ok) continue;
      const NumberRepr scaled = BigRational(c) * A.at(l, k);
      const BigInt M = expand_quadratic(*scaled.as_quadratic()).max_partial_quotient();
      const BigRational Ck(1, BigInt(c * (M + 2)));
      if (!best || Ck > best_C) {
        best = Pivot{k, l, c, M};
        best_C = Ck;
      }
    }
    if (!best) return std::nullopt;
    cert.pivots.push_back(*best);
    if (first || best_C < cert.C) cert.C = best_C;
    first = false;
  }
  cert.rho = 1.0;
  cert.basis = "badly approximable pivot rows: every column has a quadratic irrational whose row is otherwise rational";
  return cert;
}

}  // namespace

Classification classify(const PeriodMatrix& A, const ClassifyPolicy& policy) {
  Classification out;
  out.precision_bits = policy.precision_bits;
  out.norm = A.norm();
  if (A.rows() == 0) {
    out.verdict = Verdict::Rational;
    out.rational = find_rational_witness(A, 1);
    out.diagnostic = "no generator cycles: every combination has zero periods and is integral";
    return out;
  }
  out.rational = find_rational_witness(A, std::max(1L, policy.radius), policy.precision_bits);
  if (out.rational) {
    out.verdict = Verdict::Rational;
    out.diagnostic = out.rational->exact ? "exact integer kernel" : "hit within the scan radius";
    return out;
  }
  for (std::size_t k = 0; k < A.cols(); ++k) {
    auto w = liouville_witness_from_column(A, k, policy.depth);
    if (!w) continue;
    const BigRational C(2);
    LiouvilleCheck check = verify_liouville_witness(A, *w, C, policy.depth, policy.precision_bits);
    if (!check.ok) continue;
    out.verdict = Verdict::Liouville;
    out.liouville = LiouvilleVerdict{k, std::move(*w), C, policy.depth, std::move(check)};
    out.diagnostic = "constructed partial-sum witnesses in column " + std::to_string(k + 1);
    return out;
  }
  if (A.all_exact()) {
    if (auto cert = pivot_certificate(A)) {
      out.verdict = Verdict::DiophantineCertified;
      out.certificate = std::move(cert);
      out.diagnostic = "no rational witness (exact integer kernel is trivial)";
      return out;
    }
  }
  out.verdict = Verdict::Empirical;
  out.empirical = dc_scan(A, std::max(1L, policy.radius), policy.precision_bits, policy.threads).summary;
  out.diagnostic = A.all_exact() ? "no rational witness; no pivot-row certificate, scan only"
                                 : "non-exact entries; scan only";
  return out;
}

}  // namespace ghlab
