#include <cmath>
#include <set>

#include "doctest.h"
#include "ghlab/errors.hpp"
#include "ghlab/numbers.hpp"
#include "support/oracle.hpp"

using namespace ghlab;

namespace {

BigRational q(long p, long d = 1) {
  BigRational r(p, d);
  r.canonicalize();
  return r;
}

std::vector<NumberRepr> sample_numbers() {
  return {NumberRepr::rational(3, 7),   NumberRepr::rational(-22, 7), NumberRepr::golden_ratio(),
          NumberRepr::sqrt(2),          NumberRepr::quadratic(-3, 2, 7, 5),
          NumberRepr::continued_fraction([](std::size_t k) { return BigInt(k % 3 + 1); }, 1u << 20, "cf:[1;(2,3,1)]"),
          NumberRepr::liouville(2, LiouvilleSchedule::factorial()),
          NumberRepr::liouville(3, LiouvilleSchedule::factorial())};
}

}  // namespace

TEST_CASE("cf_convergents of 1/2") {
  const auto c = cf_convergents(NumberRepr::rational(1, 2), 2);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == q(0));
  CHECK(c[1] == q(1, 2));
  CHECK_THROWS_AS(cf_convergents(NumberRepr::rational(1, 2), 3), PrecisionExhausted);
}

TEST_CASE("cf_convergents of the golden ratio match a Euclidean oracle") {
  const auto c = cf_convergents(NumberRepr::golden_ratio(), 5);
  const std::vector<BigRational> expect{q(1), q(2), q(3, 2), q(5, 3), q(8, 5)};
  CHECK(c == expect);
  const auto a = oracle::euclid_cf(oracle::golden(), 40);
  const auto mine = partial_quotients(NumberRepr::golden_ratio(), 40);
  for (std::size_t k = 0; k < 40; ++k) CHECK(mine[k].get_si() == a[k]);
}

TEST_CASE("partial sums of sum 2^-j! among convergents: brute-force best approximations") {
  const NumberRepr x = NumberRepr::liouville(2, LiouvilleSchedule::factorial());
  const auto conv = cf_convergents(x, 9);
  std::set<long> dens;
  for (const auto& c : conv)
    if (c.get_den() <= 10000) dens.insert(c.get_den().get_si());
  // best approximations of the second kind: record minima of |q x - p|
  const double xv = static_cast<double>(oracle::liouville(2, 5));
  std::set<long> records;
  double best = 1e9;
  for (long qq = 1; qq <= 10000; ++qq) {
    const double dist = std::fabs(qq * xv - std::round(qq * xv));
    if (dist < best) {
      best = dist;
      records.insert(qq);
    }
  }
  CHECK(records == dens);
  CHECK(dens.count(4) == 1);
  CHECK(dens.count(64) == 1);
  CHECK(dens.count(2) == 0);
}

TEST_CASE("nearest_lattice examples") {
  const std::vector<Enclosure> v{Enclosure::exact(q(1, 4)), Enclosure::exact(q(-3, 4))};
  auto r = nearest_lattice(v);
  CHECK(r.eta == std::vector<BigInt>{0, 1});
  CHECK(r.delta.lo == q(1, 4));
  CHECK(r.delta.is_point());
  CHECK_FALSE(r.tie);

  const std::vector<Enclosure> half{Enclosure::exact(q(1, 2))};
  r = nearest_lattice(half);
  CHECK(r.eta == std::vector<BigInt>{-1});
  CHECK(r.delta.lo == q(1, 2));
  CHECK(r.tie);

  const NumberRepr five_phi = BigRational(5) * NumberRepr::golden_ratio();
  const std::vector<Enclosure> g{five_phi.enclose(200)};
  r = nearest_lattice(g);
  CHECK(r.eta == std::vector<BigInt>{-8});
  const double ref = static_cast<double>(5 * oracle::golden() - 8);
  CHECK(r.delta.to_double() == doctest::Approx(ref).epsilon(1e-15));
  CHECK(ref == doctest::Approx(0.0901699437).epsilon(1e-9));

  const std::vector<Enclosure> wide{Enclosure{q(0), q(1, 100)}};
  CHECK_THROWS_AS(nearest_lattice(wide), InvalidArgument);
}

TEST_CASE("nearest_lattice is exact on rationals (property)") {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = static_cast<std::size_t>(gen.integer(1, 4));
    std::vector<Enclosure> v;
    BigRational brute = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const BigRational x = q(gen.integer(-1000, 1000), gen.integer(1, 60));
      v.push_back(Enclosure::exact(x));
      // scan integer candidates around x
      BigRational best = 10;
      const long base = -floor_of(x).get_si();
      for (long e = base - 3; e <= base + 3; ++e) {
        BigRational c = abs(BigRational(x + e));
        if (c < best) best = c;
      }
      if (best > brute) brute = best;
    }
    const auto r = nearest_lattice(v);
    REQUIRE(r.delta.is_point());
    CHECK(r.delta.lo == brute);
  }
}

TEST_CASE("enclosures: width, monotonicity and containment of the true value") {
  for (const auto& x : sample_numbers()) {
    CAPTURE(x.literal());
    Enclosure prev = x.enclose(8);
    for (unsigned bits : {16u, 32u, 64u, 128u, 256u, 512u}) {
      const Enclosure e = x.enclose(bits);
      CHECK(e.width() <= dyadic_epsilon(bits));
      CHECK(prev.contains(x.enclose(2 * bits).midpoint()));
      CHECK(e.lo <= e.hi);
      prev = e;
    }
  }
  // against the float oracle
  const double ref = static_cast<double>(oracle::liouville(2, 5));
  CHECK(NumberRepr::liouville(2, LiouvilleSchedule::factorial()).to_double() == doctest::Approx(ref).epsilon(1e-16));
  const auto e = NumberRepr::quadratic(-3, 2, 7, 5).enclose(300);
  const oracle::Ref r = (oracle::Ref(-3) + 2 * boost::multiprecision::sqrt(oracle::Ref(7))) / 5;
  auto to_ref = [](const BigRational& x) {
    return oracle::Ref(x.get_num().get_str()) / oracle::Ref(x.get_den().get_str());
  };
  CHECK(to_ref(e.lo) <= r + oracle::Ref("1e-110"));
  CHECK(to_ref(e.hi) >= r - oracle::Ref("1e-110"));
}

TEST_CASE("convergent law p_{k+1} q_k - p_k q_{k+1} = +-1 and alternation (property)") {
  oracle::Gen gen(5);
  std::vector<NumberRepr> xs = sample_numbers();
  for (int i = 0; i < 30; ++i) {
    long D = gen.integer(2, 200);
    while (is_perfect_square(D)) ++D;
    xs.push_back(NumberRepr::quadratic(gen.integer(-20, 20), gen.integer(1, 9) * (gen.coin() ? 1 : -1), D,
                                       gen.integer(1, 13)));
  }
  for (const auto& x : xs) {
    if (x.is_rational()) continue;
    CAPTURE(x.literal());
    const auto c = cf_convergents(x, 12);
    const Enclosure e = x.enclose(600);
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
      const BigInt det = c[k + 1].get_num() * c[k].get_den() - c[k].get_num() * c[k + 1].get_den();
      CHECK(abs(det) == 1);
      if (k % 2 == 0) {
        CHECK(c[k] < e.lo);
      } else {
        CHECK(c[k] > e.hi);
      }
      // |x - p_k/q_k| < 1/(q_k q_{k+1})
      const BigRational bound(BigInt(1), BigInt(c[k].get_den() * c[k + 1].get_den()));
      CHECK(abs(BigRational(e.midpoint() - c[k])) < bound);
    }
  }
}

TEST_CASE("quadratic expansion is periodic and matches the oracle") {
  const auto g = expand_quadratic(*NumberRepr::golden_ratio().as_quadratic());
  // phi is purely periodic: [(1)]
  CHECK(g.prefix.empty());
  CHECK(g.period == std::vector<BigInt>{1});
  CHECK(g.max_partial_quotient() == 1);
  const auto s3 = expand_quadratic(*NumberRepr::sqrt(3).as_quadratic());
  CHECK(s3.prefix == std::vector<BigInt>{1});
  CHECK(s3.period == std::vector<BigInt>{1, 2});
  CHECK(s3.max_partial_quotient() == 2);
  oracle::Gen gen(17);
  for (int i = 0; i < 40; ++i) {
    long D = gen.integer(2, 500);
    while (is_perfect_square(D)) ++D;
    const long a = gen.integer(-50, 50), b = gen.integer(1, 9) * (gen.coin() ? 1 : -1), c = gen.integer(1, 30);
    const NumberRepr x = NumberRepr::quadratic(a, b, D, c);
    const auto qa = x.as_quadratic();
    const oracle::Ref ref =
        (oracle::Ref(qa->a.get_si()) + oracle::Ref(qa->b.get_si()) * boost::multiprecision::sqrt(oracle::Ref(qa->D.get_si()))) /
        oracle::Ref(qa->c.get_si());
    const auto want = oracle::euclid_cf(ref, 25);
    const auto e = expand_quadratic(*qa);
    CAPTURE(x.literal());
    for (std::size_t k = 0; k < 25; ++k) CHECK(e.at(k).get_si() == want[k]);
  }
}

TEST_CASE("quadratic normalisation and invariants") {
  const NumberRepr s8 = NumberRepr::sqrt(8);
  CHECK(s8.as_quadratic()->D == 2);
  CHECK(s8.as_quadratic()->b == 2);
  CHECK(NumberRepr::quadratic(2, 4, 5, -6) == NumberRepr::quadratic(-1, -2, 5, 3));
  CHECK_THROWS_AS(NumberRepr::sqrt(9), InvalidArgument);
  CHECK_THROWS_AS(NumberRepr::quadratic(1, 0, 5, 2), InvalidArgument);
  CHECK_THROWS_AS(NumberRepr::quadratic(1, 1, 5, 0), InvalidArgument);
  // exact arithmetic
  const NumberRepr inv_phi = NumberRepr::golden_ratio() + NumberRepr::rational(-1);
  CHECK(inv_phi == NumberRepr::quadratic(-1, 1, 5, 2));
  CHECK((NumberRepr::sqrt(2) + BigRational(-1) * NumberRepr::sqrt(2)).is_rational());
  CHECK(NumberRepr::rational(6, 4).literal() == "3/2");
}

TEST_CASE("Liouville schedule and witness terms") {
  const NumberRepr x = NumberRepr::liouville(2, LiouvilleSchedule::factorial());
  const auto t3 = x.liouville_term(3);
  CHECK(t3.q == 64);
  CHECK(t3.p == 49);  // 32 + 16 + 1
  LiouvilleSchedule bad{"linear", [](std::size_t j) { return static_cast<unsigned long>(j); }, 10};
  CHECK_THROWS_AS(NumberRepr::liouville(2, bad), InvalidArgument);
  CHECK_THROWS_AS(NumberRepr::liouville(1, LiouvilleSchedule::factorial()), InvalidArgument);
  // |x - p_j/q_j| <= 2 q_j^{-(j+1)}
  const Enclosure e = x.enclose(2000);
  for (std::size_t j = 1; j <= 4; ++j) {
    const auto t = x.liouville_term(j);
    const BigRational err = abs(BigRational(e.hi - BigRational(t.p, t.q)));
    BigInt qj1;
    mpz_pow_ui(qj1.get_mpz_t(), t.q.get_mpz_t(), j + 1);
    CHECK(err <= BigRational(BigInt(2), qj1));
  }
  CHECK_THROWS_AS(x.enclose(1u << 30), PrecisionExhausted);
}

TEST_CASE("number literal grammar") {
  CHECK(parse_number("3/6") == NumberRepr::rational(1, 2));
  CHECK(parse_number(" -7 ") == NumberRepr::rational(-7));
  CHECK(parse_number("(1+sqrt(5))/2") == NumberRepr::golden_ratio());
  CHECK(parse_number("(1-3*sqrt(5))/2") == NumberRepr::quadratic(1, -3, 5, 2));
  CHECK(parse_number("sqrt(2)") == NumberRepr::sqrt(2));
  CHECK(parse_number("cf:[0;2]") == NumberRepr::rational(1, 2));
  CHECK(parse_number("cf:[1;(1)]") == NumberRepr::golden_ratio());
  CHECK(parse_number("cf:[1;(2)]") == NumberRepr::sqrt(2));
  CHECK(parse_number("cf:[1;(1,2)]") == NumberRepr::sqrt(3));
  // periodic literals become exact surds whose expansion reproduces the literal
  const NumberRepr p = parse_number("cf:[2;1,(2,3)]");
  REQUIRE(p.as_quadratic() != nullptr);
  const auto e = expand_quadratic(*p.as_quadratic());
  const long want[] = {2, 1, 2, 3, 2, 3, 2, 3};
  for (std::size_t k = 0; k < 8; ++k) CHECK(e.at(k) == want[k]);
  CHECK(parse_number("liouville:base=2,schedule=factorial").as_liouville()->base == 2);
  for (const auto& x : sample_numbers())
    if (!x.as_continued_fraction()) CHECK(parse_number(x.literal()) == x);
  CHECK_THROWS_AS(parse_number("1/0"), SyntaxError);
  CHECK_THROWS_AS(parse_number("(1+sqrt(4))/2"), SyntaxError);
  CHECK_THROWS_AS(parse_number("liouville:base=2,schedule=linear"), SyntaxError);
  CHECK_THROWS_AS(parse_number("1.5"), SyntaxError);
  CHECK_THROWS_AS(parse_number("cf:[1;0]"), InvalidArgument);
}
