#include "doctest.h"
#include "latdisc/cf.hpp"
#include "oracles.hpp"

using namespace latdisc;

namespace {

std::vector<long> as_longs(const std::vector<BigInt>& v) {
  std::vector<long> out;
  for (const auto& a : v) out.push_back(a.get_si());
  return out;
}

BigRational rat(long p, long q) {
  BigRational r(p, q);
  r.canonicalize();
  return r;
}

std::vector<long> finite_terms(const ContinuedFraction& cf) {
  return as_longs(std::get<FiniteBody>(cf.body()).terms);
}

}  // namespace

TEST_CASE("rational expansions") {
  auto cf = cf_of_rational(13, 30);
  CHECK(cf.a0() == 0);
  CHECK(finite_terms(cf) == std::vector<long>{2, 3, 4});
  CHECK(cf.render() == "[0;2,3,4]");
  CHECK(value_of(cf) == BigRational(13, 30));

  auto zero = cf_of_rational(0, 1);
  CHECK(zero.length() == 0u);
  CHECK(zero.render() == "[0;]");

  CHECK(finite_terms(cf_of_rational(5, 8)) == std::vector<long>{1, 1, 1, 2});
  CHECK(cf_of_rational(7, 3).a0() == 2);
  CHECK(cf_of_rational(-1, 3).a0() == -1);
  CHECK_THROWS_AS(cf_of_rational(1, 0), ValidationError);
}

TEST_CASE("rational reconstruction against Euclid for q <= 10^4") {
  // every p/q with q <= 200, and a stride through the rest up to 10^4
  auto check = [](long p, long q) {
    auto cf = cf_of_rational(p, q);
    auto conv = convergents(cf, *cf.length());
    BigRational last(conv.back().p, conv.back().q);
    REQUIRE(last == rat(p, q));
    auto ref = oracle::euclid_quotients(p, q);
    std::vector<long> got{cf.a0().get_si()};
    for (auto a : finite_terms(cf)) got.push_back(a);
    std::vector<long> want;
    for (auto& a : ref) want.push_back(a.get_si());
    REQUIRE(got == want);
    auto alt = alternate_expansion(cf);
    REQUIRE(value_of(alt) == value_of(cf));
    if (cf.length() > 0u) {
      REQUIRE(*alt.length() == *cf.length() + 1);
    }
  };
  for (long q = 1; q <= 200; ++q)
    for (long p = 0; p <= q; ++p) check(p, q);
  for (long q = 201; q <= 10000; q += 97)
    for (long p = 1; p < q; p += 13) check(p, q);
}

TEST_CASE("alternate expansion round trip") {
  auto cf = cf_of_rational(13, 30);
  auto alt = alternate_expansion(cf);
  CHECK(finite_terms(alt) == std::vector<long>{2, 3, 3, 1});
  auto back = alternate_expansion(alt);
  CHECK(finite_terms(back) == std::vector<long>{2, 3, 4});
  auto one = cf_of_rational(1, 2);
  CHECK(finite_terms(alternate_expansion(one)) == std::vector<long>{1, 1});
}

TEST_CASE("surd expansions") {
  auto phi = cf_of_surd(QuadraticSurd::make(1, 5, 2));
  REQUIRE(phi.is_periodic());
  CHECK(phi.a0() == 1);
  CHECK(phi.render() == "[1;overline(1)]");

  auto r3 = cf_of_surd(QuadraticSurd::make(0, 3, 1));
  CHECK(r3.render() == "[1;overline(1,2)]");
  auto q = convergents(r3, 4);
  std::vector<long> qs;
  for (auto& c : q) qs.push_back(c.q.get_si());
  CHECK(qs == std::vector<long>{1, 1, 3, 4, 11});

  CHECK(cf_of_surd(QuadraticSurd::make(0, 2, 1)).render() == "[1;overline(2)]");
  // sqrt(5)/2 needs rescaling to satisfy Q | D - P^2
  auto half5 = cf_of_surd(QuadraticSurd::make(0, 5, 2));
  CHECK(half5.a0() == 1);
  CHECK(QuadraticSurd::make(0, 5, 2).value() == doctest::Approx(std::sqrt(5.0) / 2));

  CHECK_THROWS_AS(QuadraticSurd::make(0, 4, 1), ValidationError);
  CHECK_THROWS_AS(QuadraticSurd::make(0, 3, 0), ValidationError);
}

TEST_CASE("surd periods regenerate the surd value") {
  // a CF that is periodic from index r+1 evaluates, through its convergents,
  // to within 1/q_k^2 of the surd
  for (long D : {2L, 3L, 5L, 7L, 13L, 19L, 31L, 43L, 61L, 94L, 109L}) {
    for (long P : {-3L, 0L, 2L}) {
      for (long Q : {1L, 2L, -3L}) {
        auto s = QuadraticSurd::make(P, D, Q);
        auto cf = cf_of_surd(s);
        auto conv = convergents(cf, 60);
        const double v = static_cast<double>(P) / Q + std::sqrt(static_cast<double>(D)) / Q;
        const auto& c = conv.back();
        CHECK(BigRational(c.p, c.q).get_d() == doctest::Approx(v).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("rule expansions") {
  auto e = cf_rule("euler_e");
  CHECK(e.a0() == 2);
  CHECK(as_longs(e.prefix(7)) == std::vector<long>{1, 2, 1, 1, 4, 1, 1});
  auto t = cf_rule("tan_one");
  CHECK(t.a0() == 1);
  CHECK(as_longs(t.prefix(6)) == std::vector<long>{1, 1, 3, 1, 5, 1});
  auto s = cf_rule("pow2_spikes");
  CHECK(as_longs(s.prefix(8)) == std::vector<long>{1, 2, 1, 4, 1, 1, 1, 8});
  CHECK(as_longs(cf_rule("constant(3)").prefix(3)) == std::vector<long>{3, 3, 3});
  CHECK_THROWS_AS(cf_rule("pi"), ValidationError);
  CHECK(e.render(5) == "[2;1,2,1,1,4,...]");
}

TEST_CASE("e and tan 1 agree with 300-digit series") {
  auto check = [](const ContinuedFraction& cf, const BigRational& x) {
    auto ref = oracle::euclid_quotients(x.get_num(), x.get_den());
    REQUIRE(ref.size() > 61);
    CHECK(cf.a0() == ref[0]);
    for (std::size_t k = 1; k <= 60; ++k) REQUIRE(cf.quotient(k) == ref[k]);
  };
  check(cf_rule("euler_e"), oracle::e_digits(300));
  check(cf_rule("tan_one"), oracle::tan1_digits(300));
}

TEST_CASE("convergents") {
  auto phi = cf_of_surd(QuadraticSurd::make(1, 5, 2));
  auto c = convergents(phi, 5);
  std::vector<long> qs;
  for (auto& x : c) qs.push_back(x.q.get_si());
  CHECK(qs == std::vector<long>{1, 1, 2, 3, 5, 8});

  auto r = convergents(cf_of_rational(13, 30), 3);
  CHECK(BigRational(r[0].p, r[0].q) == 0);
  CHECK(r[1].p == 1);
  CHECK(r[1].q == 2);
  CHECK(r[2].p == 3);
  CHECK(r[2].q == 7);
  CHECK(r[3].p == 13);
  CHECK(r[3].q == 30);
  for (auto& x : convergents(cf_rule("euler_e"), 40)) CHECK(gcd(x.p, x.q) == 1);
  CHECK_THROWS_AS(convergents(cf_of_rational(13, 30), 4), ValidationError);
}

TEST_CASE("approximation inequality for rationals") {
  // |q_k alpha - p_k| < 1/q_{k+1}, exactly; at k = r-1 the two sides meet
  for (long q = 2; q <= 300; q += 7) {
    for (long p = 1; p < q; p += 3) {
      auto cf = cf_of_rational(p, q);
      const std::size_t r = *cf.length();
      auto conv = convergents(cf, r);
      BigRational a(p, q);
      a.canonicalize();
      for (std::size_t k = 0; k + 1 <= r; ++k) {
        BigRational d = abs(a * conv[k].q - conv[k].p);
        if (k + 1 < r) {
          CHECK(d < BigRational(1, conv[k + 1].q));
        } else {
          CHECK(d == BigRational(1, conv[k + 1].q));
        }
      }
    }
  }
}

TEST_CASE("statistics") {
  auto e = cf_rule("euler_e");
  auto st = cf_stats(e, 6);
  CHECK(st.sum_a2 == 24);
  CHECK(st.sum_a == 10);
  CHECK(st.max_a == 4);

  auto phi = cf_of_surd(QuadraticSurd::make(1, 5, 2));
  for (std::size_t K = 1; K <= 30; ++K) {
    auto s = cf_stats(phi, K);
    CHECK(s.sum_a2 == static_cast<long>(K));
    CHECK((s.alt_sum == -1 || s.alt_sum == 0));
  }

  auto sp = cf_stats(cf_rule("pow2_spikes"), 64);
  CHECK(sp.sum_a <= 3 * 64);
  long pow_sum = 0;
  for (long j = 1; j <= 64; j *= 2) pow_sum += j * j;
  CHECK(sp.sum_a2 >= pow_sum);

  auto small = optimality_stats(cf_of_rational(13, 30), 3);
  CHECK(small.mean_sq == doctest::Approx(29.0 / 3));
  CHECK(small.alt_norm == doctest::Approx(3.0 / std::sqrt(3.0)));

  auto g = optimality_stats(phi, 25);
  CHECK(g.mean_sq == 1.0);
  CHECK(g.alt_norm <= 1 / std::sqrt(25.0));

  // invariants of CFStats
  for (auto name : {"euler_e", "tan_one", "pow2_spikes"}) {
    auto s = cf_stats(cf_rule(name), 50);
    CHECK(abs(s.alt_sum) <= s.sum_a);
    CHECK(s.sum_a <= s.sum_a2);
    CHECK(s.max_a * s.max_a <= s.sum_a2);
  }
  CHECK_THROWS_AS(cf_stats(e, 0), ValidationError);
}
