#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "latdisc/discrepancy.hpp"
#include "latdisc/lattice.hpp"
#include "latdisc/parseval.hpp"

using namespace latdisc;

namespace {

Alpha golden() { return Alpha::from_cf(cf_of_surd(QuadraticSurd::make(-1, 5, 2)), 256); }
Alpha sqrt3() { return Alpha::from_cf(cf_of_surd(QuadraticSurd::make(0, 3, 1)), 256); }

bool contains(const Enclosure& e, const LatticePointSet& P) {
  const BigRational d = d2_exact_fast(P).d2_squared;
  const double slack = P.d2sq_error().get_d();
  return d.get_d() >= e.lo - slack && d.get_d() <= e.hi + slack;
}

}  // namespace

TEST_CASE("diophantine sums") {
  auto half = dioph_sum(Alpha::rational(1, 2), 1, Weight::Unit);
  REQUIRE(half.exact_core);
  CHECK(*half.exact_core == 4);
  CHECK(half.value.contains(4.0));
  CHECK_THROWS_AS(dioph_sum(Alpha::rational(1, 2), 2, Weight::Unit), ValidationError);

  auto r = dioph_sum(Alpha::rational(2, 7), 6, Weight::Quarter);
  REQUIRE(r.exact_core);
  // ||m 2/7|| for m=1..6 is 2,3,1,1,3,2 sevenths
  BigRational want = 0;
  const long d[] = {2, 3, 1, 1, 3, 2};
  for (long m = 1; m <= 6; ++m) want += BigRational(49, m * m * d[m - 1] * d[m - 1]);
  CHECK(*r.exact_core == want);
  const double pi4 = std::pow(M_PI, 4);
  CHECK(r.value.contains(want.get_d() / (4 * pi4)));

  // long ranges take the float path
  auto flt = dioph_sum(Alpha::rational(1234, 5003), 5002, Weight::Unit);
  CHECK(!flt.exact_core);
  BigRational ref = 0;
  for (long m = 1; m < 5003; ++m) {
    const long x = (m * 1234) % 5003, dd = std::min(x, 5003 - x);
    ref += BigRational(5003L * 5003L, m * m * dd * dd);
  }
  CHECK(flt.value.contains(ref.get_d()));
  CHECK(flt.value.width() <= 1e-12 * ref.get_d());

  CHECK(circle_dist(Alpha::rational(1, 3), 3).hi == 0.0);
  CHECK(circle_dist(golden(), 1).contains((3 - std::sqrt(5.0)) / 2));
}

TEST_CASE("sum over a full period against the partial quotients") {
  const double pi4_90 = std::pow(M_PI, 4) / 90;
  for (auto alpha : {golden(), sqrt3(), Alpha::from_cf(cf_rule("euler_e"), 256)}) {
    for (std::size_t K = 1; K <= 20; ++K) {
      auto conv = convergents(alpha.cf(), K);
      if (conv[K].q > 2000000) break;
      auto st = cf_stats(alpha.cf(), K);
      auto s = dioph_sum(alpha, to_u64(conv[K].q) - 1, Weight::Unit).value;
      const double main = pi4_90 * st.sum_a2.get_d();
      CHECK(std::fabs(s.mid() - main) + s.half_width() <= 152 * st.sum_a.get_d());
    }
  }
}

TEST_CASE("logarithmic growth for sqrt 3") {
  auto a = sqrt3();
  const double s4 = dioph_sum(a, 10000, Weight::Quarter).value.mid();
  const double s5 = dioph_sum(a, 100000, Weight::Quarter).value.mid();
  MESSAGE("increment per decade ", s5 - s4);
  CHECK((s5 - s4) / std::log(10.0) == doctest::Approx(0.036533).epsilon(0.15));
}

TEST_CASE("choice of K") {
  auto g = golden();
  auto c = choose_K(g, 89);
  CHECK(c.q[c.K] == 89);
  CHECK(c.q[c.K - 1] == 55);
  REQUIRE(c.alternative);
  CHECK(*c.alternative == c.K + 1);
  auto c2 = choose_K(g, 90);
  CHECK(c2.q[c2.K] == 144);
  CHECK(!c2.alternative);
  CHECK(choose_K(g, 1).K == 1);
  CHECK_THROWS_AS(choose_K(Alpha::rational(2, 7), 8), ValidationError);
  CHECK(choose_K(Alpha::rational(2, 7), 7).q.back() == 7);
}

TEST_CASE("auxiliary inequalities") {
  auto g = golden();
  auto rep = lemma1_bounds(g, 12, 0, 233);
  CHECK(rep.i.holds);
  CHECK(rep.ii.lhs.hi == 0.0);
  CHECK(rep.ii.rhs.hi == 0.0);
  CHECK(rep.iii.holds);

  auto rep2 = lemma1_bounds(g, 10, 40, 100);
  CHECK(rep2.i.holds);
  CHECK(rep2.ii.holds);
  CHECK(rep2.iii.holds);
  CHECK(rep2.m_max == 8000000);

  auto r = Alpha::rational(2, 7);
  const std::size_t K = *r.cf().length();
  auto rep3 = lemma1_bounds(r, K, 3, 7);
  CHECK(rep3.iii.holds);
  CHECK(rep3.i.holds);
  CHECK(rep3.ii.holds);
}

TEST_CASE("xi remainders") {
  auto g = golden();
  for (Variant v : {Variant::S, Variant::L}) {
    for (std::uint64_t N : {55u, 60u, 72u, 89u}) {
      auto c = choose_K(g, N);
      auto d = xi_direct(g, N, c.K, v);
      auto cf = xi_closed_form(g, N, c.K, v);
      CHECK(std::fabs(d.mid() - cf.mid()) <= 1e-9);
      auto tail = dioph_sum(g, to_u64(c.q[c.K]) - 1, Weight::Half, to_u64(c.q[c.K - 1])).value;
      CHECK(d.lo >= 0);
      CHECK(d.hi <= tail.hi);
      auto e = v == Variant::S ? prop1_enclosure_S(g, N) : prop1_enclosure_L(g, N);
      CHECK(d.hi >= e.xi.lo);
      CHECK(d.lo <= e.xi.hi);
    }
  }
  // small N, where the 1/(2N) correction to the L average matters
  for (auto [p, q, N] : std::vector<std::array<long, 3>>{{313, 480, 2}, {239, 375, 2}, {3, 5, 2}, {2, 7, 3}}) {
    auto a = Alpha::rational(p, q);
    auto e = prop1_enclosure_L(a, static_cast<std::uint64_t>(N));
    auto d = xi_direct(a, static_cast<std::uint64_t>(N), e.K, Variant::L);
    CHECK(d.hi >= e.xi.lo);
    CHECK(d.lo <= e.xi.hi);
  }

  // a_1 = 1 gives q_0 = q_1 and an empty range
  CHECK(xi_direct(g, 1, 1, Variant::S).hi == 0.0);
  CHECK(xi_closed_form(g, 1, 1, Variant::L).hi == 0.0);
  auto h = Alpha::rational(1, 2);
  CHECK(xi_direct(h, 2, 1, Variant::S).lo > 0);

  // rationals where m alpha = 1/2 appears in the tail
  auto r = Alpha::rational(3, 8);
  auto c = choose_K(r, 8);
  auto d = xi_direct(r, 8, c.K, Variant::S);
  auto f = xi_closed_form(r, 8, c.K, Variant::S);
  CHECK(std::fabs(d.mid() - f.mid()) <= 1e-9);
}

TEST_CASE("enclosures contain the exact value") {
  auto g = golden();
  auto eS = prop1_enclosure_S(g, 89);
  CHECK(contains(eS, build_S(g, 89)));
  CHECK(eS.hi >= 6.28);
  CHECK(eS.budget.lo >= 6.28);
  CHECK(eS.hi - (eS.main_sum.lo + eS.xi.lo - eS.budget.hi) >= 2 * 6.28);
  CHECK(eS.lo >= 0);
  CHECK(contains(prop1_enclosure_L(g, 89), build_L(g, 89)));

  auto r = Alpha::rational(5, 8);
  CHECK(contains(prop1_enclosure_S(r, 8), build_S(r, 8)));
  auto r2 = Alpha::rational(2, 5);
  CHECK(contains(prop1_enclosure_L(r2, 5), build_L(r2, 5)));

  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    const long q = 2 + static_cast<long>(rng() % 300);
    const long p = 1 + static_cast<long>(rng() % static_cast<unsigned long>(q - 1));
    auto a = Alpha::rational(p, q);
    const std::uint64_t qq = to_u64(a.x_scale());
    const std::uint64_t N = 1 + rng() % qq;
    CHECK(contains(prop1_enclosure_S(a, N), build_S(a, N)));
    CHECK(contains(prop1_enclosure_L(a, N), build_L(a, N)));
  }
  for (std::uint64_t N : {1u, 2u, 3u, 100u, 987u, 1000u}) {
    auto e = Alpha::from_cf(cf_rule("euler_e"), 256);
    CHECK(contains(prop1_enclosure_S(e, N), build_S(e, N)));
    CHECK(contains(prop1_enclosure_L(e, N), build_L(e, N)));
  }
}

TEST_CASE("T block identity") {
  auto g = golden();
  for (std::size_t N : {1u, 7u, 89u}) {
    auto e = prop1_enclosure_L(g, N);
    auto s = birkhoff_sums(g, N);
    BigRational var = 0, blk = 0;
    for (std::size_t n = 0; n < N; ++n) {
      const BigRational T = s.T(n);
      var += (T - s.E) * (T - s.E);
      blk += T * T + T / 2;
    }
    const BigInt nn = from_u64(N);
    CHECK(blk / nn == var / nn + s.E * s.E + s.E / 2);
    CHECK(e.t_block.contains(BigRational(blk / nn).get_d()));
  }
}

TEST_CASE("ratio diagnostics") {
  auto r = prop2_ratios(Alpha::rational(1, 2), 1);
  CHECK(r.ratio_S > 0);
  CHECK(r.ratio_L > 0);
  CHECK(std::isfinite(r.ratio_S));
  CHECK(std::isfinite(r.ratio_L));
}

TEST_CASE("variance and mean") {
  auto v = variance_check(Alpha::rational(1, 2), 2);
  auto bs = birkhoff_sums(Alpha::rational(1, 2), 2);
  const BigRational lhs = ((bs.T(0) - bs.E) * (bs.T(0) - bs.E) + (bs.T(1) - bs.E) * (bs.T(1) - bs.E)) / 2;
  CHECK(v.lhs == lhs.get_d());
  CHECK(v.rhs.contains(1.0 / (8 * std::pow(M_PI, 4) * 0.25)));
  CHECK(v.residual == doctest::Approx(v.lhs - v.rhs.mid()));
  CHECK_THROWS_AS(variance_check(Alpha::from_cf(ContinuedFraction::finite(0, {BigInt(9), BigInt(2)}), 64), 18),
                  ValidationError);

  auto en = en_check(golden(), 4);
  CHECK(std::fabs(en.residual) <= 2);
  CHECK(en.E == birkhoff_sums(golden(), 5).E);
  auto h = en_check(Alpha::rational(1, 2), 1);
  CHECK(h.main == BigRational(-1, 6));
  CHECK(h.err == 0);
}

TEST_CASE("trigonometric and finite Fourier identities") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ux(0.0, 3.14159);
  int checked = 0;
  while (checked < 1000) {
    const std::uint64_t N = 1 + rng() % 1000;
    const double x = ux(rng);
    if (std::fabs(std::sin(2 * x)) < 1e-3) continue;
    REQUIRE(trig_identity_residual(N, x) <= 1e-10);
    ++checked;
  }
  for (std::uint64_t q : {2u, 7u, 30u, 101u})
    for (std::uint64_t m = 1; m < 3 * q; ++m)
      if (m % q) REQUIRE(finite_fourier_residual(q, m) <= 1e-12);
  CHECK_THROWS_AS(finite_fourier_residual(5, 10), ValidationError);
}
