#include <sstream>

#include "doctest.h"
#include "latdisc/lattice.hpp"

using namespace latdisc;

namespace {

BigRational rat(long p, long q) {
  BigRational r(p, q);
  r.canonicalize();
  return r;
}

std::vector<BigRational> xs(const LatticePointSet& P) {
  std::vector<BigRational> out;
  for (std::size_t i = 0; i < P.size(); ++i) out.push_back(P.points.x.fraction(i));
  return out;
}

}  // namespace

TEST_CASE("build_L") {
  auto one = build_L(Alpha::rational(3, 7), 1);
  REQUIRE(one.size() == 1);
  CHECK(one.points.x.fraction(0) == 0);
  CHECK(one.points.y.fraction(0) == 0);

  auto third = build_L(Alpha::rational(1, 3), 3);
  CHECK(xs(third) == std::vector<BigRational>{0, rat(1, 3), rat(2, 3)});
  for (std::size_t i = 0; i < 3; ++i) CHECK(third.points.y.fraction(i) == rat(static_cast<long>(i), 3));

  auto five = build_L(Alpha::rational(2, 5), 5);
  CHECK(xs(five) == std::vector<BigRational>{0, rat(2, 5), rat(4, 5), rat(1, 5), rat(3, 5)});
  CHECK_THROWS_AS(build_L(Alpha::rational(2, 5), 0), ValidationError);
}

TEST_CASE("build_S") {
  auto one = build_S(Alpha::rational(3, 7), 1);
  REQUIRE(one.size() == 2);
  CHECK(one.points.x.fraction(0) == 0);
  CHECK(one.points.x.fraction(1) == 0);

  auto third = build_S(Alpha::rational(1, 3), 3);
  CHECK(xs(third) == std::vector<BigRational>{0, rat(1, 3), rat(2, 3), 0, rat(2, 3), rat(1, 3)});
  CHECK(third.points.y.fraction(4) == rat(1, 3));

  // S is L together with its reflection x -> 1 - x, with 0 fixed
  auto alpha = Alpha::from_cf(cf_rule("euler_e"), 256);
  auto L = build_L(alpha, 200);
  auto S = build_S(alpha, 200);
  REQUIRE(S.size() == 400);
  for (std::size_t n = 0; n < 200; ++n) {
    CHECK(S.points.x.value(n) == L.points.x.value(n));
    const BigInt x = L.points.x.value(n);
    CHECK(S.points.x.value(200 + n) == (x == 0 ? BigInt(0) : BigInt(S.points.x.scale() - x)));
  }
}

TEST_CASE("full period permutes the grid") {
  for (long q : {7L, 30L, 101L, 256L}) {
    for (long p = 1; p < q; ++p) {
      BigRational a(p, q);
      a.canonicalize();
      if (a.get_den() != q) continue;
      auto L = build_L(Alpha::rational(p, q), static_cast<std::size_t>(q));
      auto v = xs(L);
      std::sort(v.begin(), v.end());
      for (long i = 0; i < q; ++i) REQUIRE(v[static_cast<std::size_t>(i)] == rat(i, q));
    }
  }
}

TEST_CASE("sizes and coordinate error") {
  auto g = Alpha::from_cf(cf_of_surd(QuadraticSurd::make(-1, 5, 2)), 256);
  for (std::size_t N : {1u, 2u, 17u, 1000u}) {
    CHECK(build_L(g, N).size() == N);
    CHECK(build_S(g, N).size() == 2 * N);
  }
  auto L = build_L(g, 1000);
  CHECK(L.x_err > 0);
  CHECK(L.d2sq_error() < BigRational(1, BigInt(1) << 200));
  CHECK(build_L(Alpha::rational(1, 3), 10).x_err == 0);
}

TEST_CASE("csv output") {
  auto L = build_S(Alpha::rational(1, 3), 2);
  std::ostringstream exact, flt;
  write_csv_exact(exact, L);
  write_csv_float(flt, L);
  CHECK(exact.str() == "n,x_num,x_den_or_scale,y_num,y_den\n0,0,3,0,2\n1,1,3,1,2\n0,0,3,0,2\n1,2,3,1,2\n");
  CHECK(flt.str().substr(0, 4) == "x,y\n");
}
