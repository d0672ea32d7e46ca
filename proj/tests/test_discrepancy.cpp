#include <random>

#include "doctest.h"
#include "latdisc/discrepancy.hpp"
#include "oracles.hpp"

using namespace latdisc;

namespace {

using Pts = std::vector<std::pair<BigRational, BigRational>>;

Pts to_pairs(const PointSet& P) {
  Pts out;
  for (std::size_t i = 0; i < P.size(); ++i) out.emplace_back(P.x.fraction(i), P.y.fraction(i));
  return out;
}

Pts random_points(std::mt19937_64& rng, std::size_t n, long max_den) {
  Pts pts;
  std::uniform_int_distribution<long> den(1, max_den);
  for (std::size_t i = 0; i < n; ++i) {
    const long dx = den(rng), dy = den(rng);
    BigRational x(static_cast<long>(rng() % static_cast<unsigned long>(dx)), dx);
    BigRational y(static_cast<long>(rng() % static_cast<unsigned long>(dy)), dy);
    x.canonicalize();
    y.canonicalize();
    pts.emplace_back(x, y);
  }
  return pts;
}

}  // namespace

TEST_CASE("single points") {
  auto P = PointSet::from_rationals({{0, 0}});
  CHECK(d2_exact_quadratic(P).d2_squared == BigRational(11, 18));
  CHECK(d2_exact_fast(P).d2_squared == BigRational(11, 18));
  auto P2 = PointSet::from_rationals({{0, 0}, {0, 0}});
  CHECK(d2_exact_quadratic(P2).d2_squared == BigRational(22, 9));
  CHECK(d2_exact_fast(P2).d2_squared == BigRational(22, 9));
  CHECK(d2(P) == doctest::Approx(std::sqrt(11.0 / 18)));
  CHECK_THROWS_AS(d2_exact_fast(PointSet::from_rationals({})), ValidationError);
  CHECK_THROWS_AS(PointSet::from_rationals({{1, 0}}), ValidationError);
}

TEST_CASE("quadratic formula against piecewise integration") {
  auto L = build_L(Alpha::rational(1, 3), 3);
  CHECK(d2_exact_quadratic(L).d2_squared == oracle::piecewise_l2(to_pairs(L.points)));

  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    auto pts = random_points(rng, 1 + rng() % 6, 12);
    auto P = PointSet::from_rationals(pts);
    REQUIRE(d2_exact_quadratic(P).d2_squared == oracle::piecewise_l2(pts));
  }
}

TEST_CASE("fast path equals the quadratic sum") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    // small denominators exercise ties; large ones the wide-integer path
    const long max_den = t % 3 == 0 ? 5 : (t % 3 == 1 ? 1000 : 1000000007L);
    auto pts = random_points(rng, 1 + rng() % 60, max_den);
    auto P = PointSet::from_rationals(pts);
    auto fast = d2_exact_fast(P).d2_squared;
    REQUIRE(fast == d2_exact_quadratic(P).d2_squared);
    REQUIRE(fast > 0);
  }
  for (auto spec : {std::pair<long, long>{5, 8}, {13, 30}, {1, 2}}) {
    auto a = Alpha::rational(spec.first, spec.second);
    for (std::size_t N : {1u, 2u, 8u, 31u, 100u}) {
      REQUIRE(d2_exact_fast(build_S(a, N)).d2_squared == d2_exact_quadratic(build_S(a, N)).d2_squared);
      REQUIRE(d2_exact_fast(build_L(a, N)).d2_squared == d2_exact_quadratic(build_L(a, N)).d2_squared);
    }
  }
  auto g = Alpha::from_cf(cf_of_surd(QuadraticSurd::make(-1, 5, 2)), 256);
  for (std::size_t N : {1u, 89u, 500u}) {
    REQUIRE(d2_exact_fast(build_S(g, N)).d2_squared == d2_exact_quadratic(build_S(g, N)).d2_squared);
  }
}

TEST_CASE("permutation invariance") {
  std::mt19937_64 rng(3);
  auto pts = random_points(rng, 80, 40);
  auto ref = d2_exact_fast(PointSet::from_rationals(pts)).d2_squared;
  for (int t = 0; t < 10; ++t) {
    std::shuffle(pts.begin(), pts.end(), rng);
    CHECK(d2_exact_fast(PointSet::from_rationals(pts)).d2_squared == ref);
  }
}

TEST_CASE("coordinate perturbation") {
  std::mt19937_64 rng(5);
  const BigRational eps(1, 1000);
  for (int t = 0; t < 50; ++t) {
    auto pts = random_points(rng, 1 + rng() % 30, 50);
    auto moved = pts;
    for (auto& [x, y] : moved) {
      BigRational dx(static_cast<long>(rng() % 3) - 1, 1000), dy(static_cast<long>(rng() % 3) - 1, 1000);
      dx.canonicalize();
      dy.canonicalize();
      if (x + dx >= 0 && x + dx < 1) x += dx;
      if (y + dy >= 0 && y + dy < 1) y += dy;
    }
    auto a = d2_exact_fast(PointSet::from_rationals(pts)).d2_squared;
    auto b = d2_exact_fast(PointSet::from_rationals(moved)).d2_squared;
    const long n = static_cast<long>(pts.size());
    CHECK(abs(a - b) <= 5 * n * n * eps);
  }
}
