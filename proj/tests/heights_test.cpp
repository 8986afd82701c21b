#include "support.hpp"

#include "arakelov/heights.hpp"
#include "arakelov/rigor/elementary.hpp"

#include <random>

using namespace arakelov::heights;
using arakelov::rigor::DomainError;
using arakelov::rigor::PrecisionConfig;
using arakelov::rigor::PrecisionGuard;
using testing::agrees;

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long k = 2; k * k <= p; ++k)
    if (p % k == 0) return false;
  return true;
}

}  // namespace

TEST_SUITE("heights") {

TEST_CASE("rationals and heights") {
  PrecisionGuard g(128);
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational::parse("-3/2") == Rational(-3, 2));
  CHECK(Rational::parse("+7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK(exp_height(Rational(-3, 2)) == 3);
  CHECK(exp_height(Rational(2, 7)) == 7);
  CHECK(exp_height(Rational(0)) == 1);
  CHECK(naive_height(Rational(0)).contains(0));
  CHECK(naive_height(Rational(1, 2)).contains(arakelov::rigor::ln2()));
  CHECK(Rational(2, 3).inverse() == Rational(3, 2));
}

TEST_CASE("branch lists") {
  const auto pts = parse_branch_list("0, 1, inf, 1/2, 0, oo");
  const BranchSet b = branch_stats(pts);
  CHECK(b.N == 4);
  REQUIRE(b.H_B_exact);
  CHECK(*b.H_B_exact == 2);
  CHECK(b.points[2].str() == "inf");
  CHECK(branch_stats(parse_branch_list("infinity,-5/3")).H_B_exact.value() == 5);
  CHECK_THROWS(parse_branch_list("0,,1"));
  CHECK_THROWS(parse_branch_list("0,x"));
  CHECK_THROWS(branch_override(0, Interval(1)));
}

TEST_CASE("Khadjavi exponent and constant") {
  PrecisionGuard g(128);
  CHECK(khadjavi_exponent(1) == mpq_class(45, 2));
  CHECK(khadjavi_degree_exponent(1) == mpq_class(9, 2));
  CHECK(khadjavi_exponent(3) == 14580);
  CHECK(khadjavi_exponent(4) == 276480);
  CHECK(khadjavi_exponent(3) == 5 * khadjavi_degree_exponent(3));
  CHECK(agrees(log_khadjavi(3, Interval(1)), "36229.93895390904452314916421605085349884", 1e-25));
}

TEST_CASE("Lenstra bound") {
  // The different exponent of Q2(sqrt(-1))/Q2 is 2; the bound 3 is attained
  // for Q2(sqrt 2)/Q2, the classical wild quadratic case.
  CHECK(lenstra_bound({2, 1}) == 3);
  CHECK(lenstra_bound({1, 0}) == 0);
  CHECK(lenstra_bound({5, 0}) == 4);
  CHECK(floor_log(5, 2) == 2);
  CHECK(floor_log(8, 2) == 3);
  CHECK(floor_log(7, 11) == 0);
  CHECK(lenstra_bound_p(2, 2, 4, 1) == 5);
  CHECK(lenstra_bound_p(3, 7, 5, 1) == 2);
  CHECK_THROWS(lenstra_bound_p(2, 4, 5, 1));
}

TEST_CASE("tame reduction over random cases") {
  std::mt19937_64 rng(99);
  std::vector<long> primes;
  for (long p = 2; p < 200; ++p)
    if (is_prime(p)) primes.push_back(p);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const long e = 1 + static_cast<long>(rng() % 40);
    const long d = 1 + static_cast<long>(rng() % 100);
    const long p = primes[rng() % primes.size()];
    const long ord = (i % 2 == 0) ? 0 : 1 + static_cast<long>(rng() % 5);
    if (lenstra_bound({e, 0}) != e - 1) ++bad;
    if (p > d && lenstra_bound_p(e, p, d, ord) != e - 1) ++bad;
    if (ord == 0 && lenstra_bound_p(e, p, d, 0) != e - 1) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("wild bound absorbs e - 1") {
  const WildBound w = wild_bound(2, 3, 2);
  CHECK(w.value == 24);
  CHECK(w.absorption.certified());
  CHECK_THROWS_AS(wild_bound(2, 0, 2), DomainError);
}

TEST_CASE("finite intersection and prime sum") {
  PrecisionGuard g(128);
  const FiniteIntersection f = finite_intersection_bound({3, Interval(2), 5});
  // 3*2*5 + 2*9*log 3*5
  CHECK(f.raw.overlaps(Interval(30) + Interval(90) * arakelov::rigor::log(Interval(3))));
  CHECK(f.per_field_degree.overlaps(Interval(6) + Interval(18) * arakelov::rigor::log(Interval(3))));
  CHECK(prime_sum_diagnostic(10).overlaps(arakelov::rigor::log(Interval(2520))));
}

TEST_CASE("points avoiding Weierstrass points") {
  CHECK(weierstrass_avoiding_point(1) == Rational(1, 2));
  CHECK(weierstrass_avoiding_point(2) == Rational(2, 3));
  CHECK(weierstrass_avoiding_point(10) == Rational(10, 19));
  for (long n = 1; n < 200; ++n) CHECK(exp_height(weierstrass_avoiding_point(n)) <= 2 * n);
}

TEST_CASE("height of a point at d = 3, g = 1") {
  PrecisionConfig cfg;
  PrecisionGuard g(128);
  const PointHeightBound hp = height_point_bound(3, 1, Rational(1, 2), cfg);
  CHECK(hp.chain.result.certified());
  CHECK(hp.value.overlaps(Interval(27) * arakelov::rigor::ln2() + Interval(6378031L * 243)));
  CHECK_THROWS_AS(height_point_bound(3, 1, Rational(3, 4), cfg), DomainError);
  CHECK_THROWS_AS(height_point_bound(3, 1, Rational(0), cfg), DomainError);
  CHECK_THROWS_AS(height_point_bound(2, 1, Rational(1, 2), cfg), DomainError);
  CHECK(archimedean_chain(3, 1, cfg).result.certified());
}

TEST_CASE("non-Weierstrass height bound") {
  PrecisionConfig cfg;
  PrecisionGuard g(128);
  const PointHeightBound nw = nonweierstrass_height_bound(3, 1, cfg);
  CHECK(nw.chain.result.certified());
  CHECK(nw.value.contains(1549862019L));
  for (long d = 3; d <= 16; ++d)
    for (long gg = 1; gg <= d; ++gg) {
      CAPTURE(d);
      CAPTURE(gg);
      CHECK(nonweierstrass_height_bound(d, gg, cfg).chain.result.certified());
    }
}

}  // TEST_SUITE
