#include "support.hpp"

#include "arakelov/rigor/certify.hpp"
#include "arakelov/rigor/elementary.hpp"
#include "arakelov/rigor/expr.hpp"

#include <cstdlib>

using namespace arakelov::rigor;
using testing::agrees;

TEST_SUITE("rigor") {

// Reference digits from tests/oracles/oracles.py (mpmath, 60 digits).
TEST_CASE("constants against mpmath") {
  PrecisionGuard g(128);
  CHECK(agrees(pi(), "3.141592653589793238462643383279502884197", 1e-36));
  CHECK(agrees(exp(Interval(1)), "2.718281828459045235360287471352662497757", 1e-36));
  CHECK(agrees(log(Interval(10)), "2.302585092994045684017991454684364207601", 1e-36));
  CHECK(pi().width() < 1e-37);
}

TEST_CASE("exact construction") {
  PrecisionGuard g(128);
  CHECK(Interval::ratio(3, 20).contains(mpq_class(3, 20)));
  CHECK(Interval(7).is_point());
  CHECK(Interval::from(mpz_class("3099722823")).is_point());
  const Interval tenth = Interval::decimal("0.1");
  CHECK(!tenth.is_point());
  CHECK(tenth.contains(mpq_class(1, 10)));
  CHECK_THROWS_AS(Interval::decimal("abc"), std::invalid_argument);
}

TEST_CASE("arithmetic encloses exact rationals") {
  PrecisionGuard g(64);
  const Interval a = Interval::ratio(1, 3), b = Interval::ratio(2, 7);
  CHECK((a + b).contains(mpq_class(13, 21)));
  CHECK((a - b).contains(mpq_class(1, 21)));
  CHECK((a * b).contains(mpq_class(2, 21)));
  CHECK((a / b).contains(mpq_class(7, 6)));
  CHECK(sqr(Interval::hull(Interval(-2), Interval(1))).contains(0));
  CHECK(sqr(Interval::hull(Interval(-2), Interval(1))).lower() == 0);
  CHECK(pow(Interval(-2), 3).contains(-8));
  CHECK_THROWS_AS(Interval(1) / Interval::hull(Interval(-1), Interval(1)), DomainError);
  CHECK_THROWS_AS(log(Interval(0)), DomainError);
  CHECK_THROWS_AS(sqrt(Interval(-1)), DomainError);
}

TEST_CASE("decided comparisons") {
  PrecisionGuard g(128);
  CHECK(certainly_lt(Interval(1), Interval(2)));
  CHECK(!certainly_lt(Interval(1), Interval(1)));
  CHECK(certainly_le(Interval(1), Interval(1)));
  const Interval wide = Interval::hull(Interval(0), Interval(3));
  CHECK(!certainly_le(wide, Interval(2)));
  CHECK(!certainly_ge(wide, Interval(2)));
  CHECK(check_le(wide, Interval(2)).status == Status::Undecided);
  CHECK(check_le(Interval(3), Interval(2)).status == Status::Refuted);
  CHECK(check_lt(Interval(1), Interval(2)).certified());
}

TEST_CASE("decimal rendering rounds outward") {
  PrecisionGuard g(128);
  const Interval t = Interval::ratio(1, 3);
  const std::string lo = decimal_string(t.lo(), 30, MPFR_RNDD);
  const std::string hi = decimal_string(t.hi(), 30, MPFR_RNDU);
  CHECK(lo < hi);
  CHECK(Interval::decimal(lo).lower() <= 1.0 / 3);
  CHECK(certainly_le(Interval::decimal(lo), t));
  CHECK(certainly_ge(Interval::decimal(hi), t));
}

TEST_CASE("precision guard restores") {
  const auto before = working_precision();
  {
    PrecisionGuard g(300);
    CHECK(working_precision() == 300);
    CHECK(Interval(1).precision() == 300);
  }
  CHECK(working_precision() == before);
}

TEST_CASE("expression evaluation and gradient") {
  PrecisionGuard g(128);
  const Expr x = Expr::var("x");
  const Expr f = x * exp(x) - log(x + 1);
  Box box{{"x", Interval(1)}};
  CHECK(agrees(f.eval(box), "2.025134647899099925943055349894485929682", 1e-35));
  // f'(x) = (1 + x) e^x - 1/(x+1) at x = 1 is 2e - 1/2.
  const Dual d = f.eval_dual(box);
  REQUIRE(d.grad.size() == 1);
  CHECK(d.grad[0].contains(Interval(2) * exp(Interval(1)) - Interval::ratio(1, 2)));
}

TEST_CASE("certifier verdicts") {
  PrecisionGuard g(128);
  PrecisionConfig cfg;
  const Expr x = Expr::var("x");
  const Box box{{"x", Interval::hull(Interval(0), Interval(1))}};

  SUBCASE("true claim is certified") {
    const CertResult r = certify_on_box(exp(x) >= x + 1, box, cfg);
    CHECK(r.certified());
  }
  SUBCASE("false claim is refuted with a witness") {
    const CertResult r = certify_on_box(x * x <= Interval::ratio(1, 2), box, cfg);
    REQUIRE(r.refuted());
    REQUIRE(r.witness);
    const Interval w = r.witness->at("x");
    CHECK(certainly_gt(sqr(w), Interval::ratio(1, 2)));
  }
  SUBCASE("touching claim at depth cap is undecided") {
    PrecisionConfig shallow = cfg;
    shallow.max_depth = 6;
    // x(1-x) <= 1/4 is tight at x = 1/2; strictness makes it undecidable.
    const CertResult r = certify_on_box(x * (1 - x) < Interval::ratio(1, 4), box, shallow);
    CHECK(r.status == Status::Undecided);
  }
  SUBCASE("deterministic") {
    const CertResult a = certify_on_box(x * x <= Interval::ratio(1, 2), box, cfg);
    const CertResult b = certify_on_box(x * x <= Interval::ratio(1, 2), box, cfg);
    CHECK(a.boxes == b.boxes);
    CHECK(a.witness->at("x").identical(b.witness->at("x")));
  }
}

TEST_CASE("conjoin and chains") {
  const CertResult c = certified_result();
  CHECK(conjoin({c, c}).certified());
  CHECK(conjoin({c, undecided_result({}), refuted_result({})}).refuted());
  CHECK(conjoin({c, undecided_result({})}).status == Status::Undecided);
  const ChainResult ch = make_chain({le_check("a", Interval(1), Interval(2)), exact_check("b", false, 1, 0)});
  CHECK(ch.result.refuted());
  CHECK(ch.checks.size() == 2);
}

TEST_CASE("config from environment") {
  setenv("ARAKELOV_PRECISION_BITS", "200", 1);
  setenv("ARAKELOV_MAX_DEPTH", "12", 1);
  const PrecisionConfig cfg = PrecisionConfig::from_env();
  CHECK(cfg.working_bits == 200);
  CHECK(cfg.max_depth == 12);
  setenv("ARAKELOV_PRECISION_BITS", "10", 1);
  CHECK_THROWS_AS(PrecisionConfig::from_env(), std::invalid_argument);
  unsetenv("ARAKELOV_PRECISION_BITS");
  unsetenv("ARAKELOV_MAX_DEPTH");
}

}  // TEST_SUITE
