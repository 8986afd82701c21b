#include "support.hpp"

#include "arakelov/invariants.hpp"
#include "arakelov/rigor/elementary.hpp"

using namespace arakelov::invariants;
using arakelov::rigor::certainly_le;
using arakelov::rigor::PrecisionConfig;
using arakelov::rigor::PrecisionGuard;
using arakelov::rigor::Status;

namespace {

Interval log2pi() { return arakelov::rigor::log(arakelov::rigor::scale2(arakelov::rigor::pi(), 1)); }

}  // namespace

TEST_SUITE("invariants") {

TEST_CASE("Minkowski constant") {
  PrecisionGuard g(128);
  CHECK(minkowski_c_exact(1) == 1);
  CHECK(minkowski_c_exact(2) == mpq_class(3, 8));
  CHECK(minkowski_c_exact(3) == mpq_class(1, 108));
  CHECK(minkowski_c(2).contains(mpq_class(3, 8)));
}

TEST_CASE("theta sum bound") {
  for (long g = 1; g <= 10; ++g) {
    CAPTURE(g);
    CHECK(theta_sum_cert(g).certified());
  }
}

TEST_CASE("theta max bound") {
  PrecisionGuard g(128);
  CHECK(theta_max_bound(1, Interval(1)).overlaps(Interval(10) * arakelov::rigor::ln2()));
  // (2/4) log 100 + 43 log 2 at g = 2.
  CHECK(theta_max_bound(2, Interval(100))
            .overlaps(Interval::ratio(1, 2) * arakelov::rigor::log(Interval(100)) + Interval(43) * arakelov::rigor::ln2()));
}

TEST_CASE("elementary inequality") {
  PrecisionConfig cfg;
  PrecisionGuard g(128);
  IneqQuery q;
  q.a = Interval::ratio(1, 4);
  q.b = -log2pi();
  CHECK(ineq_lemma_cert(q, cfg).certified());

  IneqQuery big;
  big.a = Interval(10);
  big.b = Interval(0);
  big.keep_min_branch = false;
  // Without the a - a log 2a branch the inequality fails near x = 2a.
  CHECK(ineq_lemma_cert(big, cfg).refuted());
}

TEST_CASE("Bost lower bound and Noether residual") {
  PrecisionGuard g(128);
  CHECK(bost_lower(2).overlaps(Interval(-2) * log2pi()));
  InvariantVector v{Interval(1), Interval(2), Interval(4), Interval(3), std::nullopt, std::nullopt, std::nullopt};
  CHECK(noether_residual(v, 1).overlaps(Interval(12) - (Interval(9) - Interval(4) * log2pi())));
  CHECK_THROWS_AS(sr_identity_residual(v), UnavailableError);
  v.log_S = Interval(5);
  v.log_R = Interval(1);
  CHECK(sr_identity_residual(v).overlaps(Interval(5) - Interval::ratio(1, 2) - Interval(1)));
}

TEST_CASE("Faltings height via the Arakelov invariants of a genus >= 2 curve") {
  PrecisionGuard g(128);
  for (long gg = 2; gg <= 10; ++gg) {
    const FaltingsOmega f = faltingsomega1(gg, Interval(0), Interval(0));
    CAPTURE(gg);
    CHECK(f.link.result.certified());
    CHECK(f.h_fal_upper.overlaps(Interval(20 * gg * gg * gg)));
    CHECK(f.disc_upper.overlaps(Interval(248 * gg * gg * gg)));
  }
  CHECK_THROWS(faltingsomega1(1, Interval(0), Interval(0)));
}

TEST_CASE("discriminant constant needs g >= 2") {
  PrecisionGuard g(128);
  HeightData one{1, Interval(10), Interval(10), true};
  const InvariantBounds b1 = upperboundinv(one);
  CHECK(b1.disc_constant.result.refuted());
  CHECK(b1.disc_derived.has_value());
  HeightData two{2, Interval(10), Interval(10), true};
  CHECK(upperboundinv(two).disc_constant.result.certified());
}

TEST_CASE("Weierstrass points give no upper bound") {
  PrecisionGuard g(128);
  HeightData h{2, Interval(10), Interval(10), false};
  CHECK(!upperboundinv(h).bounds.h_fal.upper.has_value());
}

TEST_CASE("main composition at d = 3, g = 1") {
  PrecisionConfig cfg;
  PrecisionGuard g(128);
  const MainTheorem m = compose_mainthm(3, 1, cfg);
  CHECK(m.h_fal_exact == 3099722823L);
  CHECK(m.h_fal_exact <= 3159000000L);
  CHECK(m.table.h_fal.upper->contains(3159000000L));
  CHECK(m.chain.result.certified());
  CHECK(certainly_le(*m.composed.delta.upper, *m.table.delta.upper));
  CHECK(certainly_le(m.table.delta.lower, m.composed.delta.lower));
}

TEST_CASE("main composition over a small sweep") {
  PrecisionConfig cfg;
  for (long d = 3; d <= 12; ++d)
    for (long g = 1; g <= d; ++g) {
      CAPTURE(d);
      CAPTURE(g);
      CHECK(compose_mainthm(d, g, cfg).chain.result.status == Status::Certified);
    }
  CHECK_THROWS(compose_mainthm(3, 4, cfg));
  CHECK_THROWS(compose_mainthm(2, 1, cfg));
}

}  // TEST_SUITE
