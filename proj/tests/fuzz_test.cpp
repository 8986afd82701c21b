#include "support.hpp"

#include "fuzz_harness.hpp"

TEST_SUITE("fuzz") {

TEST_CASE("containment per primitive") {
  for (const auto& [name, violations] : fuzz::all_primitives()) {
    CAPTURE(name);
    CHECK(violations == 0);
  }
}

TEST_CASE("the harness catches an inward-rounded operation") {
  // Dropping the outward rounding on exp must show up as violations.
  const int bad = fuzz::run_unary(
      [](const fuzz::Interval& x) {
        const fuzz::Interval e = exp(x);
        return e.midpoint();
      },
      [](mpfr_ptr r, double x, mpfr_rnd_t d) { fuzz::set1(r, x, d, mpfr_exp); }, -5, 5, false, 11, 2000);
  CHECK(bad > 0);
}

}  // TEST_SUITE
