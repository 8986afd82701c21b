#pragma once

#include "arakelov/rigor/elementary.hpp"
#include "arakelov/rigor/interval.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

// Containment fuzz: an operation on intervals must enclose the correctly
// rounded MPFR value at 512 bits for every point drawn from the operands.

namespace fuzz {

using namespace arakelov::rigor;

inline constexpr int kSamples = 100'000;
inline constexpr mpfr_prec_t kOracleBits = 512;
inline constexpr mpfr_prec_t kPrecisions[] = {53, 64, 128, 200};

struct Oracle {
  mpfr_t lo, hi;
  Oracle() {
    mpfr_init2(lo, kOracleBits);
    mpfr_init2(hi, kOracleBits);
  }
  ~Oracle() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
};

using MpfrUnary = std::function<void(mpfr_ptr, double, mpfr_rnd_t)>;
using MpfrBinary = std::function<void(mpfr_ptr, double, double, mpfr_rnd_t)>;

inline bool inside(const Interval& out, const Oracle& o) {
  return mpfr_cmp(out.lo(), o.lo) <= 0 && mpfr_cmp(o.hi, out.hi()) <= 0;
}

// An interval [a, b] with a random width and one point inside it.
struct Drawn {
  double lo, hi, point;
};

inline Drawn draw(std::mt19937_64& rng, double center_lo, double center_hi, bool log_scale) {
  std::uniform_real_distribution<double> u(0, 1);
  double c = log_scale ? std::exp(std::log(center_lo) + u(rng) * (std::log(center_hi) - std::log(center_lo)))
                       : center_lo + u(rng) * (center_hi - center_lo);
  const double kinds[] = {0, 1e-12, 1e-6, 1e-2};
  const double w = kinds[rng() % 4] * std::max(1.0, std::fabs(c));
  double lo = c - w * u(rng), hi = c + w * u(rng);
  if (log_scale) lo = std::max(lo, center_lo);
  double p = lo + u(rng) * (hi - lo);
  p = std::min(std::max(p, lo), hi);
  if (rng() % 8 == 0) p = (rng() % 2) ? lo : hi;
  return {lo, hi, p};
}

inline int run_unary(const std::function<Interval(const Interval&)>& op, const MpfrUnary& ref,
               double a, double b, bool log_scale, std::uint64_t seed, int samples = kSamples) {
  std::mt19937_64 rng(seed);
  Oracle o;
  int violations = 0;
  for (int i = 0; i < samples; ++i) {
    const Drawn x = draw(rng, a, b, log_scale);
    PrecisionGuard g(kPrecisions[i % 4]);
    const Interval in = Interval::hull(Interval::exact(x.lo), Interval::exact(x.hi));
    const Interval out = op(in);
    ref(o.lo, x.point, MPFR_RNDD);
    ref(o.hi, x.point, MPFR_RNDU);
    if (!inside(out, o)) ++violations;
  }
  return violations;
}

inline int run_binary(const std::function<Interval(const Interval&, const Interval&)>& op,
                const MpfrBinary& ref, double a, double b, double c, double d, std::uint64_t seed,
                      int samples = kSamples) {
  std::mt19937_64 rng(seed);
  Oracle o;
  int violations = 0;
  for (int i = 0; i < samples; ++i) {
    const Drawn x = draw(rng, a, b, false);
    const Drawn y = draw(rng, c, d, false);
    PrecisionGuard g(kPrecisions[i % 4]);
    const Interval ix = Interval::hull(Interval::exact(x.lo), Interval::exact(x.hi));
    const Interval iy = Interval::hull(Interval::exact(y.lo), Interval::exact(y.hi));
    const Interval out = op(ix, iy);
    ref(o.lo, x.point, y.point, MPFR_RNDD);
    ref(o.hi, x.point, y.point, MPFR_RNDU);
    if (!inside(out, o)) ++violations;
  }
  return violations;
}

inline void set2(mpfr_ptr r, double x, double y, mpfr_rnd_t d, int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) {
  mpfr_t a, b;
  mpfr_init2(a, 64);
  mpfr_init2(b, 64);
  mpfr_set_d(a, x, MPFR_RNDN);
  mpfr_set_d(b, y, MPFR_RNDN);
  f(r, a, b, d);
  mpfr_clear(a);
  mpfr_clear(b);
}

inline void set1(mpfr_ptr r, double x, mpfr_rnd_t d, int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
  mpfr_t a;
  mpfr_init2(a, 64);
  mpfr_set_d(a, x, MPFR_RNDN);
  f(r, a, d);
  mpfr_clear(a);
}

inline int pi_violations() {
  Oracle o;
  mpfr_const_pi(o.lo, MPFR_RNDD);
  mpfr_const_pi(o.hi, MPFR_RNDU);
  int violations = 0;
  for (mpfr_prec_t bits = 53; bits <= 400; bits += 7) {
    PrecisionGuard g(bits);
    if (!inside(pi(), o)) ++violations;
  }
  return violations;
}

inline void pow5(mpfr_ptr r, double x, mpfr_rnd_t d) {
  mpfr_t a;
  mpfr_init2(a, 64);
  mpfr_set_d(a, x, MPFR_RNDN);
  mpfr_pow_si(r, a, 5, d);
  mpfr_clear(a);
}

using Counts = std::vector<std::pair<std::string, int>>;

// Violation count per primitive; each gets `samples` draws with its own seed.
inline Counts all_primitives(int samples = kSamples) {
  Counts c;
  auto b = [&](const char* name, auto op, auto f, double a0, double a1, double b0, double b1, std::uint64_t seed) {
    c.emplace_back(name, run_binary(op, [f](mpfr_ptr r, double x, double y, mpfr_rnd_t d) { set2(r, x, y, d, f); },
                                    a0, a1, b0, b1, seed, samples));
  };
  auto u = [&](const char* name, auto op, auto f, double a0, double a1, bool log_scale, std::uint64_t seed) {
    c.emplace_back(name, run_unary(op, [f](mpfr_ptr r, double x, mpfr_rnd_t d) { set1(r, x, d, f); }, a0, a1,
                                   log_scale, seed, samples));
  };
  b("add", [](const Interval& x, const Interval& y) { return x + y; }, mpfr_add, -1e6, 1e6, -1e6, 1e6, 1);
  b("sub", [](const Interval& x, const Interval& y) { return x - y; }, mpfr_sub, -1e3, 1e3, -1e3, 1e3, 2);
  b("mul", [](const Interval& x, const Interval& y) { return x * y; }, mpfr_mul, -1e4, 1e4, -1e4, 1e4, 3);
  b("div", [](const Interval& x, const Interval& y) { return x / y; }, mpfr_div, -1e4, 1e4, 0.5, 1e4, 4);
  u("sqr", [](const Interval& x) { return sqr(x); }, mpfr_sqr, -1e4, 1e4, false, 5);
  c.emplace_back("pow", run_unary([](const Interval& x) { return pow(x, 5); }, pow5, -50, 50, false, 6, samples));
  u("sqrt", [](const Interval& x) { return sqrt(x); }, mpfr_sqrt, 1e-8, 1e8, true, 7);
  u("abs", [](const Interval& x) { return abs(x); }, mpfr_abs, -1e3, 1e3, false, 8);
  u("exp", [](const Interval& x) { return exp(x); }, mpfr_exp, -60, 60, false, 9);
  u("log", [](const Interval& x) { return log(x); }, mpfr_log, 1e-12, 1e12, true, 10);
  c.emplace_back("pi", pi_violations());
  return c;
}

}  // namespace fuzz
