#include "arakelov/rigor/elementary.hpp"

#include <algorithm>
#include <unordered_map>

namespace arakelov::rigor {

namespace {

constexpr mpfr_prec_t kGuardBits = 40;

// |x| < 2^-bits, decided on the upper bound of |x|.
bool below_ulp(const Interval& x, mpfr_prec_t bits) {
  return mpfr_cmp_si_2exp(abs(x).hi(), 1, -static_cast<mpfr_exp_t>(bits)) < 0;
}

Interval symmetric(const Interval& magnitude) {
  const Interval m = abs(magnitude);
  return Interval::hull(-m, m);
}

// sum_{j>=0} z^(2j+1)/(2j+1) for |z| <= 1/5; tail bounded by
// |z|^(2k+1) / ((2k+1)(1 - z^2)).
Interval atanh_series(const Interval& z) {
  const mpfr_prec_t bits = working_precision();
  const Interval z2 = sqr(z);
  Interval power = z;
  Interval sum = z;
  for (long k = 1;; ++k) {
    power *= z2;
    const Interval denom(2 * k + 1);
    if (below_ulp(power, bits + 4)) {
      const Interval tail = abs(power) / (denom * (Interval(1) - z2));
      return sum + symmetric(tail);
    }
    sum += power / denom;
  }
}

// atan(1/k) by the alternating series; the first omitted term bounds the tail.
Interval atan_inverse(long k) {
  const mpfr_prec_t bits = working_precision();
  const Interval x = Interval(1) / Interval(k);
  const Interval x2 = sqr(x);
  Interval power = x;
  Interval sum = x;
  for (long j = 1;; ++j) {
    power *= x2;
    const Interval term = power / Interval(2 * j + 1);
    if (below_ulp(power, bits + 4)) return sum + symmetric(term);
    sum = (j % 2 == 1) ? sum - term : sum + term;
  }
}

template <typename Compute>
Interval cached(std::unordered_map<mpfr_prec_t, Interval>& cache, Compute compute) {
  const mpfr_prec_t target = working_precision();
  if (auto it = cache.find(target); it != cache.end()) return it->second;
  Interval value;
  {
    PrecisionGuard guard(target + kGuardBits);
    value = compute();
  }
  auto [it, inserted] = cache.emplace(target, value.rounded(target));
  return it->second;
}

Interval exp_point(mpfr_srcptr x) {
  const mpfr_prec_t target = working_precision();
  if (mpfr_zero_p(x)) return Interval(1);
  if (!mpfr_number_p(x)) throw DomainError("exp of a non-finite value");
  const long e = mpfr_get_exp(x);  // 2^(e-1) <= |x| < 2^e
  if (e > 28) throw DomainError("exp argument out of range");
  const long shift = std::max(0L, e + 12);  // reduced argument |r| < 2^-12
  Interval sum;
  {
    PrecisionGuard guard(target + kGuardBits + shift);
    const mpfr_prec_t bits = working_precision();
    const Interval r = scale2(Interval::point(x), -shift);
    sum = Interval(1);
    Interval term(1);
    for (long k = 1;; ++k) {
      term = term * r / Interval(k);
      // sum_{j>=k} |r|^j/j! <= |term_k| / (1 - |r|) <= 2 |term_k|
      if (below_ulp(term, bits + 4)) {
        sum += symmetric(scale2(term, 1));
        break;
      }
      sum += term;
    }
    for (long i = 0; i < shift; ++i) sum = sqr(sum);
  }
  return sum.rounded(target);
}

Interval log_point(mpfr_srcptr x) {
  const mpfr_prec_t target = working_precision();
  if (mpfr_sgn(x) <= 0) throw DomainError("log of a non-positive value");
  if (!mpfr_number_p(x)) throw DomainError("log of a non-finite value");
  if (mpfr_cmp_ui(x, 1) == 0) return Interval(0);
  Interval result;
  {
    PrecisionGuard guard(target + kGuardBits);
    long e = mpfr_get_exp(x);  // x = m 2^e with m in [1/2, 1)
    Interval m = scale2(Interval::point(x), -e);
    if (mpfr_cmp_d(m.hi(), 0.7071) < 0) {
      m = scale2(m, 1);
      --e;
    }
    const Interval z = (m - Interval(1)) / (m + Interval(1));
    result = scale2(atanh_series(z), 1);
    if (e != 0) result += Interval(e) * ln2();
  }
  return result.rounded(target);
}

}  // namespace

Interval pi() {
  thread_local std::unordered_map<mpfr_prec_t, Interval> cache;
  return cached(cache, [] {
    return Interval(16) * atan_inverse(5) - Interval(4) * atan_inverse(239);
  });
}

Interval ln2() {
  thread_local std::unordered_map<mpfr_prec_t, Interval> cache;
  return cached(cache, [] { return scale2(atanh_series(Interval::ratio(1, 3)), 1); });
}

Interval exp(const Interval& x) {
  if (x.is_point()) return exp_point(x.lo());
  const Interval lo = exp_point(x.lo());
  const Interval hi = exp_point(x.hi());
  return Interval::bounds(lo.lo(), hi.hi());
}

Interval log(const Interval& x) {
  if (mpfr_sgn(x.lo()) <= 0) throw DomainError("log of an interval with non-positive points");
  if (x.is_point()) return log_point(x.lo());
  const Interval lo = log_point(x.lo());
  const Interval hi = log_point(x.hi());
  return Interval::bounds(lo.lo(), hi.hi());
}

}  // namespace arakelov::rigor
