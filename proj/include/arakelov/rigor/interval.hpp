#pragma once

// Outward-rounded interval arithmetic over MPFR endpoints.
//
// Every operation rounds the lower endpoint toward -inf and the upper
// endpoint toward +inf, so the result always encloses the exact real
// result of the operation applied to any points of the operands.
// New intervals are created at the calling thread's working precision.

#include <mpfr.h>
#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace arakelov::rigor {

/// Raised when an operation leaves its mathematical domain
/// (division by an interval containing zero, log of a non-positive
/// interval, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

mpfr_prec_t working_precision() noexcept;
void set_working_precision(mpfr_prec_t bits);

/// Sets the thread's working precision for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(mpfr_prec_t bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Interval {
 public:
  Interval();
  Interval(long value);  // NOLINT(google-explicit-constructor): exact small integers
  Interval(int value) : Interval(static_cast<long>(value)) {}

  static Interval exact(double value);
  static Interval ratio(long num, long den);
  static Interval from(const mpz_class& value);
  static Interval from(const mpq_class& value);
  /// Enclosure of a decimal literal such as "52.4" or "-1e-3".
  static Interval decimal(std::string_view text);
  /// Point interval holding an MPFR value (rounded outward if the
  /// working precision is smaller than the value's).
  static Interval point(mpfr_srcptr value);
  static Interval bounds(mpfr_srcptr lo, mpfr_srcptr hi);
  static Interval hull(const Interval& a, const Interval& b);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  mpfr_srcptr lo() const noexcept { return lo_; }
  mpfr_srcptr hi() const noexcept { return hi_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(lo_); }

  /// Endpoints rounded outward to double.
  double lower() const;
  double upper() const;
  /// Upper bound on hi - lo.
  double width() const;
  /// Upper bound on (hi - lo) / min|x|; +inf when the interval touches 0.
  double relative_width() const;

  Interval midpoint() const;
  std::pair<Interval, Interval> bisect() const;
  /// The same enclosure re-rounded outward to `bits`.
  Interval rounded(mpfr_prec_t bits) const;

  bool is_point() const;
  bool contains_zero() const;
  bool contains(const Interval& x) const;
  bool contains(long value) const;
  bool contains(const mpq_class& value) const;
  bool subset_of(const Interval& outer) const { return outer.contains(*this); }
  bool overlaps(const Interval& other) const;
  /// Bit-identical endpoints.
  bool identical(const Interval& other) const;

  Interval& operator+=(const Interval& b);
  Interval& operator-=(const Interval& b);
  Interval& operator*=(const Interval& b);
  Interval& operator/=(const Interval& b);

  friend Interval operator-(const Interval& a);
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);

 private:
  struct Uninit {};
  explicit Interval(Uninit, mpfr_prec_t bits);
  void fix_order();

  mpfr_t lo_;
  mpfr_t hi_;

  friend Interval sqr(const Interval& a);
  friend Interval pow(const Interval& a, long n);
  friend Interval sqrt(const Interval& a);
  friend Interval abs(const Interval& a);
  friend Interval min(const Interval& a, const Interval& b);
  friend Interval max(const Interval& a, const Interval& b);
  friend Interval scale2(const Interval& a, long k);
};

Interval sqr(const Interval& a);
Interval pow(const Interval& a, long n);
Interval sqrt(const Interval& a);
Interval abs(const Interval& a);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);
/// a * 2^k, exact up to the working precision.
Interval scale2(const Interval& a, long k);

// Decided comparisons: true only when the relation holds for every pair
// of points drawn from the operands.
bool certainly_lt(const Interval& a, const Interval& b);
bool certainly_le(const Interval& a, const Interval& b);
inline bool certainly_gt(const Interval& a, const Interval& b) { return certainly_lt(b, a); }
inline bool certainly_ge(const Interval& a, const Interval& b) { return certainly_le(b, a); }

/// Decimal rendering of one endpoint, rounded in the given direction.
/// Scientific form with trailing zeros trimmed, e.g. "1.5498605610e9".
std::string decimal_string(mpfr_srcptr value, int digits, mpfr_rnd_t direction);
/// "[lo, hi]" with lo rounded down and hi rounded up.
std::string to_string(const Interval& x, int digits = 30);
/// Midpoint to a few significant digits, for labels ("52.4", "0.890899").
std::string short_string(const Interval& x, int digits = 6);

}  // namespace arakelov::rigor
