#pragma once

// The modular lambda function on the imaginary axis tau = iy.
//
// With q = exp(-pi y), lambda = theta2^4 / theta3^4 = 16 q A^4 / B^4 where
// A = sum_{n>=0} q^{n(n+1)} and B = theta3 = 1 + 2 sum_{n>=1} q^{n^2}.
// Both series are cut at N terms and the remainder is bounded by a
// geometric series on the ratio of consecutive terms.

#include "arakelov/rigor/certify.hpp"
#include "arakelov/rigor/interval.hpp"

#include <gmpxx.h>

namespace arakelov::modlambda {

using rigor::Interval;

/// The series cannot be truncated with a dominating tail at the requested N.
class TruncationError : public rigor::DomainError {
 public:
  using rigor::DomainError::DomainError;
};

struct ImaginaryTau {
  Interval y;
  Interval q;  // exp(-pi y)

  /// Requires y > 0.
  static ImaginaryTau from_y(const Interval& y);
};

struct ThetaSeriesConfig {
  int truncation = 0;  // 0 picks N from the working precision
  int max_truncation = 20000;
  double max_relative_tail = 1e-6;  // explicit N whose tail exceeds this is rejected
};

/// Enclosure of the remainders actually added to the four partial sums.
struct ThetaSums {
  int N = 0;
  Interval A, B, qdA, qdB;  // qdA = q A'(q), qdB = q B'(q)
  Interval tail_bound;      // largest of the four remainder bounds
};

ThetaSums theta_sums(const Interval& q, const ThetaSeriesConfig& cfg = {});

/// Arithmetic-geometric mean; requires a, b > 0.
Interval agm(const Interval& a, const Interval& b);

/// The y > 0 with lambda(iy) = alpha, for rational alpha in (0, 1):
/// y = M(1, sqrt(1 - alpha)) / M(1, sqrt(alpha)).
Interval lambda_inverse(const mpq_class& alpha);

Interval lambda_eval(const ImaginaryTau& t, const ThetaSeriesConfig& cfg = {});
/// q d(lambda)/dq at iy, i.e. -(1/pi) d/dy lambda(iy).
Interval q_dlambda_dq(const ImaginaryTau& t, const ThetaSeriesConfig& cfg = {});

struct ClambdaQuery {
  Interval y_lo = Interval::ratio(4, 5);
  Interval y_hi = Interval(1);
  Interval threshold = Interval::ratio(3, 20);
};

/// Certified iff |q dlambda/dq|(iy) >= threshold on [y_lo, y_hi].
rigor::CertResult certify_clambda(const rigor::PrecisionConfig& cfg, const ClambdaQuery& query = {});

}  // namespace arakelov::modlambda
