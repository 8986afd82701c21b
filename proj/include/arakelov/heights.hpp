#pragma once

// Heights of rationals, branch-set statistics and Khadjavi's constant,
// local different bounds, and the height bounds for points on Belyi
// curves that feed the main composition.

#include "arakelov/rigor/certify.hpp"
#include "arakelov/rigor/interval.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arakelov::heights {

using rigor::CertResult;
using rigor::ChainResult;
using rigor::Interval;

/// p/q in lowest terms with q >= 1.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(long p, long q = 1);
  explicit Rational(const mpq_class& v);
  /// "p/q" or "p" with optional sign; throws std::invalid_argument.
  static Rational parse(std::string_view text);

  mpz_class p() const { return value_.get_num(); }
  mpz_class q() const { return value_.get_den(); }
  const mpq_class& value() const { return value_; }
  Rational inverse() const;
  std::string str() const { return value_.get_str(); }
  bool operator==(const Rational& o) const { return value_ == o.value_; }

 private:
  mpq_class value_;
};

/// max(|p|, q); 0 has height 1 by the convention max(|0|, 1).
mpz_class exp_height(const Rational& a);
/// log max(|p|, q).
Interval naive_height(const Rational& a);

struct BranchPoint {
  bool infinity = false;
  Rational value;

  static BranchPoint inf() { return {true, Rational()}; }
  std::string str() const { return infinity ? "inf" : value.str(); }
};

/// Comma separated rationals, "inf" for the point at infinity.
std::vector<BranchPoint> parse_branch_list(std::string_view text);

struct BranchSet {
  std::vector<BranchPoint> points;  // distinct, in input order
  long N = 0;
  Interval H_B = Interval(1);
  std::optional<mpz_class> H_B_exact;  // present for all-rational sets
};

/// A set of rationals (and inf) is its own Galois orbit: N = #points and
/// H_B = max exp_height, with H(inf) = 1.
BranchSet branch_stats(const std::vector<BranchPoint>& points);
/// Caller-supplied (N, H_B) for sets the tool does not enumerate.
BranchSet branch_override(long N, const Interval& H_B);

/// 45 N^3 2^{N-2} N!, exact (a half-integer for N = 1).
mpq_class khadjavi_exponent(long N);
/// 9 N^3 2^{N-2} N!, the degree exponent; exact rational for the same reason.
mpq_class khadjavi_degree_exponent(long N);
/// log c_B = 45 N^3 2^{N-2} N! log(4 N H_B).
Interval log_khadjavi(long N, const Interval& H_B);

struct LocalRamification {
  long e = 1;
  long ord_n = 0;
};

/// e - 1 + e ord_n.
long lenstra_bound(const LocalRamification& l);
/// Largest m with p^m <= d, i.e. floor(log d / log p).
long floor_log(long d, long p);
/// e - 1 + e m ord_p with m = floor(log d / log p); requires p prime, d >= 1.
long lenstra_bound_p(long e_beta, long p, long d, long ord_p);

struct WildBound {
  long value = 0;
  CertResult absorption;  // e - 1 + e m e_p <= 2 e m e_p
};

/// 2 e m e_p; requires m >= 1 (the tame case goes through lenstra_bound).
WildBound wild_bound(long e_ij, long m_i, long e_p);

struct IntersectionData {
  long deg_pi = 1;
  Interval d1_q;  // (D1, Q)_fin per unit field degree
  long field_degree = 1;
};

struct FiniteIntersection {
  Interval raw;               // deg_pi d1_q [K:Q] + 2 deg_pi^2 log(deg_pi) [K:Q]
  Interval per_field_degree;  // raw / [K:Q]
};

FiniteIntersection finite_intersection_bound(const IntersectionData& x);
/// Sum over primes p <= d of floor(log d / log p) log p, a sharper
/// diagnostic for the d log d term (reported, not certified against).
Interval prime_sum_diagnostic(long d);

struct PointHeightBound {
  Interval value;
  ChainResult chain;
};

/// -log ||d pi|| <= -log ||dw_y|| + 2 <= 6378027 d^5/g + 2 (d >= 3, g >= 1).
ChainResult archimedean_chain(long d, long g, const rigor::PrecisionConfig& cfg = {});

/// 3 h(a) d^2 + 6378031 d^5/g for 0 < a <= 2/3 (else DomainError).
PointHeightBound height_point_bound(long d, long g, const Rational& a, const rigor::PrecisionConfig& cfg = {});

/// 6378033 d^5/g for a non-Weierstrass point over one of a_1..a_{d^2}.
PointHeightBound nonweierstrass_height_bound(long d, long g, const rigor::PrecisionConfig& cfg = {});

/// a_1 = 1/2, a_n = n/(2n - 1).
Rational weierstrass_avoiding_point(long n);

}  // namespace arakelov::heights
