#pragma once

// Inequalities between the Arakelov invariants of a curve (Faltings height,
// e, discriminant, delta) and their composition with the height and
// Wronskian bounds for Belyi covers.

#include "arakelov/rigor/certify.hpp"
#include "arakelov/rigor/interval.hpp"

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace arakelov::invariants {

using rigor::CertResult;
using rigor::Check;
using rigor::ChainResult;
using rigor::Interval;

/// An optional field of an InvariantVector was needed but not supplied.
class UnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvariantVector {
  Interval h_fal, e, delta, disc;
  std::optional<Interval> log_S, log_R, log_theta_max;
};

struct HeightData {
  long g = 1;
  Interval h_b;     // canonical height of b, >= 0
  Interval log_wr;  // log ||Wr||_Ar(b)
  bool non_weierstrass = true;
};

struct Range {
  Interval lower;
  std::optional<Interval> upper;  // absent when b may be a Weierstrass point
};

struct BoundSet {
  Range h_fal, e, disc, delta;
};

/// (g/4) log max(1, h_fal) + (4g^3 + 5g + 1) log 2.
Interval theta_max_bound(long g, const Interval& h_fal);

/// (4/g^3)^{g-1} (3/4)^{g(g-1)/2}, exact.
mpq_class minkowski_c_exact(long g);
Interval minkowski_c(long g);
/// 2^g (1 + 2/(pi sqrt(3) c(g)))^g <= 2^{3g^3 + 5g}, compared in log space.
CertResult theta_sum_cert(long g);

struct IneqQuery {
  Interval a;
  Interval b;
  std::optional<Interval> x_lo;  // defaults to b
  Interval x_max = Interval(1000);
  bool keep_min_branch = true;  // false drops a - a log(2a) from the min
};

/// x - a log max(1, x) >= x/2 + min(b/2, a - a log 2a) for x in [x_lo, x_max].
/// Checked as t - 2a log max(1, b + t) >= min(0, 2a - 2a log 2a - b) with
/// x = b + t, which keeps the equality at x = b exact.
CertResult ineq_lemma_cert(const IneqQuery& q, const rigor::PrecisionConfig& cfg = {});

/// -g log(2 pi).
Interval bost_lower(long g);

/// 12 h_fal - (e + disc + delta - 4g log 2pi).
Interval noether_residual(const InvariantVector& v, long g);
/// log S - (delta/8 + log R); throws UnavailableError when a field is missing.
Interval sr_identity_residual(const InvariantVector& v);

struct FaltingsOmega {
  Interval h_fal_upper;  // (2g-1)(g+1)/(4(g-1)) e + delta/4 + 20 g^3
  Interval disc_upper;   // 3(2g-1)(g+1)/(g-1) e + 2 delta + 248 g^3
  CertResult lower_check;  // -g log 2pi <= h_fal_upper
  ChainResult link;        // the scalar steps behind 20 g^3 and 248 g^3
};

/// Requires g >= 2.
FaltingsOmega faltingsomega1(long g, const Interval& e, const Interval& delta);

struct InvariantBounds {
  BoundSet bounds;
  /// 90 g^3 + 4g log 2pi <= 93 g^3: the discriminant constant follows from
  /// the delta lower bound and the Noether formula only when this holds.
  Check disc_constant;
  /// Upper bound for disc from 12 h_fal - delta + 4g log 2pi directly.
  std::optional<Interval> disc_derived;
};

InvariantBounds upperboundinv(const HeightData& h);

struct MainTheorem {
  long d = 0, g = 0;
  Interval h_b, log_wr;
  mpq_class h_fal_exact;   // composed h_fal upper bound, an exact rational
  BoundSet composed;
  BoundSet table;
  ChainResult chain;
};

/// Requires 3 <= d, 1 <= g <= d.
MainTheorem compose_mainthm(long d, long g, const rigor::PrecisionConfig& cfg = {});

}  // namespace arakelov::invariants
