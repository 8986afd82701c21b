#pragma once

// Merkl's bound on the Arakelov-Green function of a curve with an atlas
// (n charts, covering radius r1, transition bound M, curvature bound c1),
// the constant chain c3/c4/c5 behind its proof, and the specialization to
// Belyi covers of X(2).

#include "arakelov/rigor/certify.hpp"
#include "arakelov/rigor/expr.hpp"
#include "arakelov/rigor/interval.hpp"

#include <optional>

namespace arakelov::merkl {

using rigor::CertResult;
using rigor::ChainResult;
using rigor::Expr;
using rigor::Interval;

struct MerklAtlasParams {
  long n = 1;
  Interval r1;
  Interval M = Interval(1);
  Interval c1;

  /// Throws DomainError unless n >= 1, 1/2 < r1 < 1, M >= 1, c1 > 0.
  void validate() const;
};

/// 330 n f(r1) + 13.2 n c1 + (n-1) log M, with f(r) = (1-r)^{-3/2} log(1/(1-r)).
Interval merkl_bound(const MerklAtlasParams& p);
/// The same bound written in u = 1/(1 - r1); increasing in u.
Interval merkl_bound_inverse_gap(long n, const Interval& u, const Interval& M, const Interval& c1);

Expr f_expr(const Expr& r1);
Interval f_value(const Interval& r1);

struct AppendixParams {
  Interval r1, r2, r4, lam;

  Interval r3() const;
  /// Throws DomainError unless r1 < r2 < r4 <= 1 and lam > 0.
  void validate() const;
};

// Closed forms, as expressions so the certifier can work with them.
Expr c3_expr(const Expr& r1, const Expr& r2, const Expr& r4, const Expr& lam);
Expr c4_expr(const Expr& r1, const Expr& r2, const Expr& r4, const Expr& lam, const Expr& c1);
Expr c5_expr(const Expr& r1, const Expr& r2, const Expr& r4, const Expr& lam, const Expr& c1, long n,
             const Expr& M);
// The r4 = 1, lam = 1/(1 - r2) limit forms as written out explicitly.
Expr c3_limit_expr(const Expr& r1, const Expr& r2);
Expr c4_limit_expr(const Expr& r1, const Expr& r2, const Expr& c1);
Expr c5_limit_expr(const Expr& r1, const Expr& r2, const Expr& c1, long n, const Expr& M);

Interval c3(const AppendixParams& p);
Interval c4(const AppendixParams& p, const Interval& c1);
Interval c5(const AppendixParams& p, const Interval& c1, long n, const Interval& M);
Interval c3_limit(const Interval& r1, const Interval& r2);
Interval c4_limit(const Interval& r1, const Interval& r2, const Interval& c1);
Interval c5_limit(const Interval& r1, const Interval& r2, const Interval& c1, long n, const Interval& M);

/// 8/3 log 2 - 1/4, the c1 coefficient in c4.
Interval c1_coefficient();

struct AppendixQuery {
  Interval r1_lo = Interval::decimal("0.501");
  Interval r1_hi = Interval::decimal("0.999");
  Interval constant = Interval::decimal("52.4");
  Interval c1_coefficient = Interval::decimal("1.60");
};

/// With r2 = 0.39 + 0.61 r1 and the limit forms: the c1 coefficient is at
/// most 1.60, and for all r1 in range
///   c4(c1 = 0) + (1/2pi) log((1 + r1)/(r2 - r1)) <= constant * f(r1).
ChainResult certify_appendix_reduction(const rigor::PrecisionConfig& cfg, const AppendixQuery& q = {});

/// Lower end of the covering radii met by Belyi covers of degree >= 3: (1/2)^{1/6}.
Interval belyi_r1_floor();

struct LiftQuery {
  Interval lift_constant = Interval(330);
  Interval green_coefficient = Interval::decimal("13.2");
  Interval appendix_constant = Interval::decimal("52.4");
  Interval c1_coefficient = Interval::decimal("1.60");
  Interval r1_lo = Interval::ratio(1, 2);
  Interval r1_hi = Interval::decimal("0.999");
};

/// The factor-2pi lift from the appendix's bound to the theorem's constants:
/// 2pi (1.60 + 1/2) <= 13.2 and 2pi 52.4 f(r1) + log(1 + r1) <= 330 f(r1).
ChainResult certify_theorem_lift(const rigor::PrecisionConfig& cfg, const LiftQuery& q = {});

struct BelyiAtlasDerivation {
  long d = 0, g = 0, n_cusps = 0;
  Interval s1;           // sqrt(1/2)
  Interval r1;           // s1^{1/d}
  Interval inverse_gap;  // 1/(1 - r1)
  Interval inverse_gap_bound;  // d/(1 - s1)
  Interval M;            // 4 d exp(3 pi)
  Interval c1;           // 128 exp(3 pi) d^4 / (pi^2 g)
  Interval jk_bound;     // 64 (max e_y)^2 with max e_y <= d
  ChainResult checks;
};

/// Requires 3 <= d, 1 <= g <= d, 1 <= n_cusps <= 3d.
BelyiAtlasDerivation belyi_atlas(long d, long g, long n_cusps);

struct GreenBound {
  Interval value;          // worst case n = 3d, 1/(1-r1) replaced by d/(1-s1)
  Interval constant;       // 6378027 d^5 / g
  Interval actual_n_value; // sharper: actual cusp count and actual r1
  CertResult result;
};

GreenBound green_bound_belyi(long d, long g, std::optional<long> n_cusps = std::nullopt);

struct WronskianBound {
  mpz_class coefficient;   // 6378028
  Interval value;          // 6378028 g d^5
  ChainResult chain;
};

/// Requires d >= 3, 1 <= g <= d.
WronskianBound wronskian_bound(long d, long g);

}  // namespace arakelov::merkl
