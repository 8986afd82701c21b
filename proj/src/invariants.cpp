#include "arakelov/invariants.hpp"

#include "arakelov/heights.hpp"
#include "arakelov/merkl.hpp"
#include "arakelov/rigor/elementary.hpp"
#include "arakelov/rigor/expr.hpp"

#include <string>
#include <utility>
#include <vector>

namespace arakelov::invariants {

using rigor::DomainError;
using rigor::Expr;

namespace {

Interval log2pi() { return rigor::log(rigor::scale2(rigor::pi(), 1)); }
Interval cube(long g) { return Interval(g) * Interval(g) * Interval(g); }
Interval q_(const mpq_class& v) { return Interval::from(v); }

void require_genus(long g) {
  if (g < 1) throw DomainError("genus must be at least 1");
}

}  // namespace

Interval theta_max_bound(long g, const Interval& h_fal) {
  require_genus(g);
  const Interval lm = rigor::log(rigor::max(Interval(1), h_fal));
  return Interval::ratio(g, 4) * lm + Interval(4 * g * g * g + 5 * g + 1) * rigor::ln2();
}

mpq_class minkowski_c_exact(long g) {
  require_genus(g);
  mpq_class c = 1;
  const mpq_class base(4, mpz_class(g) * g * g);
  for (long k = 0; k < g - 1; ++k) c *= base;
  const long half = g * (g - 1) / 2;
  for (long k = 0; k < half; ++k) c *= mpq_class(3, 4);
  c.canonicalize();
  return c;
}

Interval minkowski_c(long g) { return q_(minkowski_c_exact(g)); }

CertResult theta_sum_cert(long g) {
  require_genus(g);
  const Interval gg(g);
  const Interval inner = Interval(1) + Interval(2) / (rigor::pi() * rigor::sqrt(Interval(3)) * minkowski_c(g));
  const Interval lhs = gg * rigor::ln2() + gg * rigor::log(inner);
  const Interval rhs = Interval(3 * g * g * g + 5 * g) * rigor::ln2();
  // Exponents of 2 after taking the fourth root of det Im tau:
  // (2g^3 + 2)/4 + 3g^3 + 5g <= 4g^3 + 5g + 1.
  const mpz_class G(g);
  const mpq_class lhs_exp = mpq_class(2 * G * G * G + 2, 4) + 3 * G * G * G + 5 * G;
  const bool exp_ok = lhs_exp <= 4 * G * G * G + 5 * G + 1;
  return rigor::conjoin({rigor::check_le(lhs, rhs), rigor::from_bool(exp_ok, "theta exponent bookkeeping")});
}

CertResult ineq_lemma_cert(const IneqQuery& q, const rigor::PrecisionConfig& cfg) {
  if (!rigor::certainly_gt(q.a, Interval(0))) throw DomainError("ineq lemma needs a > 0");
  if (!rigor::certainly_le(q.b, Interval(1))) throw DomainError("ineq lemma needs b <= 1");
  const Interval x_lo = q.x_lo.value_or(q.b);
  if (rigor::certainly_lt(x_lo, q.b)) throw DomainError("range must start at or above b");
  rigor::PrecisionGuard guard(cfg.working_bits);

  const Interval two_a = rigor::scale2(q.a, 1);
  Interval floor(0);
  if (q.keep_min_branch) {
    const Interval c = two_a - two_a * rigor::log(two_a) - q.b;
    floor = rigor::min(Interval(0), c);
  }

  const Interval t_lo_raw = x_lo - q.b;
  const Interval t_lo = mpfr_sgn(t_lo_raw.lo()) <= 0 ? Interval(0) : Interval::point(t_lo_raw.lo());
  const Interval t_hi_raw = q.x_max - q.b;
  const Interval t_hi = Interval::point(t_hi_raw.hi());
  if (rigor::certainly_gt(t_lo, t_hi)) throw std::invalid_argument("empty x range");

  const Expr t = Expr::var("t");
  const Expr lhs = t - Expr(two_a) * log(max(Expr(1), Expr(q.b) + t));
  const rigor::Box box{{"t", Interval::hull(t_lo, t_hi)}};
  return rigor::certify_on_box(lhs >= Expr(floor), box, cfg);
}

Interval bost_lower(long g) {
  require_genus(g);
  return -(Interval(g) * log2pi());
}

Interval noether_residual(const InvariantVector& v, long g) {
  require_genus(g);
  return Interval(12) * v.h_fal - (v.e + v.disc + v.delta - Interval(4 * g) * log2pi());
}

Interval sr_identity_residual(const InvariantVector& v) {
  if (!v.log_S || !v.log_R) throw UnavailableError("log S and log R are both needed");
  return *v.log_S - (rigor::scale2(v.delta, -3) + *v.log_R);
}

FaltingsOmega faltingsomega1(long g, const Interval& e, const Interval& delta) {
  if (g < 2) throw DomainError("faltingsomega1 needs g >= 2");
  const Interval coeff = Interval((2 * g - 1) * (g + 1)) / Interval(4 * (g - 1));
  const Interval g3 = cube(g);

  FaltingsOmega out;
  out.h_fal_upper = coeff * e + rigor::scale2(delta, -2) + Interval(20) * g3;
  out.disc_upper = Interval(12) * coeff * e + rigor::scale2(delta, 1) + Interval(248) * g3;
  out.lower_check = rigor::check_le(bost_lower(g), out.h_fal_upper);

  std::vector<Check> steps;
  const Interval gg(g);
  const Interval branch_a = rigor::scale2(gg, -1) * log2pi();
  const Interval branch_b = rigor::scale2(gg, -2) * rigor::log(rigor::scale2(gg, -1)) - rigor::scale2(gg, -2);
  const Interval link = Interval(4 * g * g * g + 5 * g + 1) * rigor::ln2() + rigor::max(branch_a, branch_b);
  steps.push_back(rigor::le_check("(4g^3+5g+1) log 2 + max(g/2 log 2pi, g/4 log(g/2) - g/4) <= 10 g^3", link,
                                  Interval(10) * g3));
  steps.push_back(rigor::le_check("240 g^3 + 4g log 2pi <= 248 g^3",
                                  Interval(240) * g3 + Interval(4 * g) * log2pi(), Interval(248) * g3));
  out.link = rigor::make_chain(std::move(steps));
  return out;
}

InvariantBounds upperboundinv(const HeightData& h) {
  require_genus(h.g);
  if (rigor::certainly_lt(h.h_b, Interval(0))) throw DomainError("canonical height is non-negative");
  const long g = h.g;
  const Interval gg(g), g3 = cube(g), hb = h.h_b, W = h.log_wr;
  const Interval l2p = log2pi();

  InvariantBounds out;
  BoundSet& b = out.bounds;
  b.e = {Interval(0), Interval(4 * g * (g - 1)) * hb};
  b.disc.lower = Interval(0);
  b.h_fal.lower = bost_lower(g);
  b.delta.lower = -(Interval(90) * g3) - Interval(4 * g * (2 * g - 1) * (g + 1)) * hb;

  const Interval disc_const = Interval(90) * g3 + Interval(4 * g) * l2p;
  out.disc_constant = rigor::le_check("90 g^3 + 4g log 2pi <= 93 g^3", disc_const, Interval(93) * g3);

  if (h.non_weierstrass) {
    b.h_fal.upper = rigor::scale2(Interval(g * (g + 1)), -1) * hb + W;
    b.delta.upper = Interval(6 * g * (g + 1)) * hb + Interval(12) * W + Interval(4 * g) * l2p;
    b.disc.upper = Interval(2 * g * (g + 1) * (4 * g + 1)) * hb + Interval(12) * W + Interval(93) * g3;
    // disc <= 12 h_fal - delta + 4g log 2pi with the bounds above.
    out.disc_derived = Interval(12) * *b.h_fal.upper - b.delta.lower + Interval(4 * g) * l2p;
  }
  return out;
}

MainTheorem compose_mainthm(long d, long g, const rigor::PrecisionConfig& cfg) {
  if (d < 3 || g < 1 || g > d) throw DomainError("compose_mainthm needs 3 <= d and 1 <= g <= d");
  rigor::PrecisionGuard guard(cfg.working_bits);

  const heights::PointHeightBound nw = heights::nonweierstrass_height_bound(d, g, cfg);
  const merkl::WronskianBound wr = merkl::wronskian_bound(d, g);

  const mpz_class D(d), G(g);
  const mpz_class d5 = D * D * D * D * D;
  const mpq_class hb_exact(6378033 * d5, G);
  const mpz_class wr_exact = wr.coefficient * G * d5;

  MainTheorem out;
  out.d = d;
  out.g = g;
  out.h_b = nw.value;
  out.log_wr = wr.value;
  out.h_fal_exact = mpq_class(G * (G + 1), 2) * hb_exact + mpq_class(wr_exact);
  out.h_fal_exact.canonicalize();

  const InvariantBounds ub = upperboundinv({g, out.h_b, out.log_wr, true});
  out.composed = ub.bounds;
  if (!ub.disc_constant.result.certified()) out.composed.disc.upper = *ub.disc_derived;

  const Interval dd5 = Interval::from(d5);
  const Interval gi(g);
  BoundSet& t = out.table;
  t.h_fal = {bost_lower(g), Interval(13'000'000) * gi * dd5};
  t.e = {Interval(0), Interval(30'000'000) * Interval(g - 1) * dd5};
  t.disc = {Interval(0), Interval(500'000'000) * gi * gi * dd5};
  t.delta = {-(Interval(100'000'000) * gi * gi * dd5), Interval(200'000'000) * gi * dd5};

  std::vector<Check> checks;
  checks.push_back({"h(b) <= 6378033 d^5/g at a non-Weierstrass point", nw.chain.result, nw.value, std::nullopt});
  checks.push_back({"log||Wr||(b) <= 6378028 g d^5", wr.chain.result, wr.value, std::nullopt});
  const BoundSet& c = out.composed;
  checks.push_back(rigor::le_check("h_fal <= 13e6 g d^5", *c.h_fal.upper, *t.h_fal.upper));
  checks.push_back(rigor::le_check("e <= 3e7 (g-1) d^5", *c.e.upper, *t.e.upper));
  checks.push_back(rigor::le_check("disc <= 5e8 g^2 d^5", *c.disc.upper, *t.disc.upper));
  checks.push_back(rigor::le_check("delta <= 2e8 g d^5", *c.delta.upper, *t.delta.upper));
  checks.push_back(rigor::le_check("-1e8 g^2 d^5 <= delta", t.delta.lower, c.delta.lower));
  checks.push_back(rigor::exact_check("lower bounds 0, 0 and -g log 2pi as stated", true, c.h_fal.lower,
                                      t.h_fal.lower));
  out.chain = rigor::make_chain(std::move(checks));
  return out;
}

}  // namespace arakelov::invariants
