#include "arakelov/merkl.hpp"

#include "arakelov/rigor/elementary.hpp"

#include <stdexcept>
#include <string>

namespace arakelov::merkl {

using rigor::Box;
using rigor::Check;
using rigor::DomainError;

namespace {

Interval eval_const(const Expr& e) { return e.eval(Box{}); }

Expr pi_e() { return Expr(rigor::pi()); }

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

Interval pow_mpz(long base, unsigned long exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return Interval::from(r);
}

mpz_class d5(long d) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(d), 5);
  return r;
}

}  // namespace

void MerklAtlasParams::validate() const {
  require(n >= 1, "Merkl atlas needs n >= 1");
  require(rigor::certainly_lt(Interval::ratio(1, 2), r1) && rigor::certainly_lt(r1, Interval(1)),
          "Merkl atlas needs 1/2 < r1 < 1");
  require(rigor::certainly_ge(M, Interval(1)), "Merkl atlas needs M >= 1");
  require(rigor::certainly_gt(c1, Interval(0)), "Merkl atlas needs c1 > 0");
}

Interval merkl_bound_inverse_gap(long n, const Interval& u, const Interval& M, const Interval& c1) {
  const Interval nn(n);
  const Interval first = Interval(330) * nn * u * rigor::sqrt(u) * rigor::log(u);
  const Interval second = Interval::decimal("13.2") * nn * c1;
  const Interval third = Interval(n - 1) * rigor::log(M);
  return first + second + third;
}

Interval merkl_bound(const MerklAtlasParams& p) {
  p.validate();
  return merkl_bound_inverse_gap(p.n, Interval(1) / (Interval(1) - p.r1), p.M, p.c1);
}

Expr f_expr(const Expr& r1) {
  const Expr gap = Expr(1) - r1;
  return -log(gap) / (gap * sqrt(gap));
}

Interval f_value(const Interval& r1) { return eval_const(f_expr(Expr(r1))); }

Interval AppendixParams::r3() const { return rigor::scale2(r2 + r4, -1); }

void AppendixParams::validate() const {
  require(rigor::certainly_gt(r1, Interval(0)), "appendix parameters need r1 > 0");
  require(rigor::certainly_lt(r1, r2) && rigor::certainly_lt(r2, r4), "appendix parameters need r1 < r2 < r4");
  require(rigor::certainly_le(r4, Interval(1)), "appendix parameters need r4 <= 1");
  require(rigor::certainly_gt(lam, Interval(0)), "appendix parameters need lambda > 0");
}

Expr c3_expr(const Expr& r1, const Expr& r2, const Expr& r4, const Expr& lam) {
  const Expr L = log(pow(r1 + r4, 2) / ((r2 - r1) * (r4 - r1)));
  const Expr bracket = lam / Expr(2) * L + Expr(1) / (r2 - r1) + r1 / (r4 * (r4 - r1));
  return Expr(4) * sqrt((r4 + r2) / (r4 - r2)) * bracket + Expr(2) / pi_e() * L;
}

Interval c1_coefficient() {
  return Interval::ratio(8, 3) * rigor::ln2() - Interval::ratio(1, 4);
}

Expr c4_expr(const Expr& r1, const Expr& r2, const Expr& r4, const Expr& lam, const Expr& c1) {
  return c3_expr(r1, r2, r4, lam) + log((r4 + r1) / (r4 - r1)) / (Expr(2) * pi_e()) +
         Expr(c1_coefficient()) * c1 / pow(r4, 2);
}

Expr c5_expr(const Expr& r1, const Expr& r2, const Expr& r4, const Expr& lam, const Expr& c1, long n,
             const Expr& M) {
  return Expr(n) * c4_expr(r1, r2, r4, lam, c1) +
         Expr(n - 1) / (Expr(2) * pi_e()) * log(M * (r4 + r1) / (r2 - r1));
}

Expr c3_limit_expr(const Expr& r1, const Expr& r2) {
  const Expr L = log(pow(r1 + Expr(1), 2) / ((r2 - r1) * (Expr(1) - r1)));
  const Expr bracket = L / (Expr(2) * (Expr(1) - r2)) + Expr(1) / (r2 - r1) + r1 / (Expr(1) - r1);
  return Expr(4) * sqrt((Expr(1) + r2) / (Expr(1) - r2)) * bracket + Expr(2) / pi_e() * L;
}

Expr c4_limit_expr(const Expr& r1, const Expr& r2, const Expr& c1) {
  return c3_limit_expr(r1, r2) + log((Expr(1) + r1) / (Expr(1) - r1)) / (Expr(2) * pi_e()) +
         Expr(c1_coefficient()) * c1;
}

Expr c5_limit_expr(const Expr& r1, const Expr& r2, const Expr& c1, long n, const Expr& M) {
  return Expr(n) * c4_limit_expr(r1, r2, c1) +
         Expr(n - 1) / (Expr(2) * pi_e()) * log(M * (Expr(1) + r1) / (r2 - r1));
}

Interval c3(const AppendixParams& p) {
  p.validate();
  return eval_const(c3_expr(p.r1, p.r2, p.r4, p.lam));
}

Interval c4(const AppendixParams& p, const Interval& c1) {
  p.validate();
  return eval_const(c4_expr(p.r1, p.r2, p.r4, p.lam, c1));
}

Interval c5(const AppendixParams& p, const Interval& c1, long n, const Interval& M) {
  p.validate();
  require(n >= 1, "c5 needs n >= 1");
  return eval_const(c5_expr(p.r1, p.r2, p.r4, p.lam, c1, n, M));
}

Interval c3_limit(const Interval& r1, const Interval& r2) { return eval_const(c3_limit_expr(r1, r2)); }

Interval c4_limit(const Interval& r1, const Interval& r2, const Interval& c1) {
  return eval_const(c4_limit_expr(r1, r2, c1));
}

Interval c5_limit(const Interval& r1, const Interval& r2, const Interval& c1, long n, const Interval& M) {
  require(n >= 1, "c5 needs n >= 1");
  return eval_const(c5_limit_expr(r1, r2, c1, n, M));
}

ChainResult certify_appendix_reduction(const rigor::PrecisionConfig& cfg, const AppendixQuery& q) {
  rigor::PrecisionGuard guard(cfg.working_bits);
  std::vector<Check> checks;
  checks.push_back(rigor::le_check("c1 coefficient 8/3 log 2 - 1/4 <= 1.60", c1_coefficient(), q.c1_coefficient));

  const Expr r1 = Expr::var("r1");
  const Expr r2 = Expr(Interval::decimal("0.39")) + Expr(Interval::decimal("0.61")) * r1;
  const Expr lhs = c4_limit_expr(r1, r2, Expr(0)) + log((Expr(1) + r1) / (r2 - r1)) / (Expr(2) * pi_e());
  const Expr rhs = Expr(q.constant) * f_expr(r1);
  const Box box{{"r1", Interval::hull(q.r1_lo, q.r1_hi)}};
  Check gap{"c4 + log((1+r1)/(r2-r1))/(2pi) <= " + rigor::short_string(q.constant) + " f(r1) on [" +
                rigor::short_string(q.r1_lo) + ", " + rigor::short_string(q.r1_hi) + "]",
            rigor::certify_on_box(lhs <= rhs, box, cfg), std::nullopt, std::nullopt};
  if (gap.result.witness && !gap.result.witness->empty()) {
    // Report both sides at the witness for the record.
    const Box& w = *gap.result.witness;
    gap.value = lhs.eval(w);
    gap.bound = rhs.eval(w);
  }
  checks.push_back(std::move(gap));
  return rigor::make_chain(std::move(checks));
}

Interval belyi_r1_floor() { return rigor::exp(rigor::log(Interval::ratio(1, 2)) / Interval(6)); }

ChainResult certify_theorem_lift(const rigor::PrecisionConfig& cfg, const LiftQuery& q) {
  rigor::PrecisionGuard guard(cfg.working_bits);
  const Interval two_pi = rigor::scale2(rigor::pi(), 1);
  std::vector<Check> checks;
  checks.push_back(rigor::le_check("2pi (1.60 + 1/2) <= 13.2", two_pi * (q.c1_coefficient + Interval::ratio(1, 2)),
                                   q.green_coefficient));

  const Expr r1 = Expr::var("r1");
  const Expr f = f_expr(r1);
  // 2pi 52.4 f + log(1 + r1) <= 330 f, with f collected on one side
  const Expr lhs = log(Expr(1) + r1);
  const Expr rhs = Expr(q.lift_constant - two_pi * q.appendix_constant) * f;
  const Box box{{"r1", Interval::hull(q.r1_lo, q.r1_hi)}};
  Check lift{"2pi " + rigor::short_string(q.appendix_constant) + " f(r1) + log(1+r1) <= " +
                 rigor::short_string(q.lift_constant) + " f(r1)",
             rigor::certify_on_box(lhs <= rhs, box, cfg), std::nullopt, std::nullopt};
  if (lift.result.witness && !lift.result.witness->empty()) {
    lift.value = lhs.eval(*lift.result.witness);
    lift.bound = rhs.eval(*lift.result.witness);
  }
  checks.push_back(std::move(lift));
  return rigor::make_chain(std::move(checks));
}

BelyiAtlasDerivation belyi_atlas(long d, long g, long n_cusps) {
  if (d < 3) throw DomainError("Belyi atlas needs d >= 3");
  if (g < 1 || g > d) throw DomainError("Belyi atlas needs 1 <= g <= d");
  if (n_cusps < 1 || n_cusps > 3 * d) throw DomainError("Belyi atlas needs 1 <= n_cusps <= 3d");

  BelyiAtlasDerivation out;
  out.d = d;
  out.g = g;
  out.n_cusps = n_cusps;
  const Interval dd(d);
  const Interval e3pi = rigor::exp(Interval(3) * rigor::pi());
  const Interval e3pi_half = rigor::exp(Interval::ratio(3, 2) * rigor::pi());
  out.s1 = rigor::sqrt(Interval::ratio(1, 2));
  out.r1 = rigor::exp(rigor::log(out.s1) / dd);
  out.inverse_gap = Interval(1) / (Interval(1) - out.r1);
  out.inverse_gap_bound = dd / (Interval(1) - out.s1);
  out.M = Interval(4) * dd * e3pi;
  out.c1 = Interval(128) * e3pi * pow_mpz(d, 4) / (rigor::sqr(rigor::pi()) * Interval(g));
  out.jk_bound = Interval(64) * rigor::sqr(dd);

  std::vector<Check> checks;
  checks.push_back({"1/2 < r1 < 1",
                    rigor::conjoin({rigor::check_lt(Interval::ratio(1, 2), out.r1), rigor::check_lt(out.r1, Interval(1))}),
                    out.r1, std::nullopt});
  checks.push_back(rigor::le_check("1/(1-r1) <= d/(1-s1)", out.inverse_gap, out.inverse_gap_bound));
  checks.push_back(rigor::exact_check("n <= 3d", n_cusps <= 3 * d, Interval(n_cusps), Interval(3 * d)));
  const Interval transition = dd * e3pi_half * (Interval(4) * e3pi_half);
  checks.push_back(rigor::exact_check("d exp(3pi/2) * 4 exp(3pi/2) = 4d exp(3pi)",
                                      mpq_class(3, 2) + mpq_class(3, 2) == 3 && transition.overlaps(out.M),
                                      transition, out.M));
  const Interval two_g_c1 = Interval(2 * g) * out.c1;
  const Interval jk_rhs = Interval(256) * e3pi * pow_mpz(d, 4) / rigor::sqr(rigor::pi());
  checks.push_back(rigor::exact_check("2g c1 = 256 exp(3pi) d^4 / pi^2",
                                      mpq_class(2 * g) * mpq_class(128, g) == 256 && two_g_c1.overlaps(jk_rhs),
                                      two_g_c1, jk_rhs));
  out.checks = rigor::make_chain(std::move(checks));
  return out;
}

GreenBound green_bound_belyi(long d, long g, std::optional<long> n_cusps) {
  const long n_actual = n_cusps.value_or(3 * d);
  const BelyiAtlasDerivation atlas = belyi_atlas(d, g, n_actual);
  GreenBound out;
  out.value = merkl_bound_inverse_gap(3 * d, atlas.inverse_gap_bound, atlas.M, atlas.c1);
  out.constant = Interval::from(mpq_class(mpz_class(6378027) * d5(d), mpz_class(g)));
  out.actual_n_value = merkl_bound_inverse_gap(n_actual, atlas.inverse_gap, atlas.M, atlas.c1);
  out.result = rigor::conjoin({atlas.checks.result, rigor::check_le(out.value, out.constant)});
  return out;
}

WronskianBound wronskian_bound(long d, long g) {
  if (d < 3) throw DomainError("Wronskian bound needs d >= 3");
  if (g < 1 || g > d) throw DomainError("Wronskian bound needs 1 <= g <= d");
  const BelyiAtlasDerivation atlas = belyi_atlas(d, g, 3 * d);
  const Interval e3pi = rigor::exp(Interval(3) * rigor::pi());
  const Interval pi2 = rigor::sqr(rigor::pi());
  const mpz_class gd5 = mpz_class(g) * d5(d);

  WronskianBound out;
  out.coefficient = 6378028;
  out.value = Interval::from(mpz_class(out.coefficient * gd5));

  std::vector<Check> checks;
  // (i) the constant multiplying g^2 log d.
  const Interval C = Interval::decimal("4.5") + rigor::log(Interval(1) / (Interval(1) - atlas.s1)) +
                     rigor::scale2(rigor::log(Interval(256) * e3pi / pi2), -1);
  checks.push_back(rigor::le_check("4.5 + log(1/(1-s1)) + 1/2 log(256 exp(3pi)/pi^2) <= 13", C, Interval(13)));

  // Hadamard and Cauchy estimate for this (d, g), with g! computed exactly.
  mpz_class gfact;
  mpz_fac_ui(gfact.get_mpz_t(), static_cast<unsigned long>(g));
  const Interval gg(g);
  const Interval logd = rigor::log(Interval(d));
  const Interval hadamard = gg * rigor::log(Interval::from(gfact)) + rigor::sqr(gg) * rigor::log(atlas.inverse_gap) +
                            rigor::scale2(gg, -1) * rigor::log(Interval(256) * gg * e3pi / pi2) +
                            Interval(2) * gg * logd;
  checks.push_back(rigor::le_check("log|W(omega)| estimate <= C g^2 log d", hadamard, C * rigor::sqr(gg) * logd));
  checks.push_back(rigor::le_check("C g^2 log d <= 13 g d^2", C * rigor::sqr(gg) * logd,
                                   Interval(13) * gg * rigor::sqr(Interval(d))));
  // (ii)
  const mpz_class g_d2 = mpz_class(g) * d * d;
  checks.push_back(rigor::exact_check("13 g d^2 <= g d^5", 13 * g_d2 <= gd5, Interval::from(mpz_class(13 * g_d2)),
                                      Interval::from(gd5)));
  // g(g+1)/2 log||dw|| <= (g+1)/2 * 6378027 d^5 <= 6378027 g d^5
  checks.push_back(rigor::exact_check("(g+1)/2 <= g", g + 1 <= 2 * g, Interval::ratio(g + 1, 2), gg));
  const GreenBound green = green_bound_belyi(d, g);
  checks.push_back({"Green bound <= 6378027 d^5/g", green.result, green.value, green.constant});
  // (iii)
  const mpz_class total = 6378027 * gd5 + gd5;
  checks.push_back(rigor::exact_check("6378027 g d^5 + g d^5 <= 6378028 g d^5", total <= out.coefficient * gd5,
                                      Interval::from(total), out.value));
  out.chain = rigor::make_chain(std::move(checks));
  return out;
}

}  // namespace arakelov::merkl
