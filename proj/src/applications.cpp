#include "arakelov/applications.hpp"

#include "arakelov/rigor/elementary.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace arakelov::applications {

using rigor::Check;
using rigor::DomainError;

namespace {

mpz_class zpow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Interval z_(const mpz_class& v) { return Interval::from(v); }

// The larger of the four table coefficients at genus g is 5e8 g^2.
Check table_max_check(long g) {
  const mpz_class G(g);
  const mpz_class top = 500'000'000 * G * G;
  const bool ok = 13'000'000 * G <= top && 30'000'000 * (G - 1) <= top && 200'000'000 * G <= top &&
                  100'000'000 * G * G <= top;
  return rigor::exact_check("max of the four coefficients is 5e8 g^2", ok, z_(top), z_(top));
}

}  // namespace

mpz_class gamma1_index(long n) {
  if (n < 1) throw DomainError("level must be positive");
  mpq_class r = mpq_class(mpz_class(n) * n);
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    r *= mpq_class(p * p - 1, p * p);
  }
  if (m > 1) r *= mpq_class(mpz_class(m) * m - 1, mpz_class(m) * m);
  r.canonicalize();
  if (r.get_den() != 1) throw std::logic_error("index is not an integer");
  return r.get_num();
}

std::string to_string(CurveClass::Kind k) {
  switch (k) {
    case CurveClass::Kind::Modular: return "modular";
    case CurveClass::Kind::GaloisBelyi: return "galois_belyi";
    case CurveClass::Kind::CongruenceIndex: return "congruence_index";
    case CurveClass::Kind::X1Level: return "x1_level";
    case CurveClass::Kind::ExplicitBelyi: return "explicit_belyi";
  }
  return "?";
}

mpz_class belyi_degree_bound(const CurveClass& c, long g) {
  if (g < 1) throw DomainError("genus must be at least 1");
  switch (c.kind) {
    case CurveClass::Kind::Modular: return 128 * (mpz_class(g) + 1);
    case CurveClass::Kind::GaloisBelyi:
      if (g < 2) throw DomainError("Galois Belyi bound 84(g-1) needs g >= 2");
      return 84 * (mpz_class(g) - 1);
    case CurveClass::Kind::CongruenceIndex:
    case CurveClass::Kind::ExplicitBelyi:
      if (c.param < 1) throw DomainError("degree must be positive");
      return c.param;
    case CurveClass::Kind::X1Level: return gamma1_index(c.param);
  }
  throw std::logic_error("unknown curve class");
}

ExactBound modferwol_bound(long g) {
  if (g < 1) throw DomainError("genus must be at least 1");
  const mpz_class G(g);
  std::vector<Check> checks;
  checks.push_back(table_max_check(g));
  const mpz_class lhs_coeff = 500'000'000 * zpow(128, 5);
  const mpz_class rhs_coeff = mpz_class("20000000000000000000");
  checks.push_back(rigor::exact_check("5e8 128^5 <= 2e19", lhs_coeff <= rhs_coeff, z_(lhs_coeff), z_(rhs_coeff)));
  checks.push_back(rigor::exact_check("84(g-1) <= 128(g+1)", 84 * (G - 1) <= 128 * (G + 1), z_(84 * (G - 1)),
                                      z_(128 * (G + 1))));
  const mpz_class lhs = 500'000'000 * G * G * zpow(128 * (G + 1), 5);
  ExactBound out;
  out.value = rhs_coeff * G * G * zpow(G + 1, 5);
  out.enclosure = z_(out.value);
  checks.push_back(rigor::exact_check("5e8 g^2 (128(g+1))^5 <= 2e19 g^2 (g+1)^5", lhs <= out.value, z_(lhs),
                                      out.enclosure));
  out.chain = rigor::make_chain(std::move(checks));
  return out;
}

ExactBound congruence_bound(long d) {
  if (d < 1) throw DomainError("index must be positive");
  const mpz_class D(d);
  std::vector<Check> checks;
  // g <= d, so the worst genus is g = d.
  checks.push_back(table_max_check(d));
  const mpz_class lhs = 500'000'000 * D * D * zpow(D, 5);
  ExactBound out;
  out.value = 1'000'000'000 * zpow(D, 7);
  out.enclosure = z_(out.value);
  checks.push_back(rigor::exact_check("5e8 g^2 d^5 <= 1e9 d^7 for g <= d", lhs <= out.value, z_(lhs), out.enclosure));
  out.chain = rigor::make_chain(std::move(checks));
  return out;
}

ExactBound x1_discriminant_bound(long n) {
  if (n < 1) throw DomainError("level must be positive");
  const mpz_class N2 = mpz_class(n) * n;
  const mpz_class index = gamma1_index(n);
  std::vector<Check> checks;
  checks.push_back(rigor::exact_check("deg_B <= [SL2(Z):Gamma1(n)] <= n^2", index <= N2, z_(index), z_(N2)));
  // g <= deg_B <= n^2 in 5e8 g^2 deg_B^5.
  const mpz_class composed = 500'000'000 * N2 * N2 * zpow(N2, 5);
  ExactBound out;
  out.value = 500'000'000 * zpow(n, 14);
  out.enclosure = z_(out.value);
  checks.push_back(rigor::exact_check("5e8 (n^2)^2 (n^2)^5 = 5e8 n^14", composed == out.value, z_(composed),
                                      out.enclosure));
  out.chain = rigor::make_chain(std::move(checks));
  return out;
}

void CoverSpec::validate() const {
  if (deg_f < 1 || deg_pi < 1 || g < 1) throw DomainError("cover degrees and genus must be positive");
  if (branch.N < 1) throw DomainError("branch set must be non-empty");
}

LogBoundSet mainthm2_bounds(const CoverSpec& spec) {
  spec.validate();
  const long N = spec.branch.N;
  const long g = spec.g;
  LogBoundSet out;
  out.exponent = heights::khadjavi_exponent(N);
  out.log_c_B = heights::log_khadjavi(N, spec.branch.H_B);
  out.h_fal_lower = -(Interval(g) * rigor::log(rigor::scale2(rigor::pi(), 1)));

  // log(c_B d_f^5 d_pi^5), shared by all four clauses.
  const Interval common =
      out.log_c_B + Interval(5) * (rigor::log(Interval(spec.deg_f)) + rigor::log(Interval(spec.deg_pi)));
  const Interval lg = rigor::log(Interval(g));
  out.h_fal_upper.log_value = rigor::log(Interval(13'000'000)) + lg + common;
  if (g > 1) out.e_upper.log_value = rigor::log(Interval(30'000'000)) + rigor::log(Interval(g - 1)) + common;
  out.disc_upper.log_value = rigor::log(Interval(500'000'000)) + Interval(2) * lg + common;
  out.delta_upper.log_value = rigor::log(Interval(200'000'000)) + lg + common;
  out.delta_lower_abs.log_value = rigor::log(Interval(100'000'000)) + Interval(2) * lg + common;

  // deg(R f pi) <= (4 N H_B)^{9 N^3 2^{N-2} N!} deg f deg pi, and its fifth power
  // carries exactly the exponent of c_B.
  const mpq_class e9 = heights::khadjavi_degree_exponent(N);
  std::vector<Check> checks;
  checks.push_back(rigor::exact_check("5 * 9 N^3 2^{N-2} N! = 45 N^3 2^{N-2} N!", 5 * e9 == out.exponent,
                                      Interval::from(mpq_class(5 * e9)), Interval::from(out.exponent)));
  checks.push_back(rigor::exact_check("1 <= 4 N H_B", rigor::certainly_ge(Interval(4 * N) * spec.branch.H_B, 1),
                                      Interval(1), Interval(4 * N) * spec.branch.H_B));
  out.chain = rigor::make_chain(std::move(checks));
  return out;
}

EdjsExponent edjs_exponent(long N, const Interval& H_B, const std::vector<long>& degrees) {
  EdjsExponent out;
  const Interval L = rigor::log(Interval(13'000'000) * Interval(N)) + heights::log_khadjavi(N, H_B);
  out.a = Interval(6) + L;
  const Interval log13 = rigor::log(Interval(13'000'000));
  const Interval log_cB = heights::log_khadjavi(N, H_B);
  for (long d : degrees) {
    if (d < 1) throw DomainError("cover degree must be positive");
    EdjsAbsorption ab;
    ab.d = d;
    // Worst genus g = N d.
    ab.lhs_log = log13 + rigor::log(Interval(N) * Interval(d)) + log_cB;
    ab.rhs_log = (Interval(1) + L) * rigor::log(Interval(d));
    ab.result = rigor::check_le(ab.lhs_log, ab.rhs_log);
    if (!ab.result.certified())
      ab.result.detail = "needs log d >= 1; fails at d = " + std::to_string(d);
    out.absorption.push_back(std::move(ab));
  }
  return out;
}

}  // namespace arakelov::applications
