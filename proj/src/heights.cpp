#include "arakelov/heights.hpp"

#include "arakelov/merkl.hpp"
#include "arakelov/modlambda.hpp"
#include "arakelov/rigor/elementary.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

namespace arakelov::heights {

using rigor::Check;
using rigor::DomainError;

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Interval from_z(const mpz_class& z) { return Interval::from(z); }
Interval from_q(const mpq_class& q) { return Interval::from(q); }

}  // namespace

Rational::Rational(long p, long q) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  value_ = mpq_class(mpz_class(p), mpz_class(q));
  value_.canonicalize();
}

Rational::Rational(const mpq_class& v) : value_(v) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  const std::string_view num = s.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  mpz_class p{std::string(num)}, q{std::string(den)};
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  if (negative) p = -p;
  return Rational(mpq_class(p, q));
}

Rational Rational::inverse() const {
  if (value_ == 0) throw DomainError("inverse of 0");
  return Rational(mpq_class(1) / value_);
}

mpz_class exp_height(const Rational& a) {
  const mpz_class p = abs(a.p());
  return p > a.q() ? p : a.q();
}

Interval naive_height(const Rational& a) { return rigor::log(from_z(exp_height(a))); }

std::vector<BranchPoint> parse_branch_list(std::string_view text) {
  std::vector<BranchPoint> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item.empty()) throw std::invalid_argument("empty entry in branch list");
    std::string lower(item);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "inf" || lower == "infinity" || lower == "oo")
      out.push_back(BranchPoint::inf());
    else
      out.push_back({false, Rational::parse(item)});
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

BranchSet branch_stats(const std::vector<BranchPoint>& points) {
  BranchSet out;
  mpz_class h = 1;
  for (const auto& pt : points) {
    const bool seen = std::any_of(out.points.begin(), out.points.end(), [&](const BranchPoint& o) {
      return o.infinity == pt.infinity && (pt.infinity || o.value == pt.value);
    });
    if (seen) continue;
    out.points.push_back(pt);
    if (!pt.infinity) h = std::max(h, exp_height(pt.value));
  }
  if (out.points.empty()) throw std::invalid_argument("empty branch set");
  out.N = static_cast<long>(out.points.size());
  out.H_B = from_z(h);
  out.H_B_exact = h;
  return out;
}

BranchSet branch_override(long N, const Interval& H_B) {
  if (N < 1) throw DomainError("branch set size must be positive");
  if (!rigor::certainly_ge(H_B, Interval(1))) throw DomainError("H_B must be at least 1");
  BranchSet out;
  out.N = N;
  out.H_B = H_B;
  return out;
}

namespace {

mpq_class khadjavi_core(long N) {
  if (N < 1) throw DomainError("Khadjavi exponent needs N >= 1");
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(N));
  mpz_class pow2;
  mpq_class two_pow;
  if (N >= 2) {
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(N - 2));
    two_pow = pow2;
  } else {
    two_pow = mpq_class(1, 2);
  }
  const mpz_class n3 = mpz_class(N) * N * N;
  mpq_class r = two_pow * mpq_class(n3 * fact);
  r.canonicalize();
  return r;
}

}  // namespace

mpq_class khadjavi_exponent(long N) { return 45 * khadjavi_core(N); }
mpq_class khadjavi_degree_exponent(long N) { return 9 * khadjavi_core(N); }

Interval log_khadjavi(long N, const Interval& H_B) {
  if (!rigor::certainly_ge(H_B, Interval(1))) throw DomainError("H_B must be at least 1");
  return from_q(khadjavi_exponent(N)) * rigor::log(Interval(4 * N) * H_B);
}

long lenstra_bound(const LocalRamification& l) {
  if (l.e < 1 || l.ord_n < 0) throw DomainError("lenstra_bound needs e >= 1, ord >= 0");
  return l.e - 1 + l.e * l.ord_n;
}

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long k = 2; k * k <= p; ++k)
    if (p % k == 0) return false;
  return true;
}

}  // namespace

long floor_log(long d, long p) {
  if (d < 1 || p < 2) throw DomainError("floor_log needs d >= 1, p >= 2");
  long m = 0;
  for (long acc = p; acc <= d; acc *= p) {
    ++m;
    if (acc > d / p) break;
  }
  return m;
}

long lenstra_bound_p(long e_beta, long p, long d, long ord_p) {
  if (!is_prime(p)) throw DomainError("lenstra_bound_p needs a prime p");
  const long m = floor_log(d, p);
  return lenstra_bound({e_beta, m * ord_p});
}

WildBound wild_bound(long e_ij, long m_i, long e_p) {
  if (m_i < 1) throw DomainError("wild_bound needs m >= 1; use lenstra_bound in the tame case");
  if (e_ij < 1 || e_p < 1) throw DomainError("ramification indices must be positive");
  WildBound out;
  out.value = 2 * e_ij * m_i * e_p;
  const long lhs = e_ij - 1 + e_ij * m_i * e_p;
  out.absorption = rigor::from_bool(lhs <= out.value, std::to_string(lhs) + " <= " + std::to_string(out.value));
  return out;
}

FiniteIntersection finite_intersection_bound(const IntersectionData& x) {
  if (x.deg_pi < 1 || x.field_degree < 1) throw DomainError("degrees must be positive");
  if (mpfr_sgn(x.d1_q.lo()) < 0) throw DomainError("(D1, Q)_fin must be non-negative");
  const Interval dp(x.deg_pi);
  const Interval per = dp * x.d1_q + Interval(2) * rigor::sqr(dp) * rigor::log(dp);
  return {per * Interval(x.field_degree), per};
}

Interval prime_sum_diagnostic(long d) {
  if (d < 1) throw DomainError("prime_sum_diagnostic needs d >= 1");
  Interval s(0);
  for (long p = 2; p <= d; ++p)
    if (is_prime(p)) s += Interval(floor_log(d, p)) * rigor::log(Interval(p));
  return s;
}

Rational weierstrass_avoiding_point(long n) {
  if (n < 1) throw DomainError("sequence index starts at 1");
  return n == 1 ? Rational(1, 2) : Rational(n, 2 * n - 1);
}

namespace {

// The lemma does not depend on (d, g); sweeps would otherwise redo it per pair.
CertResult cached_clambda(const rigor::PrecisionConfig& cfg) {
  using Key = std::tuple<mpfr_prec_t, int, double, std::size_t>;
  thread_local std::map<Key, CertResult> cache;
  const Key key{cfg.working_bits, cfg.max_depth, cfg.min_box_width, cfg.max_boxes};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, modlambda::certify_clambda(cfg)).first;
  return it->second;
}

}  // namespace

ChainResult archimedean_chain(long d, long g, const rigor::PrecisionConfig& cfg) {
  if (d < 3 || g < 1) throw DomainError("archimedean_chain needs d >= 3, g >= 1");
  std::vector<Check> checks;
  const Interval e2 = rigor::exp(Interval(-2));
  checks.push_back(rigor::le_check("exp(-2) <= 3/20", e2, Interval::ratio(3, 20)));

  Check cl{"|q dlambda/dq| >= 3/20 on y in [4/5, 1]", cached_clambda(cfg), std::nullopt,
           Interval::ratio(3, 20)};
  checks.push_back(std::move(cl));

  const Interval s1 = rigor::sqrt(Interval::ratio(1, 2));
  const Interval y23 = modlambda::lambda_inverse(mpq_class(2, 3));
  checks.push_back({"s1 < Im lambda^-1(2/3)", rigor::check_lt(s1, y23), y23, s1});

  const merkl::GreenBound green = merkl::green_bound_belyi(d, g);
  checks.push_back({"-log||dw_y|| <= 6378027 d^5/g", green.result, green.value, green.constant});
  return rigor::make_chain(std::move(checks));
}

namespace {

void require_belyi(long d, long g) {
  if (d < 3) throw DomainError("a Belyi cover of X(2) has degree >= 3");
  if (g < 1) throw DomainError("genus must be positive");
}

// 2 d^3 + 2 + 6378027 d^5/g <= 6378031 d^5/g, in exact rationals.
Check assembly_check(long d, long g) {
  const mpz_class D(d);
  const mpq_class d5g(D * D * D * D * D, mpz_class(g));
  const mpq_class lhs = mpq_class(2 * D * D * D + 2) + 6378027 * d5g;
  const mpq_class rhs = 6378031 * d5g;
  return rigor::exact_check("2d^3 + 2 + 6378027 d^5/g <= 6378031 d^5/g", lhs <= rhs, from_q(lhs), from_q(rhs));
}

}  // namespace

PointHeightBound height_point_bound(long d, long g, const Rational& a, const rigor::PrecisionConfig& cfg) {
  require_belyi(d, g);
  if (a.value() <= 0 || a.value() > mpq_class(2, 3)) throw DomainError("height_point_bound needs 0 < a <= 2/3");
  if (g > d) throw DomainError("genus exceeds degree");
  rigor::PrecisionGuard guard(cfg.working_bits);

  const Interval h = naive_height(a);
  const Interval dd(d);
  std::vector<Check> checks;

  // The three sections 0, 1, inf against a = p/q: log(|p| q |q - p|) <= 3 h(a).
  const mpz_class p = abs(a.p()), q = a.q();
  const Interval fin = rigor::log(from_z(p * q * (q - p)));
  checks.push_back(rigor::le_check("(0+1+inf, Q)_fin <= 3 h(a)", fin, Interval(3) * h));

  const FiniteIntersection fi = finite_intersection_bound({d, Interval(3) * h, 1});
  const Interval fin_target = Interval(3) * h * rigor::sqr(dd) + Interval(2) * dd * dd * dd;
  checks.push_back(rigor::le_check("(P', K)_fin <= 3 h(a) d^2 + 2 d^3", fi.per_field_degree, fin_target));

  const Interval ya = modlambda::lambda_inverse(a.value());
  const Interval s1 = rigor::sqrt(Interval::ratio(1, 2));
  checks.push_back({"s1 < Im lambda^-1(a)", rigor::check_lt(s1, ya), ya, s1});

  const ChainResult arch = archimedean_chain(d, g, cfg);
  checks.push_back({"-log||dpi|| <= 6378027 d^5/g + 2", arch.result,
                    Interval(6378027) * rigor::pow(dd, 5) / Interval(g) + Interval(2), std::nullopt});
  for (const auto& c : arch.checks) checks.push_back(c);

  checks.push_back(assembly_check(d, g));

  PointHeightBound out;
  out.value = Interval(3) * h * rigor::sqr(dd) + Interval(6378031) * rigor::pow(dd, 5) / Interval(g);
  out.chain = rigor::make_chain(std::move(checks));
  return out;
}

PointHeightBound nonweierstrass_height_bound(long d, long g, const rigor::PrecisionConfig& cfg) {
  require_belyi(d, g);
  if (g > d) throw DomainError("nonweierstrass_height_bound needs g <= d");
  rigor::PrecisionGuard guard(cfg.working_bits);

  const Interval dd(d);
  const long n_max = d * d;
  std::vector<Check> checks;

  // d fibers of d distinct points each outnumber the g^3 - g Weierstrass points.
  const mpz_class D(d), G(g);
  checks.push_back(rigor::exact_check("g^3 - g < d * d^2", G * G * G - G < D * D * D, from_z(G * G * G - G),
                                      from_z(D * D * D)));

  bool in_range = true, height_ok = true;
  for (long n = 1; n <= n_max; ++n) {
    const Rational an = weierstrass_avoiding_point(n);
    in_range = in_range && an.value() >= mpq_class(1, 2) && an.value() <= mpq_class(2, 3);
    height_ok = height_ok && exp_height(an) <= 2 * n;
  }
  checks.push_back(rigor::exact_check("a_n in [1/2, 2/3] for n <= d^2", in_range, Interval(n_max), Interval(n_max)));
  checks.push_back(
      rigor::exact_check("H(a_n) <= 2n for n <= d^2", height_ok, Interval(2 * n_max - 1), Interval(2 * n_max)));

  const Interval lhs = Interval(3) * rigor::log(Interval(2 * n_max)) * rigor::sqr(dd);
  const Interval rhs = Interval(2) * rigor::pow(dd, 5) / Interval(g);
  checks.push_back(rigor::le_check("3 log(2d^2) d^2 <= 2 d^5/g", lhs, rhs));

  // The worst point in the sequence, through the point-height chain.
  const PointHeightBound worst = height_point_bound(d, g, weierstrass_avoiding_point(n_max), cfg);
  checks.push_back({"h(b) <= 3 h(a_n) d^2 + 6378031 d^5/g", worst.chain.result, worst.value, std::nullopt});
  checks.push_back(rigor::exact_check("2 d^5/g + 6378031 d^5/g = 6378033 d^5/g", 2 + 6378031 == 6378033, Interval(6378033),
                                      Interval(6378033)));

  PointHeightBound out;
  out.value = Interval(6378033) * rigor::pow(dd, 5) / Interval(g);
  out.chain = rigor::make_chain(std::move(checks));
  return out;
}

}  // namespace arakelov::heights
