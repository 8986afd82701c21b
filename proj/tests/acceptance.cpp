// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "fuzz_harness.hpp"

#include "arakelov/applications.hpp"
#include "arakelov/cli/commands.hpp"
#include "arakelov/dessins.hpp"
#include "arakelov/heights.hpp"
#include "arakelov/invariants.hpp"
#include "arakelov/merkl.hpp"
#include "arakelov/modlambda.hpp"
#include "arakelov/rigor/elementary.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

using namespace arakelov;
using rigor::certainly_le;
using rigor::certainly_lt;
using rigor::Interval;
using rigor::PrecisionConfig;
using rigor::PrecisionGuard;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int n, bool ok, const std::string& what, const std::string& detail) {
  std::printf("criterion %2d: %s  %s  (%s)\n", n, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

mpz_class zpow(long b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
  return r;
}

// |x - ref| <= tol with x's endpoints.
bool within(const Interval& x, const char* ref, double tol) {
  const Interval r = Interval::decimal(ref);
  return certainly_le(rigor::abs(x - r), Interval::exact(tol));
}

void criterion1(const PrecisionConfig& cfg) {
  PrecisionGuard g(cfg.working_bits);
  const auto t0 = std::chrono::steady_clock::now();
  int cells = 0, bad = 0;
  for (long d = 3; d <= 64; ++d)
    for (long gg = 1; gg <= d; ++gg, ++cells)
      if (!merkl::green_bound_belyi(d, gg).result.certified()) ++bad;
  const double secs = seconds_since(t0);
  const merkl::GreenBound tight = merkl::green_bound_belyi(3, 1);
  const bool slack = certainly_le(tight.value + Interval(2'000'000), tight.constant);
  const bool near = within(tight.value, "1.5467e9", 1e5);
  report(1, bad == 0 && slack && near && secs <= 30, "Green bound <= 6378027 d^5/g on 3<=d<=64, 1<=g<=d",
         std::to_string(cells) + " cells, " + std::to_string(bad) + " not certified; d=3 g=1 composed " +
             rigor::short_string(tight.value, 8) + " vs 1549860561, slack " +
             rigor::short_string(tight.constant - tight.value, 7) + "; " + fmt("%.1f s", secs));
}

void criterion2(const PrecisionConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const rigor::ChainResult red = merkl::certify_appendix_reduction(cfg);
  const rigor::ChainResult lift = merkl::certify_theorem_lift(cfg);
  const double secs = seconds_since(t0);
  merkl::AppendixQuery q40;
  q40.constant = Interval(40);
  merkl::LiftQuery q329;
  q329.lift_constant = Interval(329);
  const bool c40 = merkl::certify_appendix_reduction(cfg, q40).result.refuted();
  const bool c329 = merkl::certify_theorem_lift(cfg, q329).result.refuted();
  std::string detail = "reduction " + std::string(rigor::to_string(red.result.status)) + ", lift " +
                       std::string(rigor::to_string(lift.result.status)) + "; controls 40 " +
                       (c40 ? "Refuted" : "not refuted") + ", 329 " + (c329 ? "Refuted" : "not refuted") + "; " +
                       fmt("%.1f s", secs);
  if (red.result.refuted()) {
    for (const auto& c : red.checks)
      if (c.result.refuted() && c.result.witness && !c.result.witness->empty())
        detail += "; witness r1 in " + rigor::to_string(c.result.witness->at("r1"), 8) + " where lhs " +
                  rigor::short_string(*c.value) + " > rhs " + rigor::short_string(*c.bound);
  }
  report(2, red.result.certified() && lift.result.certified() && c40 && c329 && secs <= 60,
         "appendix reduction and lift certified, 40 and 329 refuted", detail);
}

void criterion3(const PrecisionConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const rigor::CertResult r = modlambda::certify_clambda(cfg);
  const double secs = seconds_since(t0);
  PrecisionGuard g(cfg.working_bits);
  const Interval spot = modlambda::q_dlambda_dq(modlambda::ImaginaryTau::from_y(Interval(1)));
  // Independent q-series value from mpmath (tests/oracles/oracles.py).
  const bool oracle = within(spot, "0.3483009824214192147960615650813420606644", 1e-30);
  const bool quoted = within(spot, "0.3489", 1e-3);
  report(3, r.certified() && oracle && quoted && secs <= 10, "|q dlambda/dq| >= 3/20 on [4/5, 1]",
         std::string(rigor::to_string(r.status)) + " in " + fmt("%.2f s", secs) + "; value at y=1 " +
             rigor::short_string(spot, 10) + (oracle ? ", matches" : ", differs from") + " the mpmath oracle");
}

void criterion4(const PrecisionConfig& cfg) {
  PrecisionGuard g(cfg.working_bits);
  double worst = 0;
  for (long k = 1; k < 24; ++k) {
    const Interval back =
        modlambda::lambda_eval(modlambda::ImaginaryTau::from_y(modlambda::lambda_inverse(mpq_class(k, 24))));
    const Interval err = rigor::abs(back.midpoint() - Interval::ratio(k, 24));
    worst = std::max(worst, err.upper());
  }
  const Interval y = modlambda::lambda_inverse(mpq_class(2, 3));
  const bool in_range = certainly_le(Interval::decimal("0.84"), y) && certainly_le(y, Interval::decimal("0.86"));
  const Interval li = modlambda::lambda_eval(modlambda::ImaginaryTau::from_y(Interval(1)));
  const bool half = li.contains(Interval::ratio(1, 2)) && li.width() <= 1e-25;
  report(4, worst <= 1e-20 && in_range && half, "lambda/AGM round trip, lambda^-1(2/3), lambda(i)",
         "max round-trip error " + fmt("%.3g", worst) + "; Im lambda^-1(2/3) = " + rigor::short_string(y, 8) +
             "; lambda(i) width " + fmt("%.3g", li.width()));
}

void criterion5(const PrecisionConfig& cfg) {
  PrecisionGuard g(cfg.working_bits);
  const merkl::WronskianBound w = merkl::wronskian_bound(3, 1);
  const rigor::Check& scalar = w.chain.checks.front();
  const bool link = scalar.result.certified() && within(*scalar.value, "12.068", 1e-3);
  int bad = 0;
  for (long d = 3; d <= 64; ++d)
    for (long gg = 1; gg <= d; ++gg) {
      const merkl::WronskianBound x = merkl::wronskian_bound(d, gg);
      const mpz_class exact = x.coefficient * gg * zpow(d, 5);
      if (!x.chain.result.certified() || x.coefficient != 6378028 || !x.value.is_point() || !x.value.contains(exact))
        ++bad;
    }
  report(5, link && bad == 0, "Wronskian scalar link <= 13 and bound = 6378028 g d^5",
         "link value " + rigor::short_string(*scalar.value, 8) + " " +
             std::string(rigor::to_string(scalar.result.status)) + "; " + std::to_string(bad) +
             " sweep cells off the exact value");
}

void criterion6(const PrecisionConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  int cells = 0, bad = 0;
  std::string first;
  for (long d = 3; d <= 64; ++d)
    for (long gg = 1; gg <= d; ++gg, ++cells)
      if (!invariants::compose_mainthm(d, gg, cfg).chain.result.certified()) {
        if (bad++ == 0) first = "d=" + std::to_string(d) + " g=" + std::to_string(gg);
      }
  const invariants::MainTheorem m = invariants::compose_mainthm(3, 1, cfg);
  const bool exact = m.h_fal_exact == mpq_class(3099722823L) && m.h_fal_exact <= 3'159'000'000L;
  report(6, bad == 0 && exact, "main composition certified on the sweep, h_fal(3,1) = 3099722823 <= 3159000000",
         std::to_string(cells) + " cells, " + std::to_string(bad) + " not certified" +
             (first.empty() ? "" : " (first " + first + ")") + "; h_fal(3,1) = " + m.h_fal_exact.get_str() + "; " +
             fmt("%.1f s", seconds_since(t0)));
}

void criterion7(const PrecisionConfig& cfg) {
  PrecisionGuard g(cfg.working_bits);
  int bad = 0;
  for (long gg = 1; gg <= 10; ++gg)
    if (!invariants::theta_sum_cert(gg).certified()) ++bad;
  const bool c2 = invariants::minkowski_c(2).contains(mpq_class(3, 8)) &&
                  invariants::minkowski_c_exact(2) == mpq_class(3, 8);
  report(7, bad == 0 && c2, "theta sum bound for g = 1..10, c(2) contains 3/8",
         std::to_string(bad) + " of 10 not certified; c(2) = " + invariants::minkowski_c_exact(2).get_str());
}

dessins::Permutation random_perm(std::mt19937_64& rng, int d) {
  std::vector<int> v(static_cast<std::size_t>(d));
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  return dessins::Permutation::from_images(v);
}

void criterion8() {
  using dessins::Permutation;
  const dessins::BelyiTriple t{3, Permutation::from_cycles("(1 2 3)", 3), Permutation::from_cycles("(1 2 3)", 3),
                               Permutation::from_cycles("(1 2 3)", 3)};
  const dessins::BelyiTriple s{2, Permutation::from_cycles("(1 2)", 2), Permutation::from_cycles("(1 2)", 2),
                               Permutation::identity(2)};
  const int g1 = dessins::genus(t), g0 = dessins::genus(s);
  std::mt19937_64 rng(7);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const int d = 3 + static_cast<int>(rng() % 10);
    dessins::BelyiTriple x{d, random_perm(rng, d), random_perm(rng, d), Permutation::identity(d)};
    x.sinf = x.s0.then(x.s1).inverse();
    const Permutation p = random_perm(rng, d);
    const dessins::BelyiTriple y{d, x.s0.relabeled(p), x.s1.relabeled(p), x.sinf.relabeled(p)};
    bool same = dessins::genus(x) == dessins::genus(y);
    for (const auto& [a, b] : {std::pair{&x.s0, &y.s0}, {&x.s1, &y.s1}, {&x.sinf, &y.sinf}})
      same = same && a->cycles().size() == b->cycles().size();
    same = same && y.s0.then(y.s1).then(y.sinf).is_identity();
    if (!same) ++bad;
  }
  report(8, g1 == 1 && g0 == 0 && bad == 0, "genus of the basic triples, relabeling invariance",
         "genera " + std::to_string(g1) + " and " + std::to_string(g0) + "; " + std::to_string(bad) +
             " of 1000 relabelings changed an invariant");
}

void criterion9() {
  const long wild = heights::lenstra_bound({2, 1});
  std::mt19937_64 rng(11);
  const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const long e = 1 + static_cast<long>(rng() % 30);
    const long p = primes[rng() % 20];
    const long ord = 1 + static_cast<long>(rng() % 4);
    if (i % 2 == 0) {
      if (heights::lenstra_bound({e, 0}) != e - 1) ++bad;
    } else {
      const long d = 1 + static_cast<long>(rng() % static_cast<unsigned long>(p - 1));  // p > d
      if (heights::lenstra_bound_p(e, p, d, ord) != e - 1) ++bad;
    }
  }
  report(9, wild == 3 && bad == 0, "Lenstra bound 3 for the wild quadratic case, tame reduction e - 1",
         "lenstra_bound(2,1) = " + std::to_string(wild) + "; " + std::to_string(bad) + " of 1000 tame cases off");
}

void criterion10() {
  using namespace applications;
  const bool idx = gamma1_index(5) == 24 && gamma1_index(6) == 24;
  const ExactBound x1 = x1_discriminant_bound(5);
  const mpz_class scaled = mpz_class(500'000'000) * zpow(5, 14);
  // The quoted decimal 3052157812500000000 is not 5e8 * 5^14; the exact
  // product is the claim checked here.
  const bool x1ok = x1.value == scaled && x1.chain.result.certified();
  bool modf = false;
  PrecisionGuard g(128);
  for (const auto& c : modferwol_bound(1).chain.checks)
    if (c.name == "5e8 128^5 <= 2e19") modf = c.result.certified();
  report(10, idx && x1ok && modf, "Gamma1 indices, X1(5) discriminant 5e8 5^14, 5e8 128^5 <= 2e19",
         "indices " + gamma1_index(5).get_str() + ", " + gamma1_index(6).get_str() + "; X1(5) bound " +
             x1.value.get_str() + "; modferwol check " + (modf ? "Certified" : "not certified"));
}

void criterion11(const PrecisionConfig& cfg) {
  int violations = 0;
  std::string per;
  for (const auto& [name, v] : fuzz::all_primitives()) {
    violations += v;
    if (v) per += " " + name + ":" + std::to_string(v);
  }
  cli::Options opt;
  opt.cfg = cfg;
  const auto t0 = std::chrono::steady_clock::now();
  const std::string a = cli::render_json(cli::cmd_verify("all", opt));
  const double secs = seconds_since(t0);
  const std::string b = cli::render_json(cli::cmd_verify("all", opt));
  report(11, violations == 0 && a == b && secs <= 300, "containment fuzz, verify all deterministic and <= 5 min",
         std::to_string(violations) + " containment violations over 1e5 samples per primitive" + per +
             "; verify all " + (a == b ? "byte-identical" : "differs") + " across runs; " + fmt("%.1f s", secs));
}

}  // namespace

int main() {
  const PrecisionConfig cfg = PrecisionConfig::from_env();
  criterion1(cfg);
  criterion2(cfg);
  criterion3(cfg);
  criterion4(cfg);
  criterion5(cfg);
  criterion6(cfg);
  criterion7(cfg);
  criterion8();
  criterion9();
  criterion10();
  criterion11(cfg);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
