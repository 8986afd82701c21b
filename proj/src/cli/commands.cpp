#include "arakelov/cli/commands.hpp"

#include "arakelov/applications.hpp"
#include "arakelov/dessins.hpp"
#include "arakelov/heights.hpp"
#include "arakelov/invariants.hpp"
#include "arakelov/merkl.hpp"
#include "arakelov/modlambda.hpp"
#include "arakelov/rigor/elementary.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace arakelov::cli {

using rigor::CertResult;
using rigor::Check;
using rigor::Status;

namespace {

Report start(std::string command, const Options& opt) {
  Report r;
  r.command = std::move(command);
  r.precision_bits = static_cast<long>(opt.cfg.working_bits);
  r.max_depth = opt.cfg.max_depth;
  return r;
}

std::string ds(long d, long g) { return "d=" + std::to_string(d) + " g=" + std::to_string(g); }

// Runs fn(i) for i in [0, n) on a bounded pool. Results are written by index,
// so callers see the same output whatever the completion order.
void parallel_for(std::size_t n, const Options& opt, const std::function<void(std::size_t)>& fn) {
  unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto body = [&] {
    rigor::PrecisionGuard guard(opt.cfg.working_bits);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
        next = n;
        return;
      }
    }
  };
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

// One verdict per sweep cell; folded in cell order.
struct CellVerdict {
  Status status = Status::Certified;
  std::optional<double> slack;
};

struct Aggregate {
  std::string name;
  Status worst = Status::Certified;
  std::size_t cells = 0;
  std::optional<double> min_slack;
  std::string min_at;
  std::string first_bad;

  explicit Aggregate(std::string n = {}) : name(std::move(n)) {}

  void add(const CellVerdict& v, const std::string& where) {
    ++cells;
    if (v.status == Status::Refuted || (v.status == Status::Undecided && worst == Status::Certified)) {
      if (worst == Status::Certified || (v.status == Status::Refuted && worst != Status::Refuted)) first_bad = where;
      worst = v.status;
    }
    if (v.slack && (!min_slack || *v.slack < *min_slack)) {
      min_slack = v.slack;
      min_at = where;
    }
  }

  Row row() const {
    Row r;
    r.name = name;
    r.status = row_status(worst);
    r.detail = std::to_string(cells) + " cells";
    if (min_slack) r.detail += ", min relative slack " + slack_string(*min_slack) + " at " + min_at;
    if (!first_bad.empty()) r.detail += ", first failure at " + first_bad;
    return r;
  }
};

CellVerdict verdict(const CertResult& r, const std::optional<Interval>& v = std::nullopt,
                    const std::optional<Interval>& c = std::nullopt) {
  CellVerdict out;
  out.status = r.status;
  if (v && c) out.slack = relative_slack(*v, *c);
  return out;
}

CellVerdict verdict(const Check& c) { return verdict(c.result, c.value, c.bound); }

long genus_cap(long d, const Options& opt) { return opt.gmax > 0 ? std::min(d, opt.gmax) : d; }

std::vector<std::pair<long, long>> sweep_cells(const Options& opt) {
  if (opt.dmax < 3) throw InputError("--dmax must be at least 3");
  std::vector<std::pair<long, long>> cells;
  for (long d = 3; d <= opt.dmax; ++d)
    for (long g = 1; g <= genus_cap(d, opt); ++g) cells.emplace_back(d, g);
  return cells;
}

std::string sweep_label(const Options& opt) {
  std::string s = "3<=d<=" + std::to_string(opt.dmax) + ", 1<=g<=";
  s += opt.gmax > 0 ? "min(d," + std::to_string(opt.gmax) + ")" : std::string("d");
  return s;
}

// Folds per-cell verdict lists (all the same length) into one row each.
void fold(Report& r, const std::vector<std::string>& names, const std::vector<std::pair<long, long>>& cells,
          const std::vector<std::vector<CellVerdict>>& per_cell, const std::string& suffix) {
  std::vector<Aggregate> agg(names.size());
  for (std::size_t k = 0; k < names.size(); ++k) agg[k].name = names[k] + " [" + suffix + "]";
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t k = 0; k < names.size(); ++k) agg[k].add(per_cell[i][k], ds(cells[i].first, cells[i].second));
  for (const auto& a : agg) r.rows.push_back(a.row());
}

// ---------------------------------------------------------------- suites

void suite_lambda(Report& r, const Options& opt) {
  using namespace modlambda;
  rigor::PrecisionGuard guard(opt.cfg.working_bits);
  r.result("|q dlambda/dq| >= 3/20 on y in [4/5, 1]", certify_clambda(opt.cfg), std::nullopt,
           Interval::ratio(3, 20));
  r.value("q dlambda/dq at y = 1", q_dlambda_dq(ImaginaryTau::from_y(Interval(1))));
  r.value("q dlambda/dq at y = 4/5", q_dlambda_dq(ImaginaryTau::from_y(Interval::ratio(4, 5))));

  const Interval y23 = lambda_inverse(mpq_class(2, 3));
  const bool inside = rigor::certainly_le(Interval::decimal("0.84"), y23) &&
                      rigor::certainly_le(y23, Interval::decimal("0.86"));
  r.check(rigor::exact_check("Im lambda^-1(2/3) in [0.84, 0.86]", inside, y23, Interval::decimal("0.85")));

  const Interval li = lambda_eval(ImaginaryTau::from_y(Interval(1)));
  r.check(rigor::exact_check("lambda(i) contains 1/2 with width <= 1e-25",
                             li.contains(Interval::ratio(1, 2)) && li.width() <= 1e-25, li, Interval::ratio(1, 2)));

  double worst = 0;
  for (long k = 1; k < 24; ++k) {
    const Interval y = lambda_inverse(mpq_class(k, 24));
    const Interval back = lambda_eval(ImaginaryTau::from_y(y));
    const Interval err = rigor::abs(back.midpoint() - Interval::ratio(k, 24));
    worst = std::max(worst, mpfr_get_d(err.hi(), MPFR_RNDU));
  }
  Row rt;
  rt.name = "max |lambda(lambda^-1(k/24)) - k/24| <= 1e-20, k = 1..23";
  rt.status = worst <= 1e-20 ? RowStatus::Certified : RowStatus::Refuted;
  rt.detail = "max error " + slack_string(worst);
  r.rows.push_back(std::move(rt));
  r.value("agm(1, 1/2)", agm(Interval(1), Interval::ratio(1, 2)));
}

void suite_appendix(Report& r, const Options& opt) {
  using namespace merkl;
  r.chain(certify_appendix_reduction(opt.cfg), "appendix");
  r.chain(certify_theorem_lift(opt.cfg), "lift");

  AppendixQuery low;
  low.constant = Interval(40);
  const ChainResult c40 = certify_appendix_reduction(opt.cfg, low);
  Row n1;
  n1.name = "control: 40 in place of 52.4 is refuted";
  n1.status = c40.result.refuted() ? RowStatus::Certified : RowStatus::Refuted;
  n1.detail = "inner verdict " + std::string(rigor::to_string(c40.result.status));
  r.rows.push_back(std::move(n1));

  LiftQuery lift;
  lift.lift_constant = Interval(329);
  const ChainResult c329 = certify_theorem_lift(opt.cfg, lift);
  Row n2;
  n2.name = "control: 329 in place of 330 is refuted";
  n2.status = c329.result.refuted() ? RowStatus::Certified : RowStatus::Refuted;
  n2.detail = "inner verdict " + std::string(rigor::to_string(c329.result.status));
  r.rows.push_back(std::move(n2));

  AppendixQuery belyi;
  {
    rigor::PrecisionGuard guard(opt.cfg.working_bits);
    belyi.r1_lo = Interval::point(belyi_r1_floor().lo());
  }
  r.chain(certify_appendix_reduction(opt.cfg, belyi), "appendix on the Belyi range r1 >= (1/2)^(1/6)");
}

void suite_merkl(Report& r, const Options& opt) {
  using namespace merkl;
  rigor::PrecisionGuard guard(opt.cfg.working_bits);
  r.value("Merkl bound n=3 r1=3/4 M=2 c1=1", merkl_bound({3, Interval::ratio(3, 4), Interval(2), Interval(1)}));
  r.chain(belyi_atlas(3, 1, 9).checks, "atlas d=3 g=1");

  const GreenBound tight = green_bound_belyi(3, 1);
  r.result("Green bound <= 6378027 d^5/g at d=3 g=1", tight.result, tight.value, tight.constant);
  r.check(rigor::le_check("absolute slack >= 2e6 at d=3 g=1", tight.value + Interval(2'000'000), tight.constant));

  const auto cells = sweep_cells(opt);
  std::vector<std::vector<CellVerdict>> per(cells.size());
  parallel_for(cells.size(), opt, [&](std::size_t i) {
    const auto [d, g] = cells[i];
    const GreenBound gb = green_bound_belyi(d, g);
    per[i] = {verdict(gb.result, gb.value, gb.constant)};
  });
  fold(r, {"Green bound <= 6378027 d^5/g"}, cells, per, sweep_label(opt));

  const WronskianBound w = wronskian_bound(3, 1);
  r.chain(w.chain, "Wronskian d=3 g=1");
  r.exact("6378028 g d^5 at d=3 g=1", mpz_class(w.coefficient * 243).get_str(), w.value);
}

void suite_theta(Report& r, const Options& opt) {
  using namespace invariants;
  rigor::PrecisionGuard guard(opt.cfg.working_bits);
  const long G = opt.gmax > 0 ? opt.gmax : 10;
  for (long g = 1; g <= G; ++g)
    r.result("2^g (1 + 2/(pi sqrt3 c(g)))^g <= 2^(3g^3+5g), g=" + std::to_string(g), theta_sum_cert(g));
  r.exact("c(2)", minkowski_c_exact(2).get_str(), minkowski_c(2));
  r.value("theta bound g=1, h_fal <= 1", theta_max_bound(1, Interval(1)));
  for (long g = 2; g <= G; ++g) {
    const FaltingsOmega f = faltingsomega1(g, Interval(0), Interval(0));
    r.chain(f.link, "g=" + std::to_string(g));
  }
  const Interval l2p = rigor::log(rigor::scale2(rigor::pi(), 1));
  for (long g = 1; g <= G; ++g) {
    IneqQuery q;
    q.a = Interval::ratio(g, 4);
    q.b = -(Interval(g) * l2p);
    r.result("x - (g/4) log max(1,x) >= x/2 + min(b/2, g/4 - g/4 log(g/2)) for x >= -g log 2pi, g=" +
                 std::to_string(g),
             ineq_lemma_cert(q, opt.cfg));
  }
}

void suite_pipeline(Report& r, const Options& opt) {
  const auto cells = sweep_cells(opt);
  std::vector<std::string> names = {"Green bound <= 6378027 d^5/g", "log||Wr|| <= 6378028 g d^5",
                                    "h(b) <= 3 h(1/2) d^2 + 6378031 d^5/g", "h(b) <= 6378033 d^5/g off Weierstrass"};
  std::vector<std::vector<CellVerdict>> per(cells.size());
  std::vector<std::string> comp_names;
  std::mutex name_lock;
  parallel_for(cells.size(), opt, [&](std::size_t i) {
    const auto [d, g] = cells[i];
    std::vector<CellVerdict> v;
    const merkl::GreenBound gb = merkl::green_bound_belyi(d, g);
    v.push_back(verdict(gb.result, gb.value, gb.constant));
    v.push_back(verdict(merkl::wronskian_bound(d, g).chain.result));
    v.push_back(verdict(heights::height_point_bound(d, g, heights::Rational(1, 2), opt.cfg).chain.result));
    v.push_back(verdict(heights::nonweierstrass_height_bound(d, g, opt.cfg).chain.result));
    const invariants::MainTheorem m = invariants::compose_mainthm(d, g, opt.cfg);
    // The table clauses follow the two input steps.
    std::vector<std::string> local;
    for (std::size_t k = 2; k < m.chain.checks.size(); ++k) {
      v.push_back(verdict(m.chain.checks[k]));
      local.push_back(m.chain.checks[k].name);
    }
    v.push_back(verdict(m.chain.result));
    per[i] = std::move(v);
    if (i == 0) {
      std::lock_guard lock(name_lock);
      comp_names = std::move(local);
    }
  });
  for (auto& n : comp_names) names.push_back(n);
  names.push_back("main composition");
  fold(r, names, cells, per, sweep_label(opt));

  const invariants::MainTheorem m = invariants::compose_mainthm(3, 1, opt.cfg);
  r.exact("composed h_fal bound at d=3 g=1", m.h_fal_exact.get_str(), *m.composed.h_fal.upper);
  r.check(rigor::exact_check("3099722823 <= 3159000000", m.h_fal_exact <= 3'159'000'000L,
                             Interval::from(m.h_fal_exact), Interval(3'159'000'000L)));
}

void suite_applications(Report& r, const Options& opt) {
  using namespace applications;
  rigor::PrecisionGuard guard(opt.cfg.working_bits);
  r.check(rigor::exact_check("[SL2(Z):Gamma1(5)] = 24", gamma1_index(5) == 24, Interval::from(gamma1_index(5)),
                             Interval(24)));
  r.check(rigor::exact_check("[SL2(Z):Gamma1(6)] = 24", gamma1_index(6) == 24, Interval::from(gamma1_index(6)),
                             Interval(24)));
  const ExactBound x1 = x1_discriminant_bound(5);
  r.chain(x1.chain, "X1(5)");
  r.exact("disc(X1(5)) <= 5e8 5^14", x1.value.get_str(), x1.enclosure);
  r.chain(modferwol_bound(1).chain, "modular or Galois Belyi, g=1");

  Aggregate mod{"5e8 g^2 (128(g+1))^5 <= 2e19 g^2 (g+1)^5 [1<=g<=1000]"};
  for (long g = 1; g <= 1000; ++g) mod.add(verdict(modferwol_bound(g).chain.result), "g=" + std::to_string(g));
  r.rows.push_back(mod.row());
  Aggregate cong{"5e8 g^2 d^5 <= 1e9 d^7 [1<=d<=1000]"};
  for (long d = 1; d <= 1000; ++d) cong.add(verdict(congruence_bound(d).chain.result), "d=" + std::to_string(d));
  r.rows.push_back(cong.row());

  const heights::BranchSet b = heights::branch_stats(heights::parse_branch_list("0,1,inf"));
  const LogBoundSet lb = mainthm2_bounds({b, 1, 3, 1});
  r.chain(lb.chain, "B={0,1,inf}");
  r.value("log h_fal bound, B={0,1,inf}, deg pi=3, g=1", *lb.h_fal_upper.log_value);

  std::vector<long> degrees;
  for (long d = 2; d <= 1000; ++d) degrees.push_back(d);
  const EdjsExponent e = edjs_exponent(3, Interval(1), degrees);
  r.value("EdJS exponent a for B={0,1,inf}", e.a);
  for (const auto& ab : e.absorption)
    if (ab.d == 2) r.result("13e6 g c_B <= d^(a-5) with g <= N d at d=2", ab.result, ab.lhs_log, ab.rhs_log);
  Aggregate abs_rest{"13e6 g c_B <= d^(a-5) with g <= N d [3<=d<=1000]"};
  for (const auto& ab : e.absorption)
    if (ab.d >= 3) abs_rest.add(verdict(ab.result), "d=" + std::to_string(ab.d));
  r.rows.push_back(abs_rest.row());
}

}  // namespace

// ---------------------------------------------------------------- commands

Report cmd_bound(long g, long d, const Options& opt) {
  if (d < 3) throw InputError("a Belyi cover of X(2) with genus >= 1 has degree >= 3");
  if (g < 1) throw InputError("genus must be at least 1");
  if (g > d) throw InputError("genus cannot exceed the Belyi degree (g <= d)");
  Report r = start("bound", opt);
  r.input("genus", std::to_string(g));
  r.input("belyi_degree", std::to_string(d));
  r.input("cusps", "3d (worst case)");
  rigor::PrecisionGuard guard(opt.cfg.working_bits);

  const merkl::GreenBound green = merkl::green_bound_belyi(d, g);
  r.chain(merkl::belyi_atlas(d, g, 3 * d).checks, "atlas");
  r.result("Green bound <= 6378027 d^5/g", green.result, green.value, green.constant);
  const merkl::WronskianBound wr = merkl::wronskian_bound(d, g);
  r.chain(wr.chain, "Wronskian");
  const heights::PointHeightBound nw = heights::nonweierstrass_height_bound(d, g, opt.cfg);
  r.chain(nw.chain, "height");
  const invariants::MainTheorem m = invariants::compose_mainthm(d, g, opt.cfg);
  r.chain(m.chain, "bounds");
  r.exact("composed h_fal upper bound", m.h_fal_exact.get_str(), *m.composed.h_fal.upper);
  r.value("composed e upper bound", *m.composed.e.upper);
  r.value("composed disc upper bound", *m.composed.disc.upper);
  r.value("composed delta upper bound", *m.composed.delta.upper);
  r.value("composed delta lower bound", m.composed.delta.lower);
  r.value("h_fal lower bound -g log 2pi", m.composed.h_fal.lower);
  return r;
}

Report cmd_bound_triple(const std::filesystem::path& file, const Options& opt) {
  dessins::CoverSummary s;
  try {
    s = dessins::validate_triple(dessins::load_triple(file));
  } catch (const dessins::TripleError& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  if (s.g < 1) throw InputError("the cover has genus 0; the bounds need g >= 1");
  Report r = cmd_bound(s.g, s.d, opt);
  r.inputs.clear();
  r.input("triple", file.filename().string());
  r.input("belyi_degree", std::to_string(s.d));
  r.input("genus", std::to_string(s.g));
  r.input("cusps", std::to_string(s.n));
  rigor::PrecisionGuard guard(opt.cfg.working_bits);
  const merkl::GreenBound green = merkl::green_bound_belyi(s.d, s.g, s.n);
  r.value("Green bound with the actual cusp count and r1", green.actual_n_value,
          "n = " + std::to_string(s.n) + " instead of 3d = " + std::to_string(3 * s.d));
  r.result("g <= d", dessins::check_genus_le_degree(s));
  return r;
}

Report cmd_verify(const std::string& suite, const Options& opt) {
  static const std::vector<std::string> order = {"lambda", "appendix", "merkl", "theta", "pipeline", "applications"};
  if (suite != "all" && std::find(order.begin(), order.end(), suite) == order.end())
    throw InputError("unknown suite '" + suite + "'");
  Report r = start("verify " + suite, opt);
  r.input("suite", suite);
  r.input("dmax", std::to_string(opt.dmax));
  r.input("gmax", opt.gmax > 0 ? std::to_string(opt.gmax) : "d");
  for (const auto& name : order) {
    if (suite != "all" && suite != name) continue;
    Report part = start(name, opt);
    if (name == "lambda") suite_lambda(part, opt);
    if (name == "appendix") suite_appendix(part, opt);
    if (name == "merkl") suite_merkl(part, opt);
    if (name == "theta") suite_theta(part, opt);
    if (name == "pipeline") suite_pipeline(part, opt);
    if (name == "applications") suite_applications(part, opt);
    for (auto& row : part.rows) {
      if (suite == "all") row.name = name + " / " + row.name;
      r.rows.push_back(std::move(row));
    }
  }
  return r;
}

Report cmd_modular(const ModularArgs& args, const Options& opt) {
  using namespace applications;
  if (!args.x1 && !args.congruence_index && !args.genus)
    throw InputError("modular needs --x1, --congruence-index or --genus");
  Report r = start("modular", opt);
  rigor::PrecisionGuard guard(opt.cfg.working_bits);
  if (args.x1) {
    const long n = *args.x1;
    if (n < 1) throw InputError("--x1 must be positive");
    r.input("x1", std::to_string(n));
    r.exact("[SL2(Z):Gamma1(n)]", gamma1_index(n).get_str(), Interval::from(gamma1_index(n)));
    const ExactBound b = x1_discriminant_bound(n);
    r.chain(b.chain, "X1(" + std::to_string(n) + ")");
    r.exact("disc(X1(n)) <= 5e8 n^14", b.value.get_str(), b.enclosure);
  }
  if (args.congruence_index) {
    const long d = *args.congruence_index;
    if (d < 1) throw InputError("--congruence-index must be positive");
    r.input("congruence_index", std::to_string(d));
    const ExactBound b = congruence_bound(d);
    r.chain(b.chain, "index " + std::to_string(d));
    r.exact("max(h_fal, e, disc, |delta|) <= 1e9 d^7", b.value.get_str(), b.enclosure);
  }
  if (args.genus) {
    const long g = *args.genus;
    if (g < 1) throw InputError("--genus must be positive");
    r.input("genus", std::to_string(g));
    r.exact("Belyi degree bound, modular", belyi_degree_bound(CurveClass::modular(), g).get_str());
    if (g >= 2) r.exact("Belyi degree bound, Galois Belyi", belyi_degree_bound(CurveClass::galois_belyi(), g).get_str());
    const ExactBound b = modferwol_bound(g);
    r.chain(b.chain, "genus " + std::to_string(g));
    r.exact("max(h_fal, e, disc, |delta|) <= 2e19 g^2 (g+1)^5", b.value.get_str(), b.enclosure);
  }
  return r;
}

namespace {

heights::BranchSet branch_from(const std::string& list, std::optional<long> N, std::optional<std::string> H) {
  try {
    if (N || H) {
      if (!N || !H) throw InputError("--orbit-size and --height must be given together");
      return heights::branch_override(*N, Interval::decimal(*H));
    }
    return heights::branch_stats(heights::parse_branch_list(list));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("bad branch set: ") + e.what());
  }
}

void branch_rows(Report& r, const heights::BranchSet& b) {
  r.exact("N", std::to_string(b.N));
  if (b.H_B_exact)
    r.exact("H_B", b.H_B_exact->get_str(), b.H_B);
  else
    r.value("H_B", b.H_B);
  const mpq_class e45 = heights::khadjavi_exponent(b.N);
  r.exact("45 N^3 2^(N-2) N!", e45.get_str(), Interval::from(e45));
  const mpq_class e9 = heights::khadjavi_degree_exponent(b.N);
  r.exact("9 N^3 2^(N-2) N!", e9.get_str(), Interval::from(e9));
  r.value("log c_B", heights::log_khadjavi(b.N, b.H_B));
}

}  // namespace

Report cmd_cover(const CoverArgs& a, const Options& opt) {
  if (a.deg_f < 1 || a.deg_pi < 1 || a.genus < 1) throw InputError("degrees and genus must be positive");
  rigor::PrecisionGuard guard(opt.cfg.working_bits);
  const heights::BranchSet b = branch_from(a.branch, a.override_N, a.override_H);
  Report r = start("cover", opt);
  r.input("branch", a.branch);
  r.input("deg_f", std::to_string(a.deg_f));
  r.input("deg_pi", std::to_string(a.deg_pi));
  r.input("genus", std::to_string(a.genus));
  branch_rows(r, b);
  const applications::LogBoundSet lb = applications::mainthm2_bounds({b, a.deg_f, a.deg_pi, a.genus});
  r.chain(lb.chain, "Khadjavi");
  r.value("h_fal lower bound -g log 2pi", lb.h_fal_lower);
  r.value("log of h_fal upper bound", *lb.h_fal_upper.log_value);
  if (lb.e_upper.is_zero())
    r.exact("e upper bound", "0");
  else
    r.value("log of e upper bound", *lb.e_upper.log_value);
  r.value("log of disc upper bound", *lb.disc_upper.log_value);
  r.value("log of delta upper bound", *lb.delta_upper.log_value);
  r.value("log of |delta lower bound|", *lb.delta_lower_abs.log_value);
  return r;
}

Report cmd_khadjavi(const std::string& branch, const Options& opt) {
  rigor::PrecisionGuard guard(opt.cfg.working_bits);
  const heights::BranchSet b = branch_from(branch, std::nullopt, std::nullopt);
  Report r = start("khadjavi", opt);
  r.input("branch", branch);
  branch_rows(r, b);
  r.value("EdJS exponent a = 6 + log(13e6 N c_B)", applications::edjs_exponent(b.N, b.H_B).a);
  return r;
}

// ---------------------------------------------------------------- entry point

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit bounds for Arakelov invariants of Belyi curves, certified with interval arithmetic"};
  app.require_subcommand(1);

  bool json = false, timing = false;
  std::optional<long> precision;
  std::optional<int> depth;
  unsigned threads = 0;
  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", json, "emit a JSON report");
    sub->add_flag("--timing", timing, "include wall time (makes output non-reproducible)");
    sub->add_option("--precision", precision, "working precision in bits");
    sub->add_option("--depth", depth, "maximum bisection depth");
    sub->add_option("--threads", threads, "worker threads for sweeps (0 = all cores)");
  };

  std::optional<long> g, d;
  std::string triple;
  auto* bound = app.add_subcommand("bound", "headline bounds for a Belyi curve");
  bound->add_option("--genus", g, "genus g >= 1");
  bound->add_option("--belyi-degree", d, "Belyi degree d >= 3");
  bound->add_option("--triple", triple, "permutation triple file");
  common(bound);

  std::string suite = "all";
  long dmax = 64, gmax = 0;
  auto* verify = app.add_subcommand("verify", "run a certification suite");
  verify->add_option("suite", suite, "all, merkl, appendix, lambda, theta, pipeline or applications");
  verify->add_option("--dmax", dmax, "largest degree in sweeps");
  verify->add_option("--gmax", gmax, "largest genus in sweeps (0 = up to d)");
  common(verify);

  ModularArgs margs;
  auto* modular = app.add_subcommand("modular", "bounds for modular curves");
  modular->add_option("--x1", margs.x1, "level n of X1(n)");
  modular->add_option("--congruence-index", margs.congruence_index, "index of a subgroup of SL2(Z)");
  modular->add_option("--genus", margs.genus, "genus of a modular or Galois Belyi curve");
  common(modular);

  CoverArgs cargs;
  auto* cover = app.add_subcommand("cover", "bounds for covers with a fixed branch locus");
  cover->add_option("--branch", cargs.branch, "comma separated rationals and inf")->required();
  cover->add_option("--deg-f", cargs.deg_f, "degree of f");
  cover->add_option("--deg-pi", cargs.deg_pi, "degree of pi");
  cover->add_option("--genus", cargs.genus, "genus of the cover");
  cover->add_option("--orbit-size", cargs.override_N, "override N for a non-rational branch set");
  cover->add_option("--height", cargs.override_H, "override H_B (decimal) for a non-rational branch set");
  common(cover);

  std::string kbranch;
  auto* khad = app.add_subcommand("khadjavi", "Khadjavi's constant for a branch set");
  khad->add_option("--branch", kbranch, "comma separated rationals and inf")->required();
  common(khad);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    Options opt;
    try {
      opt.cfg = rigor::PrecisionConfig::from_env();
    } catch (const std::exception& e) {
      throw InputError(std::string("bad environment setting: ") + e.what());
    }
    if (precision) opt.cfg.working_bits = *precision;
    if (depth) opt.cfg.max_depth = *depth;
    try {
      opt.cfg.validate();
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    opt.threads = threads;
    opt.dmax = dmax;
    opt.gmax = gmax;
    if (gmax < 0) throw InputError("--gmax must be non-negative");

    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    if (*bound) {
      if (!triple.empty()) {
        if (g || d) throw InputError("give either --triple or --genus/--belyi-degree");
        rep = cmd_bound_triple(triple, opt);
      } else {
        if (!g || !d) throw InputError("bound needs --genus and --belyi-degree, or --triple");
        rep = cmd_bound(*g, *d, opt);
      }
    } else if (*verify) {
      rep = cmd_verify(suite, opt);
    } else if (*modular) {
      rep = cmd_modular(margs, opt);
    } else if (*cover) {
      rep = cmd_cover(cargs, opt);
    } else if (*khad) {
      rep = cmd_khadjavi(kbranch, opt);
    }
    if (timing)
      rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out << (json ? render_json(rep) : render_text(rep));
    return exit_code(rep);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const rigor::DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace arakelov::cli
