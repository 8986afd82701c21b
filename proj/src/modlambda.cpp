#include "arakelov/modlambda.hpp"

#include "arakelov/rigor/elementary.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace arakelov::modlambda {

using rigor::Box;
using rigor::CertResult;
using rigor::Verdict;

ImaginaryTau ImaginaryTau::from_y(const Interval& y) {
  if (mpfr_sgn(y.lo()) <= 0) throw rigor::DomainError("tau = iy needs y > 0");
  return {y, rigor::exp(-(rigor::pi() * y))};
}

namespace {

Interval upper_part(const Interval& x) { return Interval::hull(Interval(0), Interval::point(x.hi())); }

// tail.hi <= 2^-bits * sum.lo
bool negligible(const Interval& tail, const Interval& sum, long bits) {
  const Interval scaled = rigor::scale2(sum, -bits);
  return mpfr_cmp(tail.hi(), scaled.lo()) <= 0;
}

// Geometric remainder first/(1 - ratio); throws when ratio does not dominate.
Interval geometric_tail(const Interval& first, const Interval& ratio) {
  if (!rigor::certainly_lt(ratio, Interval(1)))
    throw TruncationError("theta tail ratio not below 1; increase the truncation");
  return upper_part(first / (Interval(1) - ratio));
}

}  // namespace

ThetaSums theta_sums(const Interval& q, const ThetaSeriesConfig& cfg) {
  if (mpfr_sgn(q.lo()) <= 0 || !rigor::certainly_lt(q, Interval(1)))
    throw rigor::DomainError("theta series need 0 < q < 1");
  if (cfg.truncation < 0) throw std::invalid_argument("negative truncation");
  const long bits = static_cast<long>(rigor::working_precision()) + 8;

  Interval A(1), B(1), qdA(0), qdB(0);
  Interval sq = q;                   // q^{n^2}
  Interval rect = rigor::sqr(q);     // q^{n(n+1)}
  Interval odd = q;                  // q^{2n-1}
  Interval even = rigor::sqr(q);     // q^{2n}

  for (long n = 1;; ++n) {
    if (n > 1) {
      odd = even * q;
      even = odd * q;
      sq *= odd;
      rect *= even;
    }
    B += rigor::scale2(sq, 1);
    qdB += rigor::scale2(Interval(n * n) * sq, 1);
    A += rect;
    qdA += Interval(n * (n + 1)) * rect;

    const long N = n;
    const bool fixed = cfg.truncation > 0;
    if (fixed && N < cfg.truncation) continue;
    if (!fixed && N > cfg.max_truncation) throw TruncationError("theta series need more than max_truncation terms");

    // Remainders beyond n = N.
    const Interval q2N1 = even * q;            // q^{2N+1}
    const Interval q2N3 = q2N1 * rigor::sqr(q);  // q^{2N+3}
    const Interval q2N4 = q2N3 * q;            // q^{2N+4}
    const Interval sq_next = sq * q2N1;        // q^{(N+1)^2}
    const Interval rect_next = rect * even * rigor::sqr(q);  // q^{(N+1)(N+2)}
    Interval tB, tdB, tA, tdA;
    try {
      tB = rigor::scale2(geometric_tail(sq_next, q2N3), 1);
      tdB = rigor::scale2(geometric_tail(Interval((N + 1) * (N + 1)) * sq_next,
                                         rigor::sqr(Interval::ratio(N + 2, N + 1)) * q2N3),
                          1);
      tA = geometric_tail(rect_next, q2N4);
      tdA = geometric_tail(Interval((N + 1) * (N + 2)) * rect_next, Interval::ratio(N + 3, N + 1) * q2N4);
    } catch (const TruncationError&) {
      if (fixed) throw;
      continue;
    }

    if (!fixed && !(negligible(tB, B, bits) && negligible(tdB, qdB, bits) && negligible(tA, A, bits) &&
                    negligible(tdA, qdA, bits)))
      continue;
    if (fixed) {
      for (auto [t, s] : {std::pair{&tB, &B}, {&tdB, &qdB}, {&tA, &A}, {&tdA, &qdA}}) {
        if (!negligible(*t, *s, 0) || t->upper() > cfg.max_relative_tail * s->lower())
          throw TruncationError("theta tail at N=" + std::to_string(N) + " does not meet the relative tolerance");
      }
    }

    ThetaSums out;
    out.N = static_cast<int>(N);
    out.A = A + tA;
    out.B = B + tB;
    out.qdA = qdA + tdA;
    out.qdB = qdB + tdB;
    out.tail_bound = rigor::max(rigor::max(tA, tB), rigor::max(tdA, tdB));
    return out;
  }
}

Interval agm(const Interval& a, const Interval& b) {
  if (mpfr_sgn(a.lo()) <= 0 || mpfr_sgn(b.lo()) <= 0) throw rigor::DomainError("agm needs positive arguments");
  const double target = std::ldexp(1.0, -static_cast<int>(rigor::working_precision()) + 8);
  Interval x = a, y = b;
  double width = Interval::hull(x, y).width();
  for (int iter = 0; iter < 256; ++iter) {
    const Interval h = Interval::hull(x, y);
    if (h.relative_width() < target) break;
    Interval nx = rigor::scale2(x + y, -1);
    Interval ny = rigor::sqrt(x * y);
    const double w = Interval::hull(nx, ny).width();
    x = std::move(nx);
    y = std::move(ny);
    if (iter > 4 && w >= width) break;  // input width dominates; no further progress
    width = w;
  }
  // The limit lies between the two means at every step.
  return Interval::hull(x, y);
}

Interval lambda_inverse(const mpq_class& alpha) {
  if (alpha <= 0 || alpha >= 1) throw rigor::DomainError("lambda_inverse needs 0 < alpha < 1");
  const Interval a = Interval::from(alpha);
  const Interval b = Interval::from(mpq_class(1 - alpha));
  return agm(Interval(1), rigor::sqrt(b)) / agm(Interval(1), rigor::sqrt(a));
}

namespace {

bool below_half(const Interval& y) { return mpfr_cmp_d(y.hi(), 0.5) < 0; }

}  // namespace

Interval lambda_eval(const ImaginaryTau& t, const ThetaSeriesConfig& cfg) {
  if (mpfr_sgn(t.y.lo()) <= 0) throw rigor::DomainError("tau = iy needs y > 0");
  if (below_half(t.y)) {
    // lambda(i/y) = 1 - lambda(iy)
    return Interval(1) - lambda_eval(ImaginaryTau::from_y(Interval(1) / t.y), cfg);
  }
  const ThetaSums s = theta_sums(t.q, cfg);
  return Interval(16) * t.q * rigor::pow(s.A / s.B, 4);
}

Interval q_dlambda_dq(const ImaginaryTau& t, const ThetaSeriesConfig& cfg) {
  if (mpfr_sgn(t.y.lo()) <= 0) throw rigor::DomainError("tau = iy needs y > 0");
  if (below_half(t.y)) {
    // D(y) = D(1/y) / y^2, from the same symmetry.
    const Interval inv = Interval(1) / t.y;
    return q_dlambda_dq(ImaginaryTau::from_y(inv), cfg) * rigor::sqr(inv);
  }
  const ThetaSums s = theta_sums(t.q, cfg);
  const Interval lam = Interval(16) * t.q * rigor::pow(s.A / s.B, 4);
  const Interval log_deriv = Interval(1) + Interval(4) * (s.qdA / s.A) - Interval(4) * (s.qdB / s.B);
  return lam * log_deriv;
}

CertResult certify_clambda(const rigor::PrecisionConfig& cfg, const ClambdaQuery& query) {
  if (rigor::certainly_gt(query.y_lo, query.y_hi)) throw std::invalid_argument("empty y range");
  const Box box{{"y", Interval::hull(query.y_lo, query.y_hi)}};
  const Interval threshold = query.threshold;
  auto pred = [&](const Box& b) {
    const Interval d = rigor::abs(q_dlambda_dq(ImaginaryTau::from_y(b.at("y"))));
    if (rigor::certainly_ge(d, threshold)) return Verdict::True;
    if (rigor::certainly_lt(d, threshold)) return Verdict::False;
    return Verdict::Unknown;
  };
  return rigor::certify_predicate(pred, box, cfg);
}

}  // namespace arakelov::modlambda
