#include "arakelov/rigor/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace arakelov::rigor {

void PrecisionConfig::validate() const {
  if (working_bits < 53) throw std::invalid_argument("working precision must be at least 53 bits");
  if (max_depth < 1) throw std::invalid_argument("max depth must be at least 1");
  if (!(min_box_width > 0)) throw std::invalid_argument("min box width must be positive");
  if (max_boxes < 1) throw std::invalid_argument("max boxes must be at least 1");
}

PrecisionConfig PrecisionConfig::from_env() {
  PrecisionConfig cfg;
  if (const char* bits = std::getenv("ARAKELOV_PRECISION_BITS"); bits && *bits)
    cfg.working_bits = std::stol(bits);
  if (const char* depth = std::getenv("ARAKELOV_MAX_DEPTH"); depth && *depth)
    cfg.max_depth = std::stoi(depth);
  cfg.validate();
  return cfg;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Certified: return "Certified";
    case Status::Refuted: return "Refuted";
    case Status::Undecided: return "Undecided";
  }
  return "?";
}

CertResult certified_result(int depth, std::size_t boxes) {
  CertResult r;
  r.status = Status::Certified;
  r.depth_used = depth;
  r.boxes = boxes;
  return r;
}

CertResult refuted_result(Box witness, std::string detail) {
  CertResult r;
  r.status = Status::Refuted;
  r.witness = std::move(witness);
  r.boxes = 1;
  r.detail = std::move(detail);
  return r;
}

CertResult undecided_result(Box witness, std::string detail) {
  CertResult r;
  r.status = Status::Undecided;
  r.witness = std::move(witness);
  r.boxes = 1;
  r.detail = std::move(detail);
  return r;
}

CertResult from_bool(bool holds, std::string detail) {
  return holds ? certified_result() : refuted_result({}, std::move(detail));
}

CertResult check_le(const Interval& a, const Interval& b) {
  if (certainly_le(a, b)) return certified_result();
  if (certainly_gt(a, b)) return refuted_result({}, "lhs " + to_string(a, 12) + " > rhs " + to_string(b, 12));
  return undecided_result({}, "enclosures overlap: " + to_string(a, 12) + " vs " + to_string(b, 12));
}

CertResult check_lt(const Interval& a, const Interval& b) {
  if (certainly_lt(a, b)) return certified_result();
  if (certainly_ge(a, b)) return refuted_result({}, "lhs " + to_string(a, 12) + " >= rhs " + to_string(b, 12));
  return undecided_result({}, "enclosures overlap: " + to_string(a, 12) + " vs " + to_string(b, 12));
}

CertResult conjoin(const std::vector<CertResult>& parts) {
  CertResult out = certified_result(0, 0);
  const CertResult* worst = nullptr;
  for (const auto& p : parts) {
    out.depth_used = std::max(out.depth_used, p.depth_used);
    out.boxes += p.boxes;
    if (p.status == Status::Certified) continue;
    if (!worst || (p.status == Status::Refuted && worst->status != Status::Refuted)) worst = &p;
  }
  if (worst) {
    out.status = worst->status;
    out.witness = worst->witness;
    out.detail = worst->detail;
  }
  return out;
}

CertResult overall(const std::vector<Check>& checks) {
  std::vector<CertResult> parts;
  parts.reserve(checks.size());
  for (const auto& c : checks) {
    parts.push_back(c.result);
    if (!c.result.certified() && parts.back().detail.empty()) parts.back().detail = c.name;
  }
  return conjoin(parts);
}

Check le_check(std::string name, const Interval& value, const Interval& bound) {
  return {std::move(name), check_le(value, bound), value, bound};
}

Check exact_check(std::string name, bool holds, const Interval& value, const Interval& bound) {
  return {std::move(name), from_bool(holds), value, bound};
}

ChainResult make_chain(std::vector<Check> checks) {
  ChainResult out;
  out.result = overall(checks);
  out.checks = std::move(checks);
  return out;
}

namespace {

Verdict safe_call(const BoxPredicate& pred, const Box& box) {
  try {
    return pred(box);
  } catch (const DomainError&) {
    return Verdict::Unknown;
  }
}

}  // namespace

CertResult certify_predicate(const BoxPredicate& pred, const Box& box, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionGuard guard(cfg.working_bits);

  // Widths of the root box normalize the split choice.
  std::vector<double> scale;
  for (const auto& [name, iv] : box) scale.push_back(iv.width());

  struct Item {
    Box box;
    int depth;
  };
  std::vector<Item> stack;
  stack.push_back({box, 0});

  CertResult result = certified_result(0, 0);
  std::optional<CertResult> first_undecided;

  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    ++result.boxes;
    result.depth_used = std::max(result.depth_used, item.depth);

    const Verdict v = safe_call(pred, item.box);
    if (v == Verdict::True) continue;
    if (v == Verdict::False) {
      CertResult r = refuted_result(item.box, "claim false on witness box");
      r.depth_used = result.depth_used;
      r.boxes = result.boxes;
      return r;
    }

    // Pick the widest normalized dimension that can still be split.
    std::size_t best = 0;
    double best_score = -1;
    double best_width = 0;
    std::size_t i = 0;
    for (const auto& [name, iv] : item.box) {
      const double w = iv.width();
      if (w > 0 && scale[i] > 0) {
        const double score = w / scale[i];
        if (score > best_score) {
          best_score = score;
          best = i;
          best_width = w;
        }
      }
      ++i;
    }

    const char* stop = nullptr;
    if (best_score < 0) stop = "undecided on a degenerate box";
    else if (item.depth >= cfg.max_depth) stop = "depth cap reached";
    else if (best_width < cfg.min_box_width) stop = "minimum box width reached";
    else if (result.boxes + stack.size() >= cfg.max_boxes) stop = "box budget exhausted";
    if (stop) {
      if (!first_undecided) first_undecided = undecided_result(item.box, stop);
      if (result.boxes + stack.size() >= cfg.max_boxes) break;
      continue;
    }

    auto it = std::next(item.box.begin(), static_cast<long>(best));
    const std::string name = it->first;
    auto [left, right] = it->second.bisect();
    Box lbox = item.box;
    Box rbox = std::move(item.box);
    lbox.at(name) = std::move(left);
    rbox.at(name) = std::move(right);
    stack.push_back({std::move(rbox), item.depth + 1});
    stack.push_back({std::move(lbox), item.depth + 1});
  }

  if (first_undecided) {
    first_undecided->depth_used = result.depth_used;
    first_undecided->boxes = result.boxes;
    return *first_undecided;
  }
  return result;
}

namespace {

bool decided_true(const Interval& g, bool strict) {
  return strict ? mpfr_sgn(g.lo()) > 0 : mpfr_sgn(g.lo()) >= 0;
}

bool decided_false(const Interval& g, bool strict) {
  return strict ? mpfr_sgn(g.hi()) <= 0 : mpfr_sgn(g.hi()) < 0;
}

}  // namespace

CertResult certify_on_box(const Claim& claim, const Box& box, const PrecisionConfig& cfg) {
  const Expr gap = claim.gap();
  const bool strict = claim.strict();
  auto pred = [&](const Box& b) {
    const Interval g = gap.eval(b);
    if (decided_true(g, strict)) return Verdict::True;
    if (decided_false(g, strict)) return Verdict::False;

    Dual d;
    try {
      d = gap.eval_dual(b);
    } catch (const DomainError&) {
      return Verdict::Unknown;
    }
    // Sign-definite partials: the minimum of the gap sits on one face and
    // the maximum on the opposite one.
    Box worst = b, best = b;
    bool reduced = false;
    std::size_t i = 0;
    for (const auto& [name, iv] : b) {
      const Interval& gi = d.grad[i++];
      if (iv.is_point()) continue;
      const Interval lo = Interval::point(iv.lo());
      const Interval hi = Interval::point(iv.hi());
      if (mpfr_sgn(gi.lo()) >= 0) {
        worst.at(name) = lo;
        best.at(name) = hi;
        reduced = true;
      } else if (mpfr_sgn(gi.hi()) <= 0) {
        worst.at(name) = hi;
        best.at(name) = lo;
        reduced = true;
      }
    }
    if (!reduced) return Verdict::Unknown;
    if (decided_true(gap.eval(worst), strict)) return Verdict::True;
    if (decided_false(gap.eval(best), strict)) return Verdict::False;
    return Verdict::Unknown;
  };
  return certify_predicate(pred, box, cfg);
}

}  // namespace arakelov::rigor
