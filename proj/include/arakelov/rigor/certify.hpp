#pragma once

// Branch-and-bound certification of inequalities over boxes.
//
// A box is accepted when interval evaluation decides the claim on it.
// Otherwise a monotonicity test on the gradient enclosure may reduce the
// box to a face; failing that, the widest (normalized) dimension is
// bisected. Sub-boxes are explored depth first, left half first, so the
// verdict and the reported witness are deterministic.

#include "arakelov/rigor/expr.hpp"
#include "arakelov/rigor/interval.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arakelov::rigor {

struct PrecisionConfig {
  mpfr_prec_t working_bits = kDefaultPrecision;
  int max_depth = 40;
  double min_box_width = 1e-30;
  std::size_t max_boxes = 2'000'000;  // safety valve on total work

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  /// Defaults overridden by ARAKELOV_PRECISION_BITS / ARAKELOV_MAX_DEPTH.
  static PrecisionConfig from_env();
};

enum class Status { Certified, Refuted, Undecided };
std::string_view to_string(Status s);

struct CertResult {
  Status status = Status::Undecided;
  std::optional<Box> witness;  // present iff status != Certified
  int depth_used = 0;
  std::size_t boxes = 0;
  std::string detail;

  bool certified() const { return status == Status::Certified; }
  bool refuted() const { return status == Status::Refuted; }
};

CertResult certified_result(int depth = 0, std::size_t boxes = 1);
CertResult refuted_result(Box witness, std::string detail = {});
CertResult undecided_result(Box witness, std::string detail = {});

/// Exact (integer or rational) facts.
CertResult from_bool(bool holds, std::string detail = {});
/// Scalar comparisons: Certified when decided true, Refuted when decided
/// false, Undecided when the enclosures overlap.
CertResult check_le(const Interval& a, const Interval& b);
CertResult check_lt(const Interval& a, const Interval& b);

/// Worst status wins (Refuted over Undecided over Certified).
CertResult conjoin(const std::vector<CertResult>& parts);

enum class Verdict { True, False, Unknown };
/// Decides a property on a whole box, or returns Unknown to request a split.
/// Throwing DomainError counts as Unknown.
using BoxPredicate = std::function<Verdict(const Box&)>;

CertResult certify_predicate(const BoxPredicate& pred, const Box& box, const PrecisionConfig& cfg);
CertResult certify_on_box(const Claim& claim, const Box& box, const PrecisionConfig& cfg);

/// A named certification step, optionally carrying the computed value and
/// the constant it was compared against.
struct Check {
  std::string name;
  CertResult result;
  std::optional<Interval> value;
  std::optional<Interval> bound;
};

/// Check named `name`: value <= bound.
Check le_check(std::string name, const Interval& value, const Interval& bound);
/// Exact fact, reported with its two sides.
Check exact_check(std::string name, bool holds, const Interval& value, const Interval& bound);

CertResult overall(const std::vector<Check>& checks);

/// A sequence of named steps whose conjunction is the verdict.
struct ChainResult {
  CertResult result;
  std::vector<Check> checks;
};

ChainResult make_chain(std::vector<Check> checks);

}  // namespace arakelov::rigor
