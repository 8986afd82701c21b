#pragma once

// Reports produced by the command-line tool: a list of named rows, each a
// certification verdict or a plain value, rendered as text or JSON.

#include "arakelov/rigor/certify.hpp"
#include "arakelov/rigor/interval.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arakelov::cli {

using rigor::Interval;

enum class RowStatus { Certified, Refuted, Undecided, Value };
std::string_view to_string(RowStatus s);
RowStatus row_status(rigor::Status s);

struct Row {
  std::string name;
  RowStatus status = RowStatus::Value;
  std::optional<Interval> value;
  std::optional<Interval> constant;
  std::optional<std::string> exact;  // exact integer or rational value
  std::string detail;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Row> rows;
  long precision_bits = 0;
  int max_depth = 0;
  std::optional<double> wall_ms;  // only with --timing, so default output stays reproducible

  void input(std::string key, std::string value) { inputs.emplace_back(std::move(key), std::move(value)); }
  void value(std::string name, const Interval& v, std::string detail = {});
  void exact(std::string name, std::string text, std::optional<Interval> v = std::nullopt);
  void check(const rigor::Check& c, const std::string& prefix = {});
  void result(std::string name, const rigor::CertResult& r, std::optional<Interval> v = std::nullopt,
              std::optional<Interval> constant = std::nullopt);
  void chain(const rigor::ChainResult& c, const std::string& prefix = {});
};

/// Decimal endpoints at 30 significant digits, lo rounded down and hi up.
nlohmann::ordered_json interval_json(const Interval& x);
/// (constant - value)/|constant| using the pessimistic endpoints; absent when constant is 0.
std::optional<double> relative_slack(const Interval& value, const Interval& constant);
std::string slack_string(double s);

nlohmann::ordered_json to_json(const Report& r);
std::string render_json(const Report& r);
std::string render_text(const Report& r);

/// 0 when every row is Certified or a Value, 1 on any Refuted, 2 on any Undecided.
int exit_code(const Report& r);

}  // namespace arakelov::cli
