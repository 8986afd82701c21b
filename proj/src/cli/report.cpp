#include "arakelov/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace arakelov::cli {

std::string_view to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Certified: return "Certified";
    case RowStatus::Refuted: return "Refuted";
    case RowStatus::Undecided: return "Undecided";
    case RowStatus::Value: return "Value";
  }
  return "?";
}

RowStatus row_status(rigor::Status s) {
  switch (s) {
    case rigor::Status::Certified: return RowStatus::Certified;
    case rigor::Status::Refuted: return RowStatus::Refuted;
    case rigor::Status::Undecided: return RowStatus::Undecided;
  }
  return RowStatus::Undecided;
}

namespace {

std::string witness_string(const rigor::Box& b) {
  std::string s;
  for (const auto& [name, iv] : b) {
    if (!s.empty()) s += ", ";
    s += name + " in " + rigor::to_string(iv, 12);
  }
  return s;
}

std::string describe(const rigor::CertResult& r) {
  std::string s = r.detail;
  if (r.witness && !r.witness->empty()) {
    if (!s.empty()) s += "; ";
    s += "witness " + witness_string(*r.witness);
  }
  return s;
}

}  // namespace

void Report::value(std::string name, const Interval& v, std::string detail) {
  Row row;
  row.name = std::move(name);
  row.value = v;
  row.detail = std::move(detail);
  rows.push_back(std::move(row));
}

void Report::exact(std::string name, std::string text, std::optional<Interval> v) {
  Row row;
  row.name = std::move(name);
  row.exact = std::move(text);
  row.value = std::move(v);
  rows.push_back(std::move(row));
}

void Report::check(const rigor::Check& c, const std::string& prefix) {
  Row row;
  row.name = prefix.empty() ? c.name : prefix + ": " + c.name;
  row.status = row_status(c.result.status);
  row.value = c.value;
  row.constant = c.bound;
  row.detail = describe(c.result);
  rows.push_back(std::move(row));
}

void Report::result(std::string name, const rigor::CertResult& r, std::optional<Interval> v,
                    std::optional<Interval> constant) {
  Row row;
  row.name = std::move(name);
  row.status = row_status(r.status);
  row.value = std::move(v);
  row.constant = std::move(constant);
  row.detail = describe(r);
  rows.push_back(std::move(row));
}

void Report::chain(const rigor::ChainResult& c, const std::string& prefix) {
  for (const auto& step : c.checks) check(step, prefix);
}

nlohmann::ordered_json interval_json(const Interval& x) {
  nlohmann::ordered_json j;
  j["lo"] = rigor::decimal_string(x.lo(), 30, MPFR_RNDD);
  j["hi"] = rigor::decimal_string(x.hi(), 30, MPFR_RNDU);
  return j;
}

std::optional<double> relative_slack(const Interval& value, const Interval& constant) {
  if (mpfr_zero_p(constant.lo()) && mpfr_zero_p(constant.hi())) return std::nullopt;
  const Interval gap = constant - value;
  const double num = mpfr_get_d(gap.lo(), MPFR_RNDD);
  const double den = std::max(std::fabs(mpfr_get_d(constant.lo(), MPFR_RNDN)), std::fabs(mpfr_get_d(constant.hi(), MPFR_RNDN)));
  if (den == 0 || !std::isfinite(num) || !std::isfinite(den)) return std::nullopt;
  return num / den;
}

std::string slack_string(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", s + 0.0);
  return buf;
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  nlohmann::ordered_json in = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.inputs) in[k] = v;
  j["inputs"] = in;
  j["precision_bits"] = r.precision_bits;
  j["max_depth"] = r.max_depth;
  nlohmann::ordered_json claims = nlohmann::ordered_json::array();
  for (const Row& row : r.rows) {
    nlohmann::ordered_json c;
    c["name"] = row.name;
    c["status"] = std::string(to_string(row.status));
    c["value"] = row.value ? interval_json(*row.value) : nlohmann::ordered_json(nullptr);
    c["constant"] = row.constant ? interval_json(*row.constant) : nlohmann::ordered_json(nullptr);
    c["exact"] = row.exact ? nlohmann::ordered_json(*row.exact) : nlohmann::ordered_json(nullptr);
    std::optional<double> s;
    if (row.value && row.constant) s = relative_slack(*row.value, *row.constant);
    c["slack"] = s ? nlohmann::ordered_json(slack_string(*s)) : nlohmann::ordered_json(nullptr);
    c["detail"] = row.detail;
    claims.push_back(std::move(c));
  }
  j["claims"] = std::move(claims);
  int counts[4] = {0, 0, 0, 0};
  for (const Row& row : r.rows) ++counts[static_cast<int>(row.status)];
  nlohmann::ordered_json summary;
  summary["certified"] = counts[0];
  summary["refuted"] = counts[1];
  summary["undecided"] = counts[2];
  summary["values"] = counts[3];
  summary["exit_code"] = exit_code(r);
  j["summary"] = summary;
  j["wall_ms"] = r.wall_ms ? nlohmann::ordered_json(*r.wall_ms) : nlohmann::ordered_json(nullptr);
  return j;
}

std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << r.command << "\n";
  for (const auto& [k, v] : r.inputs) os << "  " << k << " = " << v << "\n";
  os << "  precision " << r.precision_bits << " bits, max depth " << r.max_depth << "\n\n";

  std::size_t width = 4;
  for (const Row& row : r.rows) width = std::max(width, row.name.size());
  width = std::min<std::size_t>(width, 72);

  char line[64];
  std::snprintf(line, sizeof line, "%-10s  ", "status");
  os << line << std::string("claim").append(width - 5, ' ') << "  " << "value" << std::string(13, ' ')
     << "constant" << std::string(10, ' ') << "slack\n";
  for (const Row& row : r.rows) {
    std::snprintf(line, sizeof line, "%-10s  ", std::string(to_string(row.status)).c_str());
    os << line << row.name;
    if (row.name.size() < width) os << std::string(width - row.name.size(), ' ');
    std::string val = row.exact ? *row.exact : (row.value ? rigor::short_string(*row.value, 10) : "-");
    std::string cst = row.constant ? rigor::short_string(*row.constant, 10) : "-";
    std::string slk = "-";
    if (row.value && row.constant)
      if (auto s = relative_slack(*row.value, *row.constant)) {
        std::snprintf(line, sizeof line, "%.3g%%", 100 * *s + 0.0);
        slk = line;
      }
    os << "  " << val;
    if (val.size() < 16) os << std::string(16 - val.size(), ' ');
    os << "  " << cst;
    if (cst.size() < 16) os << std::string(16 - cst.size(), ' ');
    os << "  " << slk << "\n";
    if (!row.detail.empty()) os << std::string(12, ' ') << row.detail << "\n";
  }
  int counts[4] = {0, 0, 0, 0};
  for (const Row& row : r.rows) ++counts[static_cast<int>(row.status)];
  os << "\n" << counts[0] << " certified, " << counts[1] << " refuted, " << counts[2] << " undecided, " << counts[3]
     << " values\n";
  if (r.wall_ms) {
    std::snprintf(line, sizeof line, "wall time %.1f ms\n", *r.wall_ms);
    os << line;
  }
  return os.str();
}

int exit_code(const Report& r) {
  bool undecided = false;
  for (const Row& row : r.rows) {
    if (row.status == RowStatus::Refuted) return 1;
    if (row.status == RowStatus::Undecided) undecided = true;
  }
  return undecided ? 2 : 0;
}

}  // namespace arakelov::cli
