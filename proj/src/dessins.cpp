#include "arakelov/dessins.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace arakelov::dessins {

TripleError::TripleError(TripleErrorKind kind, const std::string& what)
    : std::invalid_argument(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

std::string_view to_string(TripleErrorKind kind) {
  switch (kind) {
    case TripleErrorKind::NonIdentityProduct: return "NonIdentityProduct";
    case TripleErrorKind::NotTransitive: return "NotTransitive";
    case TripleErrorKind::NotBijective: return "NotBijective";
    case TripleErrorKind::Malformed: return "Malformed";
  }
  return "?";
}

std::string_view to_string(Fiber f) {
  switch (f) {
    case Fiber::Zero: return "0";
    case Fiber::One: return "1";
    case Fiber::Infinity: return "inf";
  }
  return "?";
}

Permutation Permutation::identity(int d) {
  if (d < 1) throw TripleError(TripleErrorKind::Malformed, "degree must be positive");
  Permutation p;
  p.images_.resize(static_cast<std::size_t>(d));
  std::iota(p.images_.begin(), p.images_.end(), 0);
  return p;
}

Permutation Permutation::from_images(const std::vector<int>& images) {
  const int d = static_cast<int>(images.size());
  if (d < 1) throw TripleError(TripleErrorKind::NotBijective, "empty image list");
  std::vector<bool> seen(images.size(), false);
  Permutation p;
  p.images_.reserve(images.size());
  for (int v : images) {
    if (v < 1 || v > d)
      throw TripleError(TripleErrorKind::NotBijective, "image " + std::to_string(v) + " outside 1.." + std::to_string(d));
    if (seen[static_cast<std::size_t>(v - 1)])
      throw TripleError(TripleErrorKind::NotBijective, "image " + std::to_string(v) + " repeated");
    seen[static_cast<std::size_t>(v - 1)] = true;
    p.images_.push_back(v - 1);
  }
  return p;
}

Permutation Permutation::from_cycles(std::string_view text, int d) {
  Permutation p = identity(d);
  std::string s(text);
  auto trimmed = s;
  trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(), [](unsigned char c) { return std::isspace(c); }),
                trimmed.end());
  if (trimmed.empty() || trimmed == "id" || trimmed == "()") return p;

  std::vector<bool> used(static_cast<std::size_t>(d), false);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip_ws();
  while (i < s.size()) {
    if (s[i] != '(') throw TripleError(TripleErrorKind::Malformed, "expected '(' in cycle notation \"" + s + "\"");
    ++i;
    std::vector<int> cycle;
    for (;;) {
      skip_ws();
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      if (i >= s.size()) throw TripleError(TripleErrorKind::Malformed, "unterminated cycle in \"" + s + "\"");
      if (s[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw TripleError(TripleErrorKind::Malformed, "unexpected character in \"" + s + "\"");
      long v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        if (v > d) break;
        ++i;
      }
      if (v < 1 || v > d)
        throw TripleError(TripleErrorKind::NotBijective, "sheet outside 1.." + std::to_string(d) + " in \"" + s + "\"");
      if (used[static_cast<std::size_t>(v - 1)])
        throw TripleError(TripleErrorKind::NotBijective, "sheet " + std::to_string(v) + " appears twice in \"" + s + "\"");
      used[static_cast<std::size_t>(v - 1)] = true;
      cycle.push_back(static_cast<int>(v) - 1);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      p.images_[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    skip_ws();
  }
  return p;
}

std::vector<int> Permutation::images() const {
  std::vector<int> out;
  out.reserve(images_.size());
  for (int v : images_) out.push_back(v + 1);
  return out;
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.degree() != degree()) throw TripleError(TripleErrorKind::Malformed, "degree mismatch in product");
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    r.images_[i] = next.images_[static_cast<std::size_t>(images_[i])];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return r;
}

Permutation Permutation::relabeled(const Permutation& p) const {
  if (p.degree() != degree()) throw TripleError(TripleErrorKind::Malformed, "degree mismatch in relabeling");
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    r.images_[static_cast<std::size_t>(p.images_[i])] = p.images_[static_cast<std::size_t>(images_[i])];
  return r;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    for (std::size_t j = start; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
      seen[j] = true;
      cycle.push_back(static_cast<int>(j) + 1);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::string Permutation::cycle_string() const {
  std::string out;
  for (const auto& c : cycles()) {
    if (c.size() == 1) continue;
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(c[k]);
    }
    out += ')';
  }
  return out.empty() ? "id" : out;
}

std::vector<int> CoverSummary::partition(Fiber f) const {
  std::vector<int> out;
  for (const auto& c : cusps)
    if (c.fiber == f) out.push_back(c.e);
  std::sort(out.rbegin(), out.rend());
  return out;
}

int CoverSummary::max_ramification() const {
  int m = 0;
  for (const auto& c : cusps) m = std::max(m, c.e);
  return m;
}

namespace {

void check_degrees(const BelyiTriple& t) {
  if (t.d < 1) throw TripleError(TripleErrorKind::Malformed, "degree must be positive");
  const std::array<const Permutation*, 3> perms{&t.s0, &t.s1, &t.sinf};
  const std::array<const char*, 3> names{"s0", "s1", "sinf"};
  for (std::size_t k = 0; k < 3; ++k)
    if (perms[k]->degree() != t.d)
      throw TripleError(TripleErrorKind::NotBijective,
                        std::string(names[k]) + " acts on " + std::to_string(perms[k]->degree()) +
                            " sheets, expected d=" + std::to_string(t.d));
}

int riemann_hurwitz(const BelyiTriple& t) {
  long ramification = 0;
  for (const Permutation* p : {&t.s0, &t.s1, &t.sinf})
    for (const auto& c : p->cycles()) ramification += static_cast<long>(c.size()) - 1;
  if (ramification % 2 != 0) throw std::logic_error("odd total ramification: inconsistent triple");
  return static_cast<int>(1 - t.d + ramification / 2);
}

}  // namespace

CoverSummary validate_triple(const BelyiTriple& t) {
  check_degrees(t);
  if (!t.s0.then(t.s1).then(t.sinf).is_identity())
    throw TripleError(TripleErrorKind::NonIdentityProduct,
                      "applying s0, then s1, then sinf is " + t.s0.then(t.s1).then(t.sinf).cycle_string() +
                          ", not the identity");

  // Orbit of sheet 1 under <s0, s1>.
  std::vector<bool> reached(static_cast<std::size_t>(t.d), false);
  std::vector<int> todo{1};
  reached[0] = true;
  int count = 1;
  while (!todo.empty()) {
    const int i = todo.back();
    todo.pop_back();
    for (const Permutation* p : {&t.s0, &t.s1}) {
      const int j = (*p)(i);
      if (!reached[static_cast<std::size_t>(j - 1)]) {
        reached[static_cast<std::size_t>(j - 1)] = true;
        ++count;
        todo.push_back(j);
      }
    }
  }
  if (count != t.d)
    throw TripleError(TripleErrorKind::NotTransitive,
                      "s0 and s1 generate an intransitive group (orbit of sheet 1 has " + std::to_string(count) +
                          " of " + std::to_string(t.d) + " sheets)");

  CoverSummary s;
  s.d = t.d;
  const std::array<std::pair<Fiber, const Permutation*>, 3> fibers{
      {{Fiber::Zero, &t.s0}, {Fiber::One, &t.s1}, {Fiber::Infinity, &t.sinf}}};
  for (const auto& [fiber, perm] : fibers)
    for (auto& c : perm->cycles()) s.cusps.push_back({fiber, c, static_cast<int>(c.size())});
  s.n = static_cast<int>(s.cusps.size());
  s.g = riemann_hurwitz(t);
  return s;
}

int genus(const BelyiTriple& t) {
  check_degrees(t);
  return riemann_hurwitz(t);
}

rigor::CertResult check_genus_le_degree(const CoverSummary& s) {
  if (s.g < 1) throw std::invalid_argument("genus bound check needs g >= 1");
  return rigor::from_bool(s.g <= s.d, "genus " + std::to_string(s.g) + " exceeds degree " + std::to_string(s.d));
}

namespace {

std::string trim(std::string_view v) {
  std::size_t a = 0, b = v.size();
  while (a < b && std::isspace(static_cast<unsigned char>(v[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(v[b - 1]))) --b;
  return std::string(v.substr(a, b - a));
}

std::vector<int> image_array(const nlohmann::json& j, const char* name) {
  if (!j.is_array()) throw TripleError(TripleErrorKind::Malformed, std::string(name) + " must be an array of images");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw TripleError(TripleErrorKind::Malformed, std::string(name) + " has a non-integer image");
    out.push_back(v.get<int>());
  }
  return out;
}

Permutation permutation_value(const std::string& value, int d, const char* name) {
  if (!value.empty() && value.front() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(value);
    } catch (const nlohmann::json::exception& e) {
      throw TripleError(TripleErrorKind::Malformed, std::string(name) + ": " + e.what());
    }
    Permutation p = Permutation::from_images(image_array(j, name));
    if (p.degree() != d)
      throw TripleError(TripleErrorKind::NotBijective, std::string(name) + " has " + std::to_string(p.degree()) +
                                                            " images, expected d=" + std::to_string(d));
    return p;
  }
  return Permutation::from_cycles(value, d);
}

}  // namespace

BelyiTriple parse_triple_text(std::string_view text) {
  std::map<std::string, std::string> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw TripleError(TripleErrorKind::Malformed, "line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    if (key == "s_inf" || key == "sinfty" || key == "s_infty") key = "sinf";
    if (key != "d" && key != "s0" && key != "s1" && key != "sinf")
      throw TripleError(TripleErrorKind::Malformed, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (fields.count(key)) throw TripleError(TripleErrorKind::Malformed, "duplicate key '" + key + "'");
    fields[key] = trim(t.substr(eq + 1));
  }
  for (const char* k : {"d", "s0", "s1", "sinf"})
    if (!fields.count(k)) throw TripleError(TripleErrorKind::Malformed, std::string("missing '") + k + "='");

  BelyiTriple t;
  try {
    std::size_t used = 0;
    t.d = std::stoi(fields["d"], &used);
    if (used != fields["d"].size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw TripleError(TripleErrorKind::Malformed, "d must be a positive integer");
  }
  if (t.d < 1) throw TripleError(TripleErrorKind::Malformed, "d must be a positive integer");
  t.s0 = permutation_value(fields["s0"], t.d, "s0");
  t.s1 = permutation_value(fields["s1"], t.d, "s1");
  t.sinf = permutation_value(fields["sinf"], t.d, "sinf");
  return t;
}

BelyiTriple parse_triple_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw TripleError(TripleErrorKind::Malformed, e.what());
  }
  if (!j.is_object()) throw TripleError(TripleErrorKind::Malformed, "triple JSON must be an object");
  for (const char* k : {"d", "s0", "s1", "sinf"})
    if (!j.contains(k)) throw TripleError(TripleErrorKind::Malformed, std::string("missing field '") + k + "'");
  if (!j["d"].is_number_integer() || j["d"].get<int>() < 1)
    throw TripleError(TripleErrorKind::Malformed, "d must be a positive integer");
  BelyiTriple t;
  t.d = j["d"].get<int>();
  t.s0 = Permutation::from_images(image_array(j["s0"], "s0"));
  t.s1 = Permutation::from_images(image_array(j["s1"], "s1"));
  t.sinf = Permutation::from_images(image_array(j["sinf"], "sinf"));
  check_degrees(t);
  return t;
}

BelyiTriple parse_triple(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_triple_json(text) : parse_triple_text(text);
  }
  throw TripleError(TripleErrorKind::Malformed, "empty triple input");
}

BelyiTriple load_triple(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TripleError(TripleErrorKind::Malformed, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_triple(buf.str());
}

}  // namespace arakelov::dessins
