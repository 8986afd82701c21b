#pragma once

// Belyi covers of X(2) as permutation triples.
//
// Sheets are labelled 1..d. A triple (s0, s1, sinf) is the monodromy over
// the cusps 0, 1, infinity. Products are read left to right: "s0 s1 sinf"
// applies s0 first, so the product condition is sinf(s1(s0(i))) = i.

#include "arakelov/rigor/certify.hpp"

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arakelov::dessins {

enum class TripleErrorKind { NonIdentityProduct, NotTransitive, NotBijective, Malformed };

class TripleError : public std::invalid_argument {
 public:
  TripleError(TripleErrorKind kind, const std::string& what);
  TripleErrorKind kind() const noexcept { return kind_; }

 private:
  TripleErrorKind kind_;
};

std::string_view to_string(TripleErrorKind kind);

class Permutation {
 public:
  static Permutation identity(int d);
  /// 1-based image list; throws TripleError(NotBijective).
  static Permutation from_images(const std::vector<int>& images);
  /// Disjoint cycles such as "(1 2 3)(4)"; omitted points are fixed.
  /// "id", "()" and the empty string denote the identity.
  static Permutation from_cycles(std::string_view text, int d);

  int degree() const { return static_cast<int>(images_.size()); }
  /// Image of sheet i (1-based).
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)] + 1; }
  std::vector<int> images() const;

  /// This permutation followed by `next`.
  Permutation then(const Permutation& next) const;
  Permutation inverse() const;
  /// The same permutation after renaming sheet i to p(i).
  Permutation relabeled(const Permutation& p) const;
  bool is_identity() const;

  /// Cycles including fixed points, each starting at its smallest sheet,
  /// ordered by that smallest sheet.
  std::vector<std::vector<int>> cycles() const;
  std::string cycle_string() const;

  bool operator==(const Permutation& other) const = default;

 private:
  std::vector<int> images_;  // 0-based internally
};

struct BelyiTriple {
  int d = 0;
  Permutation s0;
  Permutation s1;
  Permutation sinf;
};

enum class Fiber { Zero = 0, One = 1, Infinity = 2 };
std::string_view to_string(Fiber f);

struct Cusp {
  Fiber fiber;
  std::vector<int> cycle;
  int e = 1;  // ramification index = cycle length
};

struct CoverSummary {
  int d = 0;
  int g = 0;
  std::vector<Cusp> cusps;  // by (fiber, smallest sheet)
  int n = 0;

  /// Sorted (descending) ramification indices over one fiber.
  std::vector<int> partition(Fiber f) const;
  int max_ramification() const;
};

/// Throws TripleError naming the violated invariant.
CoverSummary validate_triple(const BelyiTriple& t);
/// Riemann-Hurwitz: g = 1 - d + (1/2) sum over all cycles of (len - 1).
int genus(const BelyiTriple& t);
/// Certified iff g <= d. Requires g >= 1.
rigor::CertResult check_genus_le_degree(const CoverSummary& s);

/// Text form: lines "d=3", "s0=(1 2 3)", "s1=...", "sinf=..." (blank lines
/// and '#' comments ignored; a value may also be a JSON image array).
BelyiTriple parse_triple_text(std::string_view text);
/// {"d":3, "s0":[2,3,1], "s1":[...], "sinf":[...]} with 1-based images.
BelyiTriple parse_triple_json(std::string_view text);
/// Dispatches on the first non-blank character ('{' selects JSON).
BelyiTriple parse_triple(std::string_view text);
BelyiTriple load_triple(const std::filesystem::path& path);

}  // namespace arakelov::dessins
