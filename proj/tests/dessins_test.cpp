#include "support.hpp"

#include "arakelov/dessins.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace arakelov::dessins;

namespace {

BelyiTriple triple(int d, const char* s0, const char* s1, const char* sinf) {
  return {d, Permutation::from_cycles(s0, d), Permutation::from_cycles(s1, d), Permutation::from_cycles(sinf, d)};
}

Permutation random_perm(std::mt19937_64& rng, int d) {
  std::vector<int> v(static_cast<std::size_t>(d));
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation::from_images(v);
}

// Random transitive triple: s0, s1 uniform, sinf closes the product.
BelyiTriple random_triple(std::mt19937_64& rng, int d) {
  for (;;) {
    BelyiTriple t{d, random_perm(rng, d), random_perm(rng, d), Permutation::identity(d)};
    t.sinf = t.s0.then(t.s1).inverse();
    try {
      validate_triple(t);
      return t;
    } catch (const TripleError& e) {
      if (e.kind() != TripleErrorKind::NotTransitive) throw;
    }
  }
}

}  // namespace

TEST_SUITE("dessins") {

TEST_CASE("permutation basics") {
  const Permutation p = Permutation::from_cycles("(1 2 3)(4 5)", 6);
  CHECK(p(1) == 2);
  CHECK(p(3) == 1);
  CHECK(p(6) == 6);
  CHECK(p.cycle_string() == "(1 2 3)(4 5)");
  CHECK(p.cycles().size() == 3);
  CHECK(p.then(p.inverse()).is_identity());
  CHECK(Permutation::from_cycles("id", 3).is_identity());
  CHECK(Permutation::from_cycles("()", 3).is_identity());
  // "then" applies the left factor first.
  const Permutation a = Permutation::from_cycles("(1 2)", 3), b = Permutation::from_cycles("(2 3)", 3);
  CHECK(a.then(b)(1) == 3);
}

TEST_CASE("malformed permutations") {
  CHECK_THROWS_AS(Permutation::from_images({1, 1, 2}), TripleError);
  CHECK_THROWS_AS(Permutation::from_images({1, 4, 2}), TripleError);
  CHECK_THROWS_AS(Permutation::from_cycles("(1 2)(2 3)", 3), TripleError);
  CHECK_THROWS_AS(Permutation::from_cycles("(1 9)", 3), TripleError);
  CHECK_THROWS_AS(Permutation::from_cycles("(1 x)", 3), TripleError);
}

TEST_CASE("genus of the basic triples") {
  const BelyiTriple trefoil = triple(3, "(1 2 3)", "(1 2 3)", "(1 2 3)");
  CHECK(genus(trefoil) == 1);
  const CoverSummary s = validate_triple(trefoil);
  CHECK(s.d == 3);
  CHECK(s.g == 1);
  CHECK(s.n == 3);
  CHECK(s.max_ramification() == 3);
  CHECK(check_genus_le_degree(s).certified());

  const BelyiTriple line = triple(2, "(1 2)", "(1 2)", "id");
  CHECK(genus(line) == 0);
  CHECK(validate_triple(line).n == 4);
  CHECK_THROWS_AS(check_genus_le_degree(validate_triple(line)), std::invalid_argument);
}

TEST_CASE("cusp listing order") {
  const CoverSummary s = validate_triple(triple(4, "(1 2 3 4)", "(1 2 3 4)", "(1 3)(2 4)"));
  CHECK(s.g == 1);
  REQUIRE(s.cusps.size() == 4);
  CHECK(s.cusps[0].fiber == Fiber::Zero);
  CHECK(s.cusps[2].fiber == Fiber::Infinity);
  CHECK(s.cusps[2].cycle == std::vector<int>{1, 3});
  CHECK(s.partition(Fiber::Infinity) == std::vector<int>{2, 2});
}

TEST_CASE("triple errors name the violated invariant") {
  auto kind_of = [](const BelyiTriple& t) {
    try {
      validate_triple(t);
    } catch (const TripleError& e) {
      return e.kind();
    }
    FAIL("expected a TripleError");
    return TripleErrorKind::Malformed;
  };
  CHECK(kind_of(triple(3, "(1 2 3)", "(1 2)", "(1 2 3)")) == TripleErrorKind::NonIdentityProduct);
  CHECK(kind_of(triple(4, "(1 2)", "(1 2)", "id")) == TripleErrorKind::NotTransitive);
  BelyiTriple bad = triple(3, "(1 2 3)", "(1 2 3)", "(1 2 3)");
  bad.sinf = Permutation::from_cycles("(1 2)", 2);
  CHECK(kind_of(bad) == TripleErrorKind::NotBijective);
}

TEST_CASE("text and json parsing") {
  const BelyiTriple a = parse_triple("# comment\nd=3\ns0=(1 2 3)\n\ns1=[2,3,1]\nsinf=(1 2 3)\n");
  CHECK(a.s1 == a.s0);
  const BelyiTriple b = parse_triple(R"({"d": 3, "s0": [2,3,1], "s1": [2,3,1], "sinf": [2,3,1]})");
  CHECK(b.s0 == a.s0);
  CHECK(validate_triple(b).g == 1);
  CHECK_THROWS_AS(parse_triple("d=3\ns0=(1 2 3)\n"), TripleError);
  CHECK_THROWS_AS(parse_triple("{\"d\": 3"), TripleError);
  CHECK_THROWS_AS(load_triple("/nonexistent/file"), TripleError);
}

TEST_CASE("sample files") {
  CHECK(validate_triple(load_triple(ARAKELOV_DATA_DIR "/trefoil.txt")).g == 1);
  CHECK(validate_triple(load_triple(ARAKELOV_DATA_DIR "/square_torus.json")).n == 4);
  CHECK(validate_triple(load_triple(ARAKELOV_DATA_DIR "/genus0_double.txt")).g == 0);
  CHECK_THROWS_AS(validate_triple(load_triple(ARAKELOV_DATA_DIR "/bad_product.txt")), TripleError);
}

TEST_CASE("relabeling invariance over random conjugations") {
  std::mt19937_64 rng(2024);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 3 + static_cast<int>(rng() % 10);
    const BelyiTriple t = trial % 2 ? random_triple(rng, d) : triple(3, "(1 2 3)", "(1 2 3)", "(1 2 3)");
    const Permutation p = random_perm(rng, t.d);
    const BelyiTriple r{t.d, t.s0.relabeled(p), t.s1.relabeled(p), t.sinf.relabeled(p)};
    const CoverSummary a = validate_triple(t), b = validate_triple(r);
    bool same = a.g == b.g && a.n == b.n && a.max_ramification() == b.max_ramification();
    for (Fiber f : {Fiber::Zero, Fiber::One, Fiber::Infinity}) same = same && a.partition(f) == b.partition(f);
    // Riemann-Hurwitz from the summary itself.
    long ram = 0;
    for (const auto& c : a.cusps) ram += c.e - 1;
    same = same && 2 * a.g - 2 == -2 * a.d + ram;
    if (!same) ++mismatches;
  }
  CHECK(mismatches == 0);
}

}  // TEST_SUITE
