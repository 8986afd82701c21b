#pragma once

// Specializations of the main bounds to curve classes with controlled
// Belyi degree, and to covers of curves with a fixed branch locus.

#include "arakelov/heights.hpp"
#include "arakelov/rigor/certify.hpp"
#include "arakelov/rigor/interval.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace arakelov::applications {

using rigor::CertResult;
using rigor::ChainResult;
using rigor::Interval;

/// [SL2(Z) : Gamma1(n)] = n^2 prod_{p | n} (1 - 1/p^2).
mpz_class gamma1_index(long n);

struct CurveClass {
  enum class Kind { Modular, GaloisBelyi, CongruenceIndex, X1Level, ExplicitBelyi };
  Kind kind = Kind::Modular;
  long param = 0;  // index d, level n or Belyi degree d where the kind needs one

  static CurveClass modular() { return {Kind::Modular, 0}; }
  static CurveClass galois_belyi() { return {Kind::GaloisBelyi, 0}; }
  static CurveClass congruence_index(long d) { return {Kind::CongruenceIndex, d}; }
  static CurveClass x1_level(long n) { return {Kind::X1Level, n}; }
  static CurveClass explicit_belyi(long d) { return {Kind::ExplicitBelyi, d}; }
};

std::string to_string(CurveClass::Kind k);

/// Upper bound for the Belyi degree of a curve of genus g in the class.
/// Throws DomainError on a class/genus mismatch.
mpz_class belyi_degree_bound(const CurveClass& c, long g);

struct ExactBound {
  mpz_class value;
  Interval enclosure;
  ChainResult chain;
};

/// 2e19 g^2 (g+1)^5 for modular and Galois Belyi curves.
ExactBound modferwol_bound(long g);
/// 1e9 d^7 for quotients by an index-d subgroup of SL2(Z).
ExactBound congruence_bound(long d);
/// 5e8 n^14 for X1(n).
ExactBound x1_discriminant_bound(long n);

struct CoverSpec {
  heights::BranchSet branch;
  long deg_f = 1;
  long deg_pi = 1;
  long g = 1;

  void validate() const;
};

/// log of an upper bound, or an exact zero bound (e when g = 1).
struct LogBound {
  std::optional<Interval> log_value;  // absent when the bound is 0
  bool is_zero() const { return !log_value; }
};

struct LogBoundSet {
  Interval h_fal_lower;        // -g log 2pi, in linear space
  LogBound h_fal_upper;
  LogBound e_upper;
  LogBound disc_upper;
  LogBound delta_upper;
  LogBound delta_lower_abs;    // delta >= -exp(this)
  Interval log_c_B;
  mpq_class exponent;          // 45 N^3 2^{N-2} N!
  ChainResult chain;
};

LogBoundSet mainthm2_bounds(const CoverSpec& spec);

struct EdjsAbsorption {
  long d = 0;
  CertResult result;  // 13e6 g c_B <= d^{1 + log(13e6 N c_B)} for g <= N d
  Interval lhs_log, rhs_log;
};

struct EdjsExponent {
  Interval a;  // 6 + log(13e6 N c_B)
  std::vector<EdjsAbsorption> absorption;
};

/// The exponent a, with the absorption step checked at each degree in `degrees` (each >= 1).
EdjsExponent edjs_exponent(long N, const Interval& H_B, const std::vector<long>& degrees = {});

}  // namespace arakelov::applications
