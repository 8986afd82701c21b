#pragma once

// Expression trees over named variables, evaluated in interval arithmetic.
// Besides plain evaluation, an expression can be evaluated in forward-mode
// automatic differentiation, giving an enclosure of the gradient over a box
// (non-smooth primitives use the hull of their one-sided derivatives).

#include "arakelov/rigor/interval.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace arakelov::rigor {

/// A box: one interval per named variable, in name order.
using Box = std::map<std::string, Interval>;

struct Dual {
  Interval value;
  std::vector<Interval> grad;  // one entry per variable of the box, in box order
};

class Expr {
 public:
  enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Sqrt, Exp, Log, Min, Max, Abs };

  Expr(const Interval& value);  // NOLINT: constants promote implicitly
  Expr(long value) : Expr(Interval(value)) {}
  Expr(int value) : Expr(Interval(value)) {}

  static Expr constant(const Interval& value) { return Expr(value); }
  static Expr var(std::string name);

  Op op() const;

  Interval eval(const Box& box) const;
  Dual eval_dual(const Box& box) const;
  std::string str() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& a, long n);
  friend Expr sqrt(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr log(const Expr& a);
  friend Expr min(const Expr& a, const Expr& b);
  friend Expr max(const Expr& a, const Expr& b);
  friend Expr abs(const Expr& a);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, std::vector<Expr> args, long exponent = 0);

  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& a, long n);
Expr sqrt(const Expr& a);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr min(const Expr& a, const Expr& b);
Expr max(const Expr& a, const Expr& b);
Expr abs(const Expr& a);

enum class Cmp { Lt, Le, Gt, Ge };

/// lhs <cmp> rhs.
struct Claim {
  Expr lhs;
  Cmp cmp;
  Expr rhs;

  bool strict() const { return cmp == Cmp::Lt || cmp == Cmp::Gt; }
  /// The gap function G with the claim equivalent to G >= 0 (or G > 0 if strict).
  Expr gap() const;
  std::string str() const;
};

Claim operator<(const Expr& a, const Expr& b);
Claim operator<=(const Expr& a, const Expr& b);
Claim operator>(const Expr& a, const Expr& b);
Claim operator>=(const Expr& a, const Expr& b);

}  // namespace arakelov::rigor
