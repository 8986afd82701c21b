#include "arakelov/rigor/expr.hpp"

#include "arakelov/rigor/elementary.hpp"

#include <stdexcept>

namespace arakelov::rigor {

struct Expr::Node {
  Op op;
  Interval value;  // Const
  std::string name;  // Var
  long exponent = 0;  // Pow
  std::vector<Expr> args;
};

namespace {

std::vector<Interval> scaled(const std::vector<Interval>& g, const Interval& s) {
  std::vector<Interval> out;
  out.reserve(g.size());
  for (const auto& x : g) out.push_back(x * s);
  return out;
}

}  // namespace

Expr::Expr(const Interval& value) {
  auto node = std::make_shared<Node>();
  node->op = Op::Const;
  node->value = value;
  node_ = std::move(node);
}

Expr Expr::var(std::string name) {
  auto node = std::make_shared<Node>();
  node->op = Op::Var;
  node->name = std::move(name);
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Expr Expr::make(Op op, std::vector<Expr> args, long exponent) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->args = std::move(args);
  node->exponent = exponent;
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Expr::Op Expr::op() const { return node_->op; }

Interval Expr::eval(const Box& box) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: {
      auto it = box.find(n.name);
      if (it == box.end()) throw std::invalid_argument("unbound variable '" + n.name + "'");
      return it->second;
    }
    case Op::Add: return n.args[0].eval(box) + n.args[1].eval(box);
    case Op::Sub: return n.args[0].eval(box) - n.args[1].eval(box);
    case Op::Mul: return n.args[0].eval(box) * n.args[1].eval(box);
    case Op::Div: return n.args[0].eval(box) / n.args[1].eval(box);
    case Op::Neg: return -n.args[0].eval(box);
    case Op::Pow: return pow(n.args[0].eval(box), n.exponent);
    case Op::Sqrt: return sqrt(n.args[0].eval(box));
    case Op::Exp: return exp(n.args[0].eval(box));
    case Op::Log: return log(n.args[0].eval(box));
    case Op::Min: return min(n.args[0].eval(box), n.args[1].eval(box));
    case Op::Max: return max(n.args[0].eval(box), n.args[1].eval(box));
    case Op::Abs: return abs(n.args[0].eval(box));
  }
  throw std::logic_error("unreachable");
}

Dual Expr::eval_dual(const Box& box) const {
  const Node& n = *node_;
  const std::size_t dims = box.size();
  auto zero_grad = [dims] { return std::vector<Interval>(dims, Interval(0)); };

  switch (n.op) {
    case Op::Const: return {n.value, zero_grad()};
    case Op::Var: {
      auto it = box.find(n.name);
      if (it == box.end()) throw std::invalid_argument("unbound variable '" + n.name + "'");
      auto g = zero_grad();
      g[static_cast<std::size_t>(std::distance(box.begin(), it))] = Interval(1);
      return {it->second, std::move(g)};
    }
    default: break;
  }

  Dual a = n.args[0].eval_dual(box);
  switch (n.op) {
    case Op::Neg:
      return {-a.value, scaled(a.grad, Interval(-1))};
    case Op::Pow: {
      if (n.exponent == 0) return {Interval(1), zero_grad()};
      Interval d = Interval(n.exponent) * pow(a.value, n.exponent - 1);
      return {pow(a.value, n.exponent), scaled(a.grad, d)};
    }
    case Op::Sqrt: {
      Interval s = sqrt(a.value);
      if (!certainly_gt(s, Interval(0))) throw DomainError("sqrt not differentiable at 0");
      return {s, scaled(a.grad, Interval(1) / scale2(s, 1))};
    }
    case Op::Exp: {
      Interval e = exp(a.value);
      return {e, scaled(a.grad, e)};
    }
    case Op::Log:
      return {log(a.value), scaled(a.grad, Interval(1) / a.value)};
    case Op::Abs: {
      if (mpfr_sgn(a.value.lo()) >= 0) return {abs(a.value), a.grad};
      if (mpfr_sgn(a.value.hi()) <= 0) return {abs(a.value), scaled(a.grad, Interval(-1))};
      return {abs(a.value), scaled(a.grad, Interval::hull(Interval(-1), Interval(1)))};
    }
    default: break;
  }

  Dual b = n.args[1].eval_dual(box);
  std::vector<Interval> g(dims);
  switch (n.op) {
    case Op::Add:
      for (std::size_t i = 0; i < dims; ++i) g[i] = a.grad[i] + b.grad[i];
      return {a.value + b.value, std::move(g)};
    case Op::Sub:
      for (std::size_t i = 0; i < dims; ++i) g[i] = a.grad[i] - b.grad[i];
      return {a.value - b.value, std::move(g)};
    case Op::Mul:
      for (std::size_t i = 0; i < dims; ++i) g[i] = a.grad[i] * b.value + a.value * b.grad[i];
      return {a.value * b.value, std::move(g)};
    case Op::Div: {
      Interval q = a.value / b.value;
      for (std::size_t i = 0; i < dims; ++i) g[i] = (a.grad[i] - q * b.grad[i]) / b.value;
      return {q, std::move(g)};
    }
    case Op::Min:
    case Op::Max: {
      const bool is_min = n.op == Op::Min;
      Interval v = is_min ? min(a.value, b.value) : max(a.value, b.value);
      // one branch active on the whole box: its gradient is exact
      const bool a_wins = is_min ? certainly_le(a.value, b.value) : certainly_ge(a.value, b.value);
      const bool b_wins = is_min ? certainly_le(b.value, a.value) : certainly_ge(b.value, a.value);
      if (a_wins) return {v, a.grad};
      if (b_wins) return {v, b.grad};
      for (std::size_t i = 0; i < dims; ++i) g[i] = Interval::hull(a.grad[i], b.grad[i]);
      return {v, std::move(g)};
    }
    default: break;
  }
  throw std::logic_error("unreachable");
}

std::string Expr::str() const {
  const Node& n = *node_;
  auto un = [&](const char* f) { return std::string(f) + "(" + n.args[0].str() + ")"; };
  auto bin = [&](const char* o) { return "(" + n.args[0].str() + " " + o + " " + n.args[1].str() + ")"; };
  switch (n.op) {
    case Op::Const:
      return n.value.is_point() ? decimal_string(n.value.lo(), 17, MPFR_RNDN) : to_string(n.value, 17);
    case Op::Var: return n.name;
    case Op::Add: return bin("+");
    case Op::Sub: return bin("-");
    case Op::Mul: return bin("*");
    case Op::Div: return bin("/");
    case Op::Neg: return "-" + n.args[0].str();
    case Op::Pow: return n.args[0].str() + "^" + std::to_string(n.exponent);
    case Op::Sqrt: return un("sqrt");
    case Op::Exp: return un("exp");
    case Op::Log: return un("log");
    case Op::Abs: return un("abs");
    case Op::Min: return "min(" + n.args[0].str() + ", " + n.args[1].str() + ")";
    case Op::Max: return "max(" + n.args[0].str() + ", " + n.args[1].str() + ")";
  }
  return "?";
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Add, {a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Sub, {a, b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Mul, {a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Div, {a, b}); }
Expr operator-(const Expr& a) { return Expr::make(Expr::Op::Neg, {a}); }
Expr pow(const Expr& a, long n) { return Expr::make(Expr::Op::Pow, {a}, n); }
Expr sqrt(const Expr& a) { return Expr::make(Expr::Op::Sqrt, {a}); }
Expr exp(const Expr& a) { return Expr::make(Expr::Op::Exp, {a}); }
Expr log(const Expr& a) { return Expr::make(Expr::Op::Log, {a}); }
Expr min(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Min, {a, b}); }
Expr max(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Max, {a, b}); }
Expr abs(const Expr& a) { return Expr::make(Expr::Op::Abs, {a}); }

Expr Claim::gap() const {
  return (cmp == Cmp::Le || cmp == Cmp::Lt) ? rhs - lhs : lhs - rhs;
}

std::string Claim::str() const {
  static const char* names[] = {"<", "<=", ">", ">="};
  return lhs.str() + " " + names[static_cast<int>(cmp)] + " " + rhs.str();
}

Claim operator<(const Expr& a, const Expr& b) { return {a, Cmp::Lt, b}; }
Claim operator<=(const Expr& a, const Expr& b) { return {a, Cmp::Le, b}; }
Claim operator>(const Expr& a, const Expr& b) { return {a, Cmp::Gt, b}; }
Claim operator>=(const Expr& a, const Expr& b) { return {a, Cmp::Ge, b}; }

}  // namespace arakelov::rigor
