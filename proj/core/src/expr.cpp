#include "varbound/expr.hpp"

#include <cmath>
#include <sstream>
#include <limits>
#include <stdexcept>

#include "varbound/errors.hpp"

namespace varbound {

struct Expr::Node {
  Kind kind = Kind::Constant;
  double value = 0.0;
  int exponent = 0;
  Expr lhs_expr;  // empty-constant placeholders for leaves are never read
  Expr rhs_expr;
  std::size_t size = 1;
};

namespace {

bool is_function(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Exp:
    case Expr::Kind::Log:
    case Expr::Kind::Sin:
    case Expr::Kind::Cos:
    case Expr::Kind::Sqrt: return true;
    default: return false;
  }
}

bool is_binary(Expr::Kind k) {
  return k == Expr::Kind::Add || k == Expr::Kind::Sub || k == Expr::Kind::Mul || k == Expr::Kind::Div;
}

double checked(double v, const char* what) {
  if (std::isnan(v)) throw EvalOverflow(std::string("overflow produced NaN in ") + what);
  return v;
}

double ipow(double base, int e) {
  if (e < 0) {
    if (base == 0.0) throw EvalDomainError("zero raised to a negative power");
    return 1.0 / ipow(base, -e);
  }
  double out = 1.0;
  double b = base;
  unsigned u = static_cast<unsigned>(e);
  while (u != 0) {
    if (u & 1U) out *= b;
    b *= b;
    u >>= 1U;
  }
  return out;
}

}  // namespace

// Leaves carry null children; they are never dereferenced.
Expr::Expr() {
  static const std::shared_ptr<const Node> zero = [] {
    auto n = std::shared_ptr<Node>(new Node{Kind::Constant, 0.0, 0, Expr(nullptr), Expr(nullptr), 1});
    return std::shared_ptr<const Node>(n);
  }();
  node_ = zero;
}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) {
  if (value == 0.0) return Expr();
  return Expr(std::shared_ptr<const Node>(new Node{Kind::Constant, value, 0, Expr(nullptr), Expr(nullptr), 1}));
}

Expr Expr::variable() {
  static const Expr x(std::shared_ptr<const Node>(new Node{Kind::Variable, 0.0, 0, Expr(nullptr), Expr(nullptr), 1}));
  return x;
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

double Expr::value() const {
  if (node_->kind != Kind::Constant) throw std::logic_error("Expr::value on a non-constant");
  return node_->value;
}

int Expr::exponent() const {
  if (node_->kind != Kind::Pow) throw std::logic_error("Expr::exponent on a non-power");
  return node_->exponent;
}

const Expr& Expr::lhs() const { return node_->lhs_expr; }
const Expr& Expr::rhs() const { return node_->rhs_expr; }

bool Expr::is_constant(double v) const noexcept { return node_->kind == Kind::Constant && node_->value == v; }

std::size_t Expr::size() const noexcept { return node_->size; }

Expr Expr::make(Kind kind, const Expr& a, const Expr& b, int exponent, double value) {
  std::size_t size = 1;
  if (kind != Kind::Constant && kind != Kind::Variable) size += a.size();
  if (is_binary(kind)) size += b.size();
  return Expr(std::shared_ptr<const Node>(new Node{kind, value, exponent, a, b, size}));
}

Expr Expr::add(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return constant(a.value() + b.value());
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (b.kind() == Kind::Neg) return sub(a, b.lhs());
  return make(Kind::Add, a, b, 0, 0.0);
}

Expr Expr::sub(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return constant(a.value() - b.value());
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return neg(b);
  if (b.kind() == Kind::Neg) return add(a, b.lhs());
  return make(Kind::Sub, a, b, 0, 0.0);
}

Expr Expr::mul(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return constant(a.value() * b.value());
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr();
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(-1.0)) return neg(b);
  if (b.is_constant(-1.0)) return neg(a);
  if (b.is_constant()) return mul(b, a);
  if (a.is_constant() && b.kind() == Kind::Mul && b.lhs().is_constant())
    return mul(constant(a.value() * b.lhs().value()), b.rhs());
  if (a.kind() == Kind::Neg) return neg(mul(a.lhs(), b));
  if (b.kind() == Kind::Neg) return neg(mul(a, b.lhs()));
  return make(Kind::Mul, a, b, 0, 0.0);
}

Expr Expr::div(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() && b.value() != 0.0) return constant(a.value() / b.value());
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr();
  if (b.is_constant(1.0)) return a;
  return make(Kind::Div, a, b, 0, 0.0);
}

Expr Expr::neg(const Expr& a) {
  if (a.is_constant()) return constant(-a.value());
  if (a.kind() == Kind::Neg) return a.lhs();
  return make(Kind::Neg, a, Expr(), 0, 0.0);
}

Expr Expr::pow(const Expr& base, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return base;
  if (base.is_constant() && !(base.value() == 0.0 && exponent < 0)) return constant(ipow(base.value(), exponent));
  if (base.kind() == Kind::Pow) {
    const long long e = static_cast<long long>(base.exponent()) * exponent;
    if (e <= std::numeric_limits<int>::max() && e >= std::numeric_limits<int>::min())
      return pow(base.lhs(), static_cast<int>(e));
  }
  return make(Kind::Pow, base, Expr(), exponent, 0.0);
}

Expr Expr::apply(Kind function, const Expr& arg) {
  if (!is_function(function)) throw std::invalid_argument("Expr::apply needs a function kind");
  if (arg.is_constant()) {
    const double v = arg.value();
    switch (function) {
      case Kind::Exp: return constant(std::exp(v));
      case Kind::Sin: return constant(std::sin(v));
      case Kind::Cos: return constant(std::cos(v));
      case Kind::Log:
        if (v > 0.0) return constant(std::log(v));
        break;
      case Kind::Sqrt:
        if (v >= 0.0) return constant(std::sqrt(v));
        break;
      default: break;
    }
  }
  return make(function, arg, Expr(), 0, 0.0);
}

double Expr::evaluate(double x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant: return n.value;
    case Kind::Variable: return x;
    case Kind::Add: return checked(n.lhs_expr.evaluate(x) + n.rhs_expr.evaluate(x), "addition");
    case Kind::Sub: return checked(n.lhs_expr.evaluate(x) - n.rhs_expr.evaluate(x), "subtraction");
    case Kind::Mul: return checked(n.lhs_expr.evaluate(x) * n.rhs_expr.evaluate(x), "multiplication");
    case Kind::Div: {
      const double num = n.lhs_expr.evaluate(x);
      const double den = n.rhs_expr.evaluate(x);
      if (den == 0.0) throw EvalDomainError("division by zero");
      return checked(num / den, "division");
    }
    case Kind::Neg: return -n.lhs_expr.evaluate(x);
    case Kind::Pow: return checked(ipow(n.lhs_expr.evaluate(x), n.exponent), "power");
    case Kind::Exp: return checked(std::exp(n.lhs_expr.evaluate(x)), "exp");
    case Kind::Sin: return checked(std::sin(n.lhs_expr.evaluate(x)), "sin");
    case Kind::Cos: return checked(std::cos(n.lhs_expr.evaluate(x)), "cos");
    case Kind::Log: {
      const double v = n.lhs_expr.evaluate(x);
      if (!(v > 0.0)) throw EvalDomainError("log of a non-positive value");
      return std::log(v);
    }
    case Kind::Sqrt: {
      const double v = n.lhs_expr.evaluate(x);
      if (!(v >= 0.0)) throw EvalDomainError("sqrt of a negative value");
      return std::sqrt(v);
    }
  }
  throw std::logic_error("unreachable expression kind");
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::add(a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sub(a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::mul(a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::div(a, b); }
Expr operator-(const Expr& a) { return Expr::neg(a); }

namespace {

using Kind = Expr::Kind;

Expr derivative(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant: return Expr();
    case Kind::Variable: return Expr::constant(1.0);
    case Kind::Add: return derivative(e.lhs()) + derivative(e.rhs());
    case Kind::Sub: return derivative(e.lhs()) - derivative(e.rhs());
    case Kind::Mul: {
      const Expr& u = e.lhs();
      const Expr& v = e.rhs();
      if (u.is_constant()) return u * derivative(v);
      return derivative(u) * v + u * derivative(v);
    }
    case Kind::Div: {
      const Expr& u = e.lhs();
      const Expr& v = e.rhs();
      if (v.is_constant()) return derivative(u) / v;
      return (derivative(u) * v - u * derivative(v)) / Expr::pow(v, 2);
    }
    case Kind::Neg: return -derivative(e.lhs());
    case Kind::Pow: {
      const int k = e.exponent();
      return Expr::constant(k) * Expr::pow(e.lhs(), k - 1) * derivative(e.lhs());
    }
    case Kind::Exp: return e * derivative(e.lhs());
    case Kind::Log: return derivative(e.lhs()) / e.lhs();
    case Kind::Sin: return Expr::apply(Kind::Cos, e.lhs()) * derivative(e.lhs());
    case Kind::Cos: return -(Expr::apply(Kind::Sin, e.lhs()) * derivative(e.lhs()));
    case Kind::Sqrt: return derivative(e.lhs()) / (Expr::constant(2.0) * e);
  }
  throw std::logic_error("unreachable expression kind");
}

// Binding strength used by the printer: 1 additive, 2 multiplicative,
// 3 unary minus, 4 power, 5 atoms and calls.
int precedence(const Expr& e) {
  switch (e.kind()) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 3;
    case Kind::Pow: return 4;
    case Kind::Constant: return e.value() < 0.0 ? 3 : 5;
    default: return 5;
  }
}

const char* function_name(Kind k) {
  switch (k) {
    case Kind::Exp: return "exp";
    case Kind::Log: return "log";
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    case Kind::Sqrt: return "sqrt";
    default: return "?";
  }
}

void print_to(std::ostream& os, const Expr& e);

void print_wrapped(std::ostream& os, const Expr& e, bool wrap) {
  if (wrap) os << '(';
  print_to(os, e);
  if (wrap) os << ')';
}

void print_to(std::ostream& os, const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant: {
      std::ostringstream num;
      num.precision(17);
      num << e.value();
      os << num.str();
      return;
    }
    case Kind::Variable: os << 'x'; return;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: {
      const int p = precedence(e);
      print_wrapped(os, e.lhs(), precedence(e.lhs()) < p);
      switch (e.kind()) {
        case Kind::Add: os << " + "; break;
        case Kind::Sub: os << " - "; break;
        case Kind::Mul: os << "*"; break;
        default: os << "/"; break;
      }
      // Left associative: an equal-precedence right operand needs parentheses.
      print_wrapped(os, e.rhs(), precedence(e.rhs()) <= p);
      return;
    }
    case Kind::Neg:
      os << '-';
      print_wrapped(os, e.lhs(), precedence(e.lhs()) < 4);
      return;
    case Kind::Pow:
      print_wrapped(os, e.lhs(), precedence(e.lhs()) < 5);
      os << '^';
      if (e.exponent() < 0) {
        os << '(' << e.exponent() << ')';
      } else {
        os << e.exponent();
      }
      return;
    default:
      os << function_name(e.kind()) << '(';
      print_to(os, e.lhs());
      os << ')';
      return;
  }
}

}  // namespace

Expr differentiate(const Expr& e, int order) {
  if (order < 0) throw std::invalid_argument("differentiate: order must be >= 0");
  Expr out = e;
  for (int k = 0; k < order; ++k) out = derivative(out);
  return out;
}

std::string print(const Expr& e) {
  std::ostringstream os;
  print_to(os, e);
  return os.str();
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Constant: return a.value() == b.value();
    case Kind::Variable: return true;
    case Kind::Pow: return a.exponent() == b.exponent() && structurally_equal(a.lhs(), b.lhs());
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
    default: return structurally_equal(a.lhs(), b.lhs());
  }
}

}  // namespace varbound
