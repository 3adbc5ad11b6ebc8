#pragma once

// Univariate expression language for the target function g(x).
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | 'x' | func '(' expr ')' | '(' expr ')'
//   func    := exp | log | sin | cos | sqrt
//
// Exponents must fold to an integer constant. Nodes are immutable and shared,
// so copying an Expr is cheap.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace varbound {

class Expr {
 public:
  enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Neg, Pow, Exp, Log, Sin, Cos, Sqrt };

  /// The zero constant.
  Expr();

  static Expr constant(double value);
  static Expr variable();

  // Smart constructors; each applies the conservative simplifications
  // (constant folding, 0/1 identities, double negation).
  static Expr add(const Expr& a, const Expr& b);
  static Expr sub(const Expr& a, const Expr& b);
  static Expr mul(const Expr& a, const Expr& b);
  static Expr div(const Expr& a, const Expr& b);
  static Expr neg(const Expr& a);
  static Expr pow(const Expr& base, int exponent);
  static Expr apply(Kind function, const Expr& arg);

  Kind kind() const noexcept;
  double value() const;   // Constant only
  int exponent() const;   // Pow only
  const Expr& lhs() const;  // binary nodes, Pow base, unary argument
  const Expr& rhs() const;  // binary nodes only

  bool is_constant() const noexcept { return kind() == Kind::Constant; }
  bool is_constant(double v) const noexcept;
  std::size_t size() const noexcept;

  /// Throws EvalDomainError for log/sqrt of an invalid argument, division by
  /// zero, or a NaN result.
  double evaluate(double x) const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  static Expr make(Kind kind, const Expr& a, const Expr& b, int exponent, double value);
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Throws SyntaxError carrying the byte offset of the offending token.
Expr parse(std::string_view text);

/// Text that parse() maps back to an equivalent expression.
std::string print(const Expr& e);

/// order-th symbolic derivative with respect to x.
Expr differentiate(const Expr& e, int order);

bool structurally_equal(const Expr& a, const Expr& b);

}  // namespace varbound
