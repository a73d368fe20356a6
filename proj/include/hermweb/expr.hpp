#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hermweb/grid.hpp"

namespace hermweb {

/// Immutable real-valued expression tree.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' ['-'] number)?
///   primary := number | 'pi' | var | func '(' expr ')' | '(' expr ')'
///   var     := ('x' | 'y') digit+          (index 1..n)
///   func    := 'sin' | 'cos' | 'exp' | 'log'
class Expr {
 public:
  enum class Kind { Number, Pi, Variable, Negate, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Log };
  static constexpr int kMaxDepth = 64;

  static Expr number(double v);
  static Expr pi();
  /// Real axis index (x_axis / y_axis convention).
  static Expr variable(int axis);
  static Expr unary(Kind kind, Expr arg);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  static Expr power(Expr base, double exponent);

  Kind kind() const;
  double value() const;  ///< literal value, or exponent for Pow
  int axis() const;
  const Expr& lhs() const;
  const Expr& rhs() const;
  int depth() const;

  /// Fully parenthesized canonical text; parses back to an identical tree.
  std::string to_string() const;
  double evaluate(const Coordinates& x) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses `text` with variables x1..xn, y1..yn. Throws ParseError with a byte offset.
Expr parse_expr(std::string_view text, int n);

/// Pointwise evaluation; a non-finite value anywhere throws DomainError naming the point.
ScalarField evaluate(const Expr& e, const PeriodicGrid& grid);

/// Largest jump between each boundary sample and its periodic neighbour
/// (the extrapolated value one grid step past the end).
double periodicity_defect(const Expr& e, const PeriodicGrid& grid);

}  // namespace hermweb
