#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hsol/jet.hpp"
#include "hsol/types.hpp"

namespace hsol {

/// Syntax or semantic error in an expression string. position() is the
/// 0-based character offset the parser was looking at.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Scalar expression in the coordinates x1..xn.
///
/// Grammar (whitespace insignificant):
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := '-' factor | base ('^' ['-'] integer)?
///   base   := number | 'x' digits | fn '(' expr ')' | '(' expr ')'
///   fn     := exp | log | sin | cos | sqrt
/// '^' binds tighter than unary minus, so "-x1^2" is -(x1^2).
class Expr {
 public:
  enum class Kind { constant, coord, binary, unary, int_pow };
  enum class BinOp { add, sub, mul, div };
  enum class Fn { neg, exp, log, sin, cos, sqrt };

  struct Node {
    Kind kind = Kind::constant;
    double value = 0.0;  // constant
    int index = 0;       // coord (0-based) or exponent (int_pow)
    BinOp op = BinOp::add;
    Fn fn = Fn::neg;
    int lhs = -1;  // child for unary / int_pow
    int rhs = -1;
    friend bool operator==(const Node&, const Node&) = default;
  };

  static constexpr int kMaxDepth = 64;
  static constexpr std::size_t kMaxNodes = 10000;

  static Expr parse(std::string_view text, int n);

  int dim() const { return dim_; }
  const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  int root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }

  double eval(const Point& p) const;
  Jet2 eval_jet(const Point& p) const;

  /// Fully parenthesised text that parses back to the same tree.
  std::string to_string() const;

  /// Structural equality (same tree shape and leaves, node numbering aside).
  bool same_structure(const Expr& other) const;

  // Builders used by code that assembles expressions programmatically.
  static Expr constant(int n, double v);
  static Expr coordinate(int n, int index0);
  static Expr binary(BinOp op, const Expr& lhs, const Expr& rhs);
  static Expr unary(Fn fn, const Expr& child);
  static Expr int_pow(const Expr& base, int exponent);

 private:
  friend class ExprParser;
  int dim_ = 0;
  int root_ = -1;
  std::vector<Node> nodes_;

  int graft(const Expr& other);
};

Expr parse(std::string_view text, int n);
double eval_scalar(const Expr& e, const Point& p);
Jet2 eval_jet(const Expr& e, const Point& p);

}  // namespace hsol
