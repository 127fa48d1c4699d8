#include "hsol/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>

#include "hsol/format.hpp"

namespace hsol {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("at position " + std::to_string(position) + ": " + message), position_(position) {}

class ExprParser {
 public:
  ExprParser(std::string_view text, int n) : text_(text), n_(n) { out_.dim_ = n; }

  Expr run() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "empty expression");
    int root = parse_expr(1);
    skip_ws();
    if (pos_ < text_.size()) {
      throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "', expected operator or end of input");
    }
    out_.root_ = root;
    return std::move(out_);
  }

 private:
  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
  Expr out_;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() { return at_end() ? '\0' : text_[pos_]; }

  std::string describe_here() {
    if (at_end()) return "end of input";
    return std::string("'") + text_[pos_] + "'";
  }

  void check_depth(int depth) {
    if (depth > Expr::kMaxDepth) throw ParseError(pos_, "expression nested deeper than 64 levels");
  }

  int push(Expr::Node node) {
    if (out_.nodes_.size() >= Expr::kMaxNodes) throw ParseError(pos_, "expression has more than 10000 nodes");
    out_.nodes_.push_back(node);
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int parse_expr(int depth) {
    check_depth(depth);
    int lhs = parse_term(depth + 1);
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      int rhs = parse_term(depth + 1);
      Expr::Node node;
      node.kind = Expr::Kind::binary;
      node.op = c == '+' ? Expr::BinOp::add : Expr::BinOp::sub;
      node.lhs = lhs;
      node.rhs = rhs;
      lhs = push(node);
    }
  }

  int parse_term(int depth) {
    check_depth(depth);
    int lhs = parse_factor(depth + 1);
    for (;;) {
      char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      int rhs = parse_factor(depth + 1);
      Expr::Node node;
      node.kind = Expr::Kind::binary;
      node.op = c == '*' ? Expr::BinOp::mul : Expr::BinOp::div;
      node.lhs = lhs;
      node.rhs = rhs;
      lhs = push(node);
    }
  }

  int parse_factor(int depth) {
    check_depth(depth);
    if (peek() == '-') {
      ++pos_;
      int child = parse_factor(depth + 1);
      Expr::Node node;
      node.kind = Expr::Kind::unary;
      node.fn = Expr::Fn::neg;
      node.lhs = child;
      return push(node);
    }
    int base = parse_base(depth + 1);
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
      skip_ws();
    }
    const std::size_t digits_start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits_start) throw ParseError(start, "exponent must be an integer literal, found " + describe_here());
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      throw ParseError(start, "exponent must be an integer literal");
    }
    int k = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + digits_start, text_.data() + pos_, k);
    if (ec != std::errc{} || k > 1024) throw ParseError(start, "integer exponent out of range");
    Expr::Node node;
    node.kind = Expr::Kind::int_pow;
    node.lhs = base;
    node.index = negative ? -k : k;
    return push(node);
  }

  int parse_base(int depth) {
    check_depth(depth);
    if (at_end()) throw ParseError(pos_, "unexpected end of input, expected a number, coordinate, function or '('");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      int inner = parse_expr(depth + 1);
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier(depth);
    throw ParseError(pos_, std::string("unexpected '") + c + "', expected a number, coordinate, function or '('");
  }

  void expect(char want) {
    if (peek() != want) throw ParseError(pos_, std::string("expected '") + want + "', found " + describe_here());
    ++pos_;
  }

  int parse_number() {
    const std::size_t start = pos_;
    std::size_t i = pos_;
    auto digits = [&] {
      std::size_t s = i;
      while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
      return i - s;
    };
    std::size_t mantissa = digits();
    if (i < text_.size() && text_[i] == '.') {
      ++i;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError(start, "malformed number");
    if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
      ++i;
      if (i < text_.size() && (text_[i] == '+' || text_[i] == '-')) ++i;
      if (digits() == 0) throw ParseError(i, "malformed number exponent");
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + i, v);
    if (ec != std::errc{} || ptr != text_.data() + i || !std::isfinite(v)) {
      throw ParseError(start, "number out of range");
    }
    pos_ = i;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      throw ParseError(pos_, "implicit multiplication is not supported; insert '*'");
    }
    Expr::Node node;
    node.kind = Expr::Kind::constant;
    node.value = v;
    return push(node);
  }

  int parse_identifier(int depth) {
    const std::size_t start = pos_;
    std::size_t i = pos_;
    while (i < text_.size() && std::isalpha(static_cast<unsigned char>(text_[i]))) ++i;
    std::string_view word = text_.substr(start, i - start);
    if (word == "x" && i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) {
      std::size_t d = i;
      while (d < text_.size() && std::isdigit(static_cast<unsigned char>(text_[d]))) ++d;
      int k = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + i, text_.data() + d, k);
      if (ec != std::errc{} || k < 1 || k > n_) {
        throw ParseError(start, "coordinate index out of range: " + std::string(text_.substr(start, d - start)) +
                                    " (valid x1..x" + std::to_string(n_) + ")");
      }
      pos_ = d;
      if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        throw ParseError(pos_, "unexpected character after coordinate");
      }
      Expr::Node node;
      node.kind = Expr::Kind::coord;
      node.index = k - 1;
      return push(node);
    }
    Expr::Fn fn;
    if (word == "exp") fn = Expr::Fn::exp;
    else if (word == "log") fn = Expr::Fn::log;
    else if (word == "sin") fn = Expr::Fn::sin;
    else if (word == "cos") fn = Expr::Fn::cos;
    else if (word == "sqrt") fn = Expr::Fn::sqrt;
    else throw ParseError(start, "unknown identifier '" + std::string(word) + "'");
    pos_ = i;
    expect('(');
    int child = parse_expr(depth + 1);
    expect(')');
    Expr::Node node;
    node.kind = Expr::Kind::unary;
    node.fn = fn;
    node.lhs = child;
    return push(node);
  }
};

Expr Expr::parse(std::string_view text, int n) {
  check_dimension(n);
  return ExprParser(text, n).run();
}

namespace {

const char* fn_name(Expr::Fn fn) {
  switch (fn) {
    case Expr::Fn::neg: return "-";
    case Expr::Fn::exp: return "exp";
    case Expr::Fn::log: return "log";
    case Expr::Fn::sin: return "sin";
    case Expr::Fn::cos: return "cos";
    case Expr::Fn::sqrt: return "sqrt";
  }
  return "?";
}

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

}  // namespace

double Expr::eval(const Point& p) const {
  if (p.dim() != dim_) throw std::invalid_argument("expression dimension does not match point");
  std::function<double(int)> rec = [&](int i) -> double {
    const Node& nd = node(i);
    switch (nd.kind) {
      case Kind::constant: return nd.value;
      case Kind::coord: return p[nd.index];
      case Kind::binary: {
        const double a = rec(nd.lhs);
        const double b = rec(nd.rhs);
        switch (nd.op) {
          case BinOp::add: return finite_or_throw(a + b, "add");
          case BinOp::sub: return finite_or_throw(a - b, "sub");
          case BinOp::mul: return finite_or_throw(a * b, "mul");
          case BinOp::div:
            if (b == 0.0) throw DomainError("division by zero (div)");
            return finite_or_throw(a / b, "div");
        }
        break;
      }
      case Kind::unary: {
        const double a = rec(nd.lhs);
        switch (nd.fn) {
          case Fn::neg: return -a;
          case Fn::exp: return finite_or_throw(std::exp(a), "exp");
          case Fn::log:
            if (!(a > 0.0)) throw DomainError("log of non-positive value " + format_shortest(a));
            return std::log(a);
          case Fn::sin: return std::sin(a);
          case Fn::cos: return std::cos(a);
          case Fn::sqrt:
            if (!(a > 0.0)) throw DomainError("sqrt of non-positive value " + format_shortest(a));
            return std::sqrt(a);
        }
        break;
      }
      case Kind::int_pow: {
        const double a = rec(nd.lhs);
        if (nd.index < 0 && pow_int(a, -nd.index) == 0.0) throw DomainError("division by zero (pow_int with negative exponent)");
        return finite_or_throw(pow_int(a, nd.index), "pow_int");
      }
    }
    throw std::logic_error("corrupt expression node");
  };
  return rec(root_);
}

Jet2 Expr::eval_jet(const Point& p) const {
  if (p.dim() != dim_) throw std::invalid_argument("expression dimension does not match point");
  std::function<Jet2(int)> rec = [&](int i) -> Jet2 {
    const Node& nd = node(i);
    switch (nd.kind) {
      case Kind::constant: return Jet2::constant(dim_, nd.value);
      case Kind::coord: return Jet2::coordinate(p, nd.index);
      case Kind::binary: {
        const Jet2 a = rec(nd.lhs);
        const Jet2 b = rec(nd.rhs);
        switch (nd.op) {
          case BinOp::add: return a + b;
          case BinOp::sub: return a - b;
          case BinOp::mul: return a * b;
          case BinOp::div: return a / b;
        }
        break;
      }
      case Kind::unary: {
        const Jet2 a = rec(nd.lhs);
        switch (nd.fn) {
          case Fn::neg: return -a;
          case Fn::exp: return exp(a);
          case Fn::log: return log(a);
          case Fn::sin: return sin(a);
          case Fn::cos: return cos(a);
          case Fn::sqrt: return sqrt(a);
        }
        break;
      }
      case Kind::int_pow: return pow_int(rec(nd.lhs), nd.index);
    }
    throw std::logic_error("corrupt expression node");
  };
  Jet2 out = rec(root_);
  bool finite = std::isfinite(out.value);
  for (double g : out.grad) finite = finite && std::isfinite(g);
  for (double h : out.hess) finite = finite && std::isfinite(h);
  if (!finite) throw DomainError("non-finite derivative in expression evaluation");
  return out;
}

std::string Expr::to_string() const {
  std::function<std::string(int)> rec = [&](int i) -> std::string {
    const Node& nd = node(i);
    switch (nd.kind) {
      case Kind::constant: return format_shortest(nd.value);
      case Kind::coord: return "x" + std::to_string(nd.index + 1);
      case Kind::binary: {
        static const char* ops[] = {" + ", " - ", " * ", " / "};
        return "(" + rec(nd.lhs) + ops[static_cast<int>(nd.op)] + rec(nd.rhs) + ")";
      }
      case Kind::unary:
        if (nd.fn == Fn::neg) return "-(" + rec(nd.lhs) + ")";
        return std::string(fn_name(nd.fn)) + "(" + rec(nd.lhs) + ")";
      case Kind::int_pow: return "(" + rec(nd.lhs) + ")^" + std::to_string(nd.index);
    }
    return "?";
  };
  return rec(root_);
}

bool Expr::same_structure(const Expr& other) const {
  if (dim_ != other.dim_) return false;
  std::function<bool(int, int)> rec = [&](int a, int b) -> bool {
    const Node& x = node(a);
    const Node& y = other.node(b);
    if (x.kind != y.kind) return false;
    switch (x.kind) {
      case Kind::constant: return x.value == y.value;
      case Kind::coord: return x.index == y.index;
      case Kind::binary: return x.op == y.op && rec(x.lhs, y.lhs) && rec(x.rhs, y.rhs);
      case Kind::unary: return x.fn == y.fn && rec(x.lhs, y.lhs);
      case Kind::int_pow: return x.index == y.index && rec(x.lhs, y.lhs);
    }
    return false;
  };
  return rec(root_, other.root_);
}

int Expr::graft(const Expr& other) {
  const int offset = static_cast<int>(nodes_.size());
  for (Node nd : other.nodes_) {
    if (nd.lhs >= 0) nd.lhs += offset;
    if (nd.rhs >= 0) nd.rhs += offset;
    nodes_.push_back(nd);
  }
  return other.root_ + offset;
}

Expr Expr::constant(int n, double v) {
  Expr e;
  e.dim_ = n;
  Node nd;
  nd.kind = Kind::constant;
  nd.value = v;
  e.nodes_.push_back(nd);
  e.root_ = 0;
  return e;
}

Expr Expr::coordinate(int n, int index0) {
  if (index0 < 0 || index0 >= n) throw std::out_of_range("coordinate index out of range");
  Expr e;
  e.dim_ = n;
  Node nd;
  nd.kind = Kind::coord;
  nd.index = index0;
  e.nodes_.push_back(nd);
  e.root_ = 0;
  return e;
}

Expr Expr::binary(BinOp op, const Expr& lhs, const Expr& rhs) {
  if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("expression dimension mismatch");
  Expr e;
  e.dim_ = lhs.dim_;
  Node nd;
  nd.kind = Kind::binary;
  nd.op = op;
  nd.lhs = e.graft(lhs);
  nd.rhs = e.graft(rhs);
  e.nodes_.push_back(nd);
  e.root_ = static_cast<int>(e.nodes_.size()) - 1;
  return e;
}

Expr Expr::unary(Fn fn, const Expr& child) {
  Expr e;
  e.dim_ = child.dim_;
  Node nd;
  nd.kind = Kind::unary;
  nd.fn = fn;
  nd.lhs = e.graft(child);
  e.nodes_.push_back(nd);
  e.root_ = static_cast<int>(e.nodes_.size()) - 1;
  return e;
}

Expr Expr::int_pow(const Expr& base, int exponent) {
  Expr e;
  e.dim_ = base.dim_;
  Node nd;
  nd.kind = Kind::int_pow;
  nd.index = exponent;
  nd.lhs = e.graft(base);
  e.nodes_.push_back(nd);
  e.root_ = static_cast<int>(e.nodes_.size()) - 1;
  return e;
}

Expr parse(std::string_view text, int n) { return Expr::parse(text, n); }
double eval_scalar(const Expr& e, const Point& p) { return e.eval(p); }
Jet2 eval_jet(const Expr& e, const Point& p) { return e.eval_jet(p); }

}  // namespace hsol
