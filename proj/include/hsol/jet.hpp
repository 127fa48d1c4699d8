#pragma once

#include <functional>
#include <vector>

#include "hsol/types.hpp"

namespace hsol {

/// Order-2 Taylor data of a scalar function at a point: value, gradient and
/// symmetric Hessian. Arithmetic on jets propagates exact first and second
/// derivatives through composition.
struct Jet2 {
  int n = 0;
  double value = 0.0;
  std::vector<double> grad;
  std::vector<double> hess;  // row-major n x n, mirrored

  explicit Jet2(int dim = 0, double v = 0.0)
      : n(dim), value(v), grad(static_cast<std::size_t>(dim), 0.0),
        hess(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0.0) {}

  static Jet2 constant(int dim, double v) { return Jet2(dim, v); }
  /// Jet of the coordinate function x_i (0-based) at p.
  static Jet2 coordinate(const Point& p, int i);

  double d(int i) const { return grad[static_cast<std::size_t>(i)]; }
  double dd(int i, int j) const { return hess[static_cast<std::size_t>(i * n + j)]; }
  void set_dd(int i, int j, double v) {
    hess[static_cast<std::size_t>(i * n + j)] = v;
    hess[static_cast<std::size_t>(j * n + i)] = v;
  }
  double laplacian() const;

  friend bool operator==(const Jet2&, const Jet2&) = default;
};

enum class JetOp { add, sub, mul, div, neg };
enum class JetFn { exp, log, sin, cos, sqrt };

Jet2 jet_combine(JetOp op, const Jet2& lhs, const Jet2& rhs);
Jet2 jet_unary(JetFn fn, const Jet2& arg);
Jet2 pow_int(const Jet2& base, int exponent);

/// Repeated-squaring power on plain doubles; same multiplication sequence as
/// pow_int so value slots agree bit for bit.
double pow_int(double base, int exponent);

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator+(const Jet2& a, double b);
Jet2 operator+(double a, const Jet2& b);
Jet2 operator-(const Jet2& a, double b);
Jet2 operator-(double a, const Jet2& b);
Jet2 operator*(double a, const Jet2& b);
Jet2 operator*(const Jet2& a, double b);
Jet2 operator/(const Jet2& a, double b);
Jet2 operator/(double a, const Jet2& b);

Jet2 exp(const Jet2& x);
Jet2 log(const Jet2& x);
Jet2 sin(const Jet2& x);
Jet2 cos(const Jet2& x);
Jet2 sqrt(const Jet2& x);

/// Step sizes for the central-difference oracle.
struct FdSteps {
  double gradient = 1e-5;
  double hessian = 1e-4;
};

/// Default steps at p, shrunk so that x_n - 2h >= x_n / 2.
FdSteps default_fd_steps(const Point& p);

using ScalarFunction = std::function<double(const Point&)>;

/// Central finite differences: 2-point gradient, 3-point diagonal and 4-point
/// mixed Hessian stencils. Independent of the jet arithmetic above.
Jet2 fd_derivatives(const ScalarFunction& f, const Point& p, FdSteps steps);
inline Jet2 fd_derivatives(const ScalarFunction& f, const Point& p, double h) {
  return fd_derivatives(f, p, FdSteps{h, h});
}

/// |a - b| / max(1, |a|, |b|)
double relative_deviation(double a, double b);

}  // namespace hsol
