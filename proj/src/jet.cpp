#include "hsol/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsol/format.hpp"

namespace hsol {

namespace {

void require_same_dim(const Jet2& a, const Jet2& b) {
  if (a.n != b.n) {
    throw std::invalid_argument("jet dimension mismatch: " + std::to_string(a.n) + " vs " + std::to_string(b.n));
  }
}

// out = f(v) with gradient f1 * g and Hessian f2 * g g^T + f1 * H
Jet2 chain(const Jet2& x, double f0, double f1, double f2) {
  Jet2 r(x.n, f0);
  for (int i = 0; i < x.n; ++i) r.grad[static_cast<std::size_t>(i)] = f1 * x.d(i);
  for (int i = 0; i < x.n; ++i) {
    for (int j = i; j < x.n; ++j) r.set_dd(i, j, f2 * x.d(i) * x.d(j) + f1 * x.dd(i, j));
  }
  return r;
}

Jet2 scaled(const Jet2& x, double s) {
  Jet2 r(x.n, x.value * s);
  for (std::size_t i = 0; i < r.grad.size(); ++i) r.grad[i] = x.grad[i] * s;
  for (std::size_t i = 0; i < r.hess.size(); ++i) r.hess[i] = x.hess[i] * s;
  return r;
}

}  // namespace

Jet2 Jet2::coordinate(const Point& p, int i) {
  Jet2 j(p.dim(), p[i]);
  j.grad[static_cast<std::size_t>(i)] = 1.0;
  return j;
}

double Jet2::laplacian() const {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += dd(i, i);
  return s;
}

Jet2 jet_combine(JetOp op, const Jet2& a, const Jet2& b) {
  if (op == JetOp::neg) return -a;
  require_same_dim(a, b);
  const int n = a.n;
  switch (op) {
    case JetOp::add:
    case JetOp::sub: {
      const double s = op == JetOp::add ? 1.0 : -1.0;
      Jet2 r(n, op == JetOp::add ? a.value + b.value : a.value - b.value);
      for (std::size_t i = 0; i < r.grad.size(); ++i) r.grad[i] = a.grad[i] + s * b.grad[i];
      for (std::size_t i = 0; i < r.hess.size(); ++i) r.hess[i] = a.hess[i] + s * b.hess[i];
      return r;
    }
    case JetOp::mul: {
      Jet2 r(n, a.value * b.value);
      for (int i = 0; i < n; ++i) r.grad[static_cast<std::size_t>(i)] = a.d(i) * b.value + a.value * b.d(i);
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          r.set_dd(i, j, a.dd(i, j) * b.value + a.value * b.dd(i, j) + a.d(i) * b.d(j) + a.d(j) * b.d(i));
        }
      }
      return r;
    }
    case JetOp::div: {
      if (b.value == 0.0) throw DomainError("division by zero (div)");
      // q = a / b, so a = q b; differentiate that identity twice.
      Jet2 r(n, a.value / b.value);
      const double q = r.value;
      for (int i = 0; i < n; ++i) r.grad[static_cast<std::size_t>(i)] = (a.d(i) - q * b.d(i)) / b.value;
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          r.set_dd(i, j, (a.dd(i, j) - q * b.dd(i, j) - b.d(i) * r.d(j) - r.d(i) * b.d(j)) / b.value);
        }
      }
      return r;
    }
    case JetOp::neg:
      break;
  }
  return -a;
}

Jet2 jet_unary(JetFn fn, const Jet2& x) {
  const double v = x.value;
  switch (fn) {
    case JetFn::exp: {
      const double e = std::exp(v);
      return chain(x, e, e, e);
    }
    case JetFn::log:
      if (!(v > 0.0)) throw DomainError("log of non-positive value " + format_shortest(v));
      return chain(x, std::log(v), 1.0 / v, -1.0 / (v * v));
    case JetFn::sin:
      return chain(x, std::sin(v), std::cos(v), -std::sin(v));
    case JetFn::cos:
      return chain(x, std::cos(v), -std::sin(v), -std::cos(v));
    case JetFn::sqrt: {
      if (!(v > 0.0)) throw DomainError("sqrt of non-positive value " + format_shortest(v));
      const double s = std::sqrt(v);
      return chain(x, s, 0.5 / s, -0.25 / (s * v));
    }
  }
  return x;
}

double pow_int(double base, int exponent) {
  if (exponent < 0) return 1.0 / pow_int(base, -exponent);
  double result = 1.0;
  bool first = true;
  unsigned k = static_cast<unsigned>(exponent);
  while (k != 0) {
    if (k & 1u) {
      result = first ? base : result * base;
      first = false;
    }
    k >>= 1u;
    if (k != 0) base = base * base;
  }
  return result;
}

Jet2 pow_int(const Jet2& base, int exponent) {
  if (exponent < 0) {
    auto p = pow_int(base, -exponent);
    if (p.value == 0.0) throw DomainError("division by zero (pow_int with negative exponent)");
    return 1.0 / p;
  }
  Jet2 result = Jet2::constant(base.n, 1.0);
  Jet2 b = base;
  bool first = true;
  unsigned k = static_cast<unsigned>(exponent);
  while (k != 0) {
    if (k & 1u) {
      result = first ? b : result * b;
      first = false;
    }
    k >>= 1u;
    if (k != 0) b = b * b;
  }
  return result;
}

Jet2 operator+(const Jet2& a, const Jet2& b) { return jet_combine(JetOp::add, a, b); }
Jet2 operator-(const Jet2& a, const Jet2& b) { return jet_combine(JetOp::sub, a, b); }
Jet2 operator*(const Jet2& a, const Jet2& b) { return jet_combine(JetOp::mul, a, b); }
Jet2 operator/(const Jet2& a, const Jet2& b) { return jet_combine(JetOp::div, a, b); }
Jet2 operator-(const Jet2& a) { return scaled(a, -1.0); }

Jet2 operator+(const Jet2& a, double b) {
  Jet2 r = a;
  r.value += b;
  return r;
}
Jet2 operator+(double a, const Jet2& b) {
  Jet2 r = b;
  r.value = a + b.value;
  return r;
}
Jet2 operator-(const Jet2& a, double b) {
  Jet2 r = a;
  r.value -= b;
  return r;
}
Jet2 operator-(double a, const Jet2& b) {
  Jet2 r = -b;
  r.value = a - b.value;
  return r;
}
Jet2 operator*(double a, const Jet2& b) { return scaled(b, a); }
Jet2 operator*(const Jet2& a, double b) { return scaled(a, b); }
Jet2 operator/(const Jet2& a, double b) {
  if (b == 0.0) throw DomainError("division by zero (div)");
  Jet2 r(a.n, a.value / b);
  for (std::size_t i = 0; i < r.grad.size(); ++i) r.grad[i] = a.grad[i] / b;
  for (std::size_t i = 0; i < r.hess.size(); ++i) r.hess[i] = a.hess[i] / b;
  return r;
}
Jet2 operator/(double a, const Jet2& b) { return Jet2::constant(b.n, a) / b; }

Jet2 exp(const Jet2& x) { return jet_unary(JetFn::exp, x); }
Jet2 log(const Jet2& x) { return jet_unary(JetFn::log, x); }
Jet2 sin(const Jet2& x) { return jet_unary(JetFn::sin, x); }
Jet2 cos(const Jet2& x) { return jet_unary(JetFn::cos, x); }
Jet2 sqrt(const Jet2& x) { return jet_unary(JetFn::sqrt, x); }

FdSteps default_fd_steps(const Point& p) {
  const double cap = p.height() / 4.0;
  return FdSteps{std::min(1e-5, cap), std::min(1e-4, cap)};
}

Jet2 fd_derivatives(const ScalarFunction& f, const Point& p, FdSteps steps) {
  const int n = p.dim();
  const double hmax = std::max(steps.gradient, steps.hessian);
  if (!(steps.gradient > 0.0) || !(steps.hessian > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  if (p.height() - hmax < kHeightFloor) {
    throw DomainError("finite-difference stencil leaves H^n at x_n = " + format_shortest(p.height()) +
                      "; use a step smaller than " + format_shortest(p.height() / 2));
  }
  Jet2 r(n, f(p));
  const double h = steps.gradient;
  for (int i = 0; i < n; ++i) {
    r.grad[static_cast<std::size_t>(i)] = (f(p.shifted(i, h)) - f(p.shifted(i, -h))) / (2.0 * h);
  }
  const double k = steps.hessian;
  for (int i = 0; i < n; ++i) {
    r.set_dd(i, i, (f(p.shifted(i, k)) - 2.0 * r.value + f(p.shifted(i, -k))) / (k * k));
    for (int j = i + 1; j < n; ++j) {
      const double pp = f(p.shifted(i, k).shifted(j, k));
      const double pm = f(p.shifted(i, k).shifted(j, -k));
      const double mp = f(p.shifted(i, -k).shifted(j, k));
      const double mm = f(p.shifted(i, -k).shifted(j, -k));
      r.set_dd(i, j, (pp - pm - mp + mm) / (4.0 * k * k));
    }
  }
  return r;
}

double relative_deviation(double a, double b) {
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace hsol
