#include "hsol/fields.hpp"

#include <cmath>
#include <type_traits>

namespace hsol {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dim(const Point& p, int n, const char* what) {
  if (p.dim() != n) {
    throw std::invalid_argument(std::string(what) + " has dimension " + std::to_string(n) + " but the point has " +
                                std::to_string(p.dim()));
  }
}

std::vector<Jet2> killing_2d_jets(const Killing2D& k, const Point& p) {
  require_dim(p, 2, "killing2d field");
  const double x = p[0];
  const double y = p[1];
  Jet2 m(2, (k.a / 2) * (x * x - y * y) + k.b * x + k.c);
  m.grad = {k.a * x + k.b, -(k.a * y)};
  m.set_dd(0, 0, k.a);
  m.set_dd(1, 1, -k.a);
  Jet2 nn(2, (k.a * x + k.b) * y);
  nn.grad = {k.a * y, k.a * x + k.b};
  nn.set_dd(0, 1, k.a);
  return {m, nn};
}

std::vector<Jet2> killing_nd_jets(const KillingND& f, const Point& p) {
  require_dim(p, f.n, "killing_nd field");
  const int n = f.n;
  const int m = n - 1;
  auto A = [&](int i) { return f.a[static_cast<std::size_t>(i)]; };
  double S = 0.0;
  for (int i = 0; i < m; ++i) S += A(i) * p[i];

  std::vector<Jet2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < m; ++k) {
    double sumsq_others = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != k) sumsq_others += p[j] * p[j];
    }
    double lin_others = 0.0;
    for (int i = 0; i < m; ++i) {
      if (i != k) lin_others += A(i) * p[i];
    }
    const double xk = p[k];
    Jet2 J(n, (A(k) / 2) * (xk * xk - sumsq_others) + (lin_others + f.b) * xk + f.c[static_cast<std::size_t>(k)]);
    for (int j = 0; j < m; ++j) {
      J.grad[static_cast<std::size_t>(j)] = j == k ? A(k) * xk + (lin_others + f.b) : A(j) * xk - A(k) * p[j];
    }
    J.grad[static_cast<std::size_t>(m)] = -(A(k) * p[m]);
    for (int j = 0; j < n; ++j) J.set_dd(j, j, j == k ? A(k) : -A(k));
    for (int j = 0; j < m; ++j) {
      if (j != k) J.set_dd(k, j, A(j));
    }
    out.push_back(std::move(J));
  }
  Jet2 last(n, (S + f.b) * p[m]);
  for (int i = 0; i < m; ++i) {
    last.grad[static_cast<std::size_t>(i)] = A(i) * p[m];
    last.set_dd(i, m, A(i));
  }
  last.grad[static_cast<std::size_t>(m)] = S + f.b;
  out.push_back(std::move(last));
  return out;
}

// X_i = x_n (a x_i + b_i), X_n = (a/2) x_n^2 - (Q + c) with Q = sum (a/2 x_i^2 + b_i x_i).
std::vector<Jet2> gradient_jets(const PotentialParams& f, const Point& p) {
  require_dim(p, f.n, "potential");
  const int n = f.n;
  const int m = n - 1;
  const double h = p[m];
  double Q = 0.0;
  for (int i = 0; i < m; ++i) Q += (f.a / 2) * p[i] * p[i] + f.b[static_cast<std::size_t>(i)] * p[i];
  std::vector<Jet2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < m; ++i) {
    const double lin = f.a * p[i] + f.b[static_cast<std::size_t>(i)];
    Jet2 J(n, h * lin);
    J.grad[static_cast<std::size_t>(i)] = f.a * h;
    J.grad[static_cast<std::size_t>(m)] = lin;
    J.set_dd(i, m, f.a);
    out.push_back(std::move(J));
  }
  Jet2 last(n, (f.a / 2) * h * h - (Q + f.c));
  for (int i = 0; i < m; ++i) {
    last.grad[static_cast<std::size_t>(i)] = -(f.a * p[i] + f.b[static_cast<std::size_t>(i)]);
    last.set_dd(i, i, -f.a);
  }
  last.grad[static_cast<std::size_t>(m)] = f.a * h;
  last.set_dd(m, m, f.a);
  out.push_back(std::move(last));
  return out;
}

}  // namespace

int field_dimension(const VectorFieldSpec& X) {
  return std::visit(overloaded{
                        [](const Killing2D&) { return 2; },
                        [](const KillingND& k) { return k.n; },
                        [](const GradientOfPotential& g) { return g.potential.n; },
                        [](const ConstantField& c) { return static_cast<int>(c.v.size()); },
                        [](const CustomField& c) { return static_cast<int>(c.components.size()); },
                    },
                    X);
}

std::string field_family_name(const VectorFieldSpec& X) {
  return std::visit(overloaded{
                        [](const Killing2D&) { return std::string("killing2d"); },
                        [](const KillingND&) { return std::string("killing_nd"); },
                        [](const GradientOfPotential&) { return std::string("gradient"); },
                        [](const ConstantField&) { return std::string("constant"); },
                        [](const CustomField&) { return std::string("custom"); },
                    },
                    X);
}

VectorFieldSpec build_killing_2d(double a, double b, double c) { return Killing2D{a, b, c}; }

VectorFieldSpec build_killing_nd(int n, std::vector<double> a, double b, std::vector<double> c) {
  check_dimension(n);
  const auto want = static_cast<std::size_t>(n - 1);
  if (a.size() != want || c.size() != want) {
    throw ConfigError("killing_nd in dimension " + std::to_string(n) + " needs " + std::to_string(want) +
                      " entries in a and c, got " + std::to_string(a.size()) + " and " + std::to_string(c.size()));
  }
  return KillingND{n, std::move(a), b, std::move(c)};
}

VectorFieldSpec build_custom_field(int n, const std::vector<std::string>& components) {
  check_dimension(n);
  if (components.size() != static_cast<std::size_t>(n)) {
    throw ConfigError("custom field in dimension " + std::to_string(n) + " needs " + std::to_string(n) +
                      " components, got " + std::to_string(components.size()));
  }
  CustomField f;
  for (const auto& s : components) f.components.push_back(Expr::parse(s, n));
  f.sources = components;
  return f;
}

void validate_potential(const PotentialParams& params) {
  check_dimension(params.n);
  if (params.b.size() != static_cast<std::size_t>(params.n - 1)) {
    throw ConfigError("potential in dimension " + std::to_string(params.n) + " needs " + std::to_string(params.n - 1) +
                      " entries in b, got " + std::to_string(params.b.size()));
  }
  bool finite = std::isfinite(params.a) && std::isfinite(params.c) && std::isfinite(params.e);
  for (double v : params.b) finite = finite && std::isfinite(v);
  if (!finite) throw ConfigError("potential parameters must be finite");
}

double potential_value(const PotentialParams& f, const Point& p) {
  require_dim(p, f.n, "potential");
  const int m = f.n - 1;
  const double h = p[m];
  double Q = 0.0;
  for (int i = 0; i < m; ++i) Q += (f.a / 2) * p[i] * p[i] + f.b[static_cast<std::size_t>(i)] * p[i];
  return Q / h + (f.a / 2) * h + f.c / h + f.e;
}

Jet2 potential_jet(const PotentialParams& f, const Point& p) {
  require_dim(p, f.n, "potential");
  const int n = f.n;
  const int m = n - 1;
  const Jet2 h = Jet2::coordinate(p, m);
  Jet2 Q(n);
  for (int i = 0; i < m; ++i) {
    const Jet2 xi = Jet2::coordinate(p, i);
    Q = Q + (f.a / 2) * xi * xi + f.b[static_cast<std::size_t>(i)] * xi;
  }
  return Q / h + (f.a / 2) * h + f.c / h + f.e;
}

double potential_polynomial(const PotentialParams& f, const Point& p) {
  require_dim(p, f.n, "potential");
  const int m = f.n - 1;
  double P = (f.a / 2) * p[m] * p[m] + f.c;
  for (int k = 0; k < m; ++k) P += (f.a / 2) * p[k] * p[k] + f.b[static_cast<std::size_t>(k)] * p[k];
  return P;
}

std::vector<double> gradient_field_at(const PotentialParams& params, const Point& p) {
  std::vector<double> out;
  for (const auto& j : gradient_jets(params, p)) out.push_back(j.value);
  return out;
}

std::vector<Jet2> field_jet_at(const VectorFieldSpec& X, const Point& p) {
  return std::visit(overloaded{
                        [&](const Killing2D& k) { return killing_2d_jets(k, p); },
                        [&](const KillingND& k) { return killing_nd_jets(k, p); },
                        [&](const GradientOfPotential& g) { return gradient_jets(g.potential, p); },
                        [&](const ConstantField& c) {
                          require_dim(p, static_cast<int>(c.v.size()), "constant field");
                          std::vector<Jet2> out;
                          for (double v : c.v) out.push_back(Jet2::constant(p.dim(), v));
                          return out;
                        },
                        [&](const CustomField& c) {
                          require_dim(p, static_cast<int>(c.components.size()), "custom field");
                          std::vector<Jet2> out;
                          for (const auto& e : c.components) out.push_back(e.eval_jet(p));
                          return out;
                        },
                    },
                    X);
}

std::vector<double> field_value_at(const VectorFieldSpec& X, const Point& p) {
  if (const auto* c = std::get_if<CustomField>(&X)) {
    require_dim(p, static_cast<int>(c->components.size()), "custom field");
    std::vector<double> out;
    for (const auto& e : c->components) out.push_back(e.eval(p));
    return out;
  }
  std::vector<double> out;
  for (const auto& j : field_jet_at(X, p)) out.push_back(j.value);
  return out;
}

ZeroFreeVerdict zero_free_check(const PotentialParams& f) {
  validate_potential(f);
  double bsq = 0.0;
  bool b_zero = true;
  for (double b : f.b) {
    bsq += b * b;
    b_zero = b_zero && b == 0.0;
  }
  if (f.a == 0.0) {
    if (b_zero && f.c == 0.0) return ZeroFreeVerdict::degenerate_zero_polynomial;
    return (b_zero && f.c != 0.0) ? ZeroFreeVerdict::zero_free : ZeroFreeVerdict::has_zero;
  }
  // a > 0: P ranges over (c - |b|^2/2a, inf); a < 0: over (-inf, c - |b|^2/2a).
  const double bound = bsq / (2 * f.a);
  if (f.a > 0) return f.c >= bound ? ZeroFreeVerdict::zero_free : ZeroFreeVerdict::has_zero;
  return f.c <= bound ? ZeroFreeVerdict::zero_free : ZeroFreeVerdict::has_zero;
}

std::string to_string(ZeroFreeVerdict v) {
  switch (v) {
    case ZeroFreeVerdict::zero_free: return "zero-free";
    case ZeroFreeVerdict::has_zero: return "has-zero";
    case ZeroFreeVerdict::degenerate_zero_polynomial: return "degenerate-zero-polynomial";
  }
  return "?";
}

double conformal_numerator(int n, double lambda, double rho) {
  const double nn = static_cast<double>(n);
  return lambda + (nn - 1) * (1 - nn * rho);
}

bool is_degenerate_lambda(int n, double lambda, double rho) {
  const double nn = static_cast<double>(n);
  const double critical = -(nn - 1) * (1 - nn * rho);
  return std::fabs(lambda - critical) <= 1e-12 * std::fmax(1.0, std::fabs(critical));
}

ConformalFactorSpec derived_conformal_factor(const PotentialParams& params, double lambda, double rho) {
  const int n = params.n;
  switch (zero_free_check(params)) {
    case ZeroFreeVerdict::zero_free: break;
    case ZeroFreeVerdict::has_zero:
      throw ConfigError("P has zeros in H^" + std::to_string(n) +
                        ": G = K x_n / P needs P zero-free (a > 0: c >= sum b_k^2/(2a); a < 0: c <= sum b_k^2/(2a); "
                        "a = 0: b = 0 and c != 0)");
    case ZeroFreeVerdict::degenerate_zero_polynomial:
      throw ConfigError("P is identically zero (a = b = c = 0): F is constant and G is unconstrained");
  }
  if (is_degenerate_lambda(n, lambda, rho)) {
    throw ConfigError("degenerate case lambda = -(n-1)(1-n*rho): F must be constant and G is unconstrained");
  }
  return DerivedFactor{params, lambda, rho};
}

double conformal_value(const ConformalFactorSpec& G, const Point& p) {
  return std::visit(overloaded{
                        [](const UnitFactor&) { return 1.0; },
                        [&](const DerivedFactor& d) {
                          const double P = potential_polynomial(d.potential, p);
                          if (P == 0.0) throw DomainError("conformal factor denominator P vanishes");
                          return conformal_numerator(d.potential.n, d.lambda, d.rho) * p.height() / P;
                        },
                        [&](const CustomFactor& c) { return c.expr.eval(p); },
                    },
                    G);
}

}  // namespace hsol
