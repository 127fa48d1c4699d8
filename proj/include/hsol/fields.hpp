#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hsol/expr.hpp"
#include "hsol/jet.hpp"
#include "hsol/types.hpp"

namespace hsol {

/// Coefficients of the gradient-soliton potential on H^n,
///   F = (1/x_n) sum_{i<n} (a/2 x_i^2 + b_i x_i) + (a/2) x_n + c / x_n + e,
/// and of the quadratic P = (a/2) x_n^2 + c + sum_{i<n} (a/2 x_i^2 + b_i x_i).
/// For n = 2 this is F = (a/2 (x^2 + y^2) + b_1 x + c) / y + e.
struct PotentialParams {
  int n = 2;
  double a = 0.0;
  std::vector<double> b;  // n - 1 entries
  double c = 0.0;
  double e = 0.0;

  friend bool operator==(const PotentialParams&, const PotentialParams&) = default;
};

/// X = ((a/2)(x^2 - y^2) + b x + c) d_x + (a x y + b y) d_y on H^2.
struct Killing2D {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  friend bool operator==(const Killing2D&, const Killing2D&) = default;
};

/// Killing fields of H^n:
///   X_k = (a_k/2)(x_k^2 - sum_{j != k} x_j^2) + (sum_{i != k, i < n} a_i x_i + b) x_k + c_k,  k < n
///   X_n = (sum_{k<n} a_k x_k + b) x_n
struct KillingND {
  int n = 2;
  std::vector<double> a;  // n - 1
  double b = 0.0;
  std::vector<double> c;  // n - 1
  friend bool operator==(const KillingND&, const KillingND&) = default;
};

/// X = grad F, index raised with the inverse metric.
struct GradientOfPotential {
  PotentialParams potential;
  friend bool operator==(const GradientOfPotential&, const GradientOfPotential&) = default;
};

struct ConstantField {
  std::vector<double> v;
  friend bool operator==(const ConstantField&, const ConstantField&) = default;
};

struct CustomField {
  std::vector<Expr> components;
  std::vector<std::string> sources;  // original text, for reports
};

using VectorFieldSpec = std::variant<Killing2D, KillingND, GradientOfPotential, ConstantField, CustomField>;

int field_dimension(const VectorFieldSpec& X);
std::string field_family_name(const VectorFieldSpec& X);

VectorFieldSpec build_killing_2d(double a, double b, double c);
VectorFieldSpec build_killing_nd(int n, std::vector<double> a, double b, std::vector<double> c);
VectorFieldSpec build_custom_field(int n, const std::vector<std::string>& components);

void validate_potential(const PotentialParams& params);
double potential_value(const PotentialParams& params, const Point& p);
/// Jet of F by jet arithmetic on the coordinate functions.
Jet2 potential_jet(const PotentialParams& params, const Point& p);
/// The quadratic P whose zero set decides whether G exists.
double potential_polynomial(const PotentialParams& params, const Point& p);
/// (grad F)^i = x_n^2 d_i F, from the closed polynomial form.
std::vector<double> gradient_field_at(const PotentialParams& params, const Point& p);

/// Per-component jets of X at p.
std::vector<Jet2> field_jet_at(const VectorFieldSpec& X, const Point& p);
std::vector<double> field_value_at(const VectorFieldSpec& X, const Point& p);

enum class ZeroFreeVerdict { zero_free, has_zero, degenerate_zero_polynomial };

/// Analytic decision whether P vanishes somewhere on H^n. Completing the
/// square in x_1..x_{n-1}, inf/sup of P over H^n is c - sum b_k^2 / (2a),
/// approached only as x_n -> 0.
ZeroFreeVerdict zero_free_check(const PotentialParams& params);
std::string to_string(ZeroFreeVerdict v);

struct UnitFactor {
  friend bool operator==(const UnitFactor&, const UnitFactor&) = default;
};

/// G = (lambda + (n-1)(1 - n rho)) x_n / P, the conformal factor forced on a
/// gradient G-Ricci-Bourguignon soliton with potential F.
struct DerivedFactor {
  PotentialParams potential;
  double lambda = 0.0;
  double rho = 0.0;
  friend bool operator==(const DerivedFactor&, const DerivedFactor&) = default;
};

struct CustomFactor {
  Expr expr;
  std::string source;
};

using ConformalFactorSpec = std::variant<UnitFactor, DerivedFactor, CustomFactor>;

/// lambda + (n-1)(1 - n rho); zero marks the degenerate case where G is free.
double conformal_numerator(int n, double lambda, double rho);
bool is_degenerate_lambda(int n, double lambda, double rho);

/// Throws ConfigError when P has a zero in H^n or lambda is degenerate.
ConformalFactorSpec derived_conformal_factor(const PotentialParams& params, double lambda, double rho);

double conformal_value(const ConformalFactorSpec& G, const Point& p);

}  // namespace hsol
