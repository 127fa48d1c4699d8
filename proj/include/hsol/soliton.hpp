#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hsol/fields.hpp"
#include "hsol/geometry.hpp"

namespace hsol {

enum class SolitonKind { ricci, ricci_bourguignon, g_ricci_bourguignon, gradient_grb };

std::string to_string(SolitonKind kind);
SolitonKind parse_soliton_kind(const std::string& name);

/// One soliton equation instance. Residual is LHS - RHS of
///   Ricci:        Ric + 1/2 L_X g           = lambda g
///   RB:           Ric + 1/2 L_X g           = (lambda + rho S) g
///   G-RB:         Ric + (G/2) L_X g         = (lambda + rho S) g
///   gradient G-RB: Ric + G Hess F           = (lambda + rho S) g
struct SolitonProblem {
  SolitonKind kind = SolitonKind::ricci;
  int n = 2;
  std::optional<VectorFieldSpec> field;
  std::optional<PotentialParams> potential;
  double lambda = 0.0;
  double rho = 0.0;
  ConformalFactorSpec G = UnitFactor{};
};

/// Throws ConfigError if the problem is not well formed.
void validate_problem(const SolitonProblem& prob);

/// (L_X g)_ii = (2/x_n^2)(d_i X_i - X_n / x_n), (L_X g)_ij = (d_j X_i + d_i X_j) / x_n^2.
SymTensor2 lie_derivative_metric(const VectorFieldSpec& X, const Point& p);

/// Covariant Hessian of F on H^n from its coordinate jet:
///   i, j < n:  F_ij - delta_ij F_n / x_n
///   i < n = j: F_in + F_i / x_n
///   i = j = n: F_nn + F_n / x_n
SymTensor2 covariant_hessian(const Jet2& F, const Point& p);
SymTensor2 hessian_at(const PotentialParams& params, const Point& p);
SymTensor2 hessian_at(const Expr& F, const Point& p);

/// d^2F - Gamma^k dF_k assembled from an arbitrary Christoffel table.
SymTensor2 covariant_hessian_from_christoffels(const Jet2& F, const Christoffels& gamma);

/// Flat Laplacian of component k (0-based) of X.
double euclidean_laplacian_component(const VectorFieldSpec& X, int k, const Point& p);

SymTensor2 soliton_residual(const SolitonProblem& prob, const Point& p);

/// Ricci-soliton constant equivalent to an RB soliton: lambda - n(n-1) rho.
double rb_to_ricci_lambda(double lambda, double rho, int n);

/// The lambda making a Killing field a G-RB soliton: (1-n)(1-n rho).
double killing_lambda_grb(int n, double rho);

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int count = 1;
  friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

inline constexpr double kDefaultGridFloor = 0.05;

/// Tensor-product grid over H^n. Nodes are ordered lexicographically with the
/// first axis most significant.
struct GridSpec {
  std::vector<GridAxis> axes;
  double epsilon_floor = kDefaultGridFloor;

  int dim() const { return static_cast<int>(axes.size()); }
  std::uint64_t node_count() const;
  std::vector<double> node(std::uint64_t flat) const;

  /// The default box: x_k in [-2, 2], x_n in [0.1, 4], `count` nodes per axis.
  static GridSpec standard(int n, int count = 20);
};

void validate_grid(const GridSpec& grid);

struct PointResidual {
  std::vector<double> point;
  double max_abs = 0.0;
  double frobenius = 0.0;
};

struct ResidualReport {
  SolitonProblem problem;
  GridSpec grid;
  std::uint64_t points = 0;
  double max_abs = 0.0;
  double max_frobenius = 0.0;
  std::vector<double> argmax_point;
  std::uint64_t argmax_index = 0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<PointResidual> dump;
};

/// A node where residual evaluation failed; carries the node for diagnostics.
class GridEvaluationError : public DomainError {
 public:
  GridEvaluationError(std::uint64_t index, std::vector<double> node, const std::string& cause);
  std::uint64_t index() const { return index_; }
  const std::vector<double>& node() const { return node_; }

 private:
  std::uint64_t index_;
  std::vector<double> node_;
};

struct GridOptions {
  int threads = 0;  // 0: OpenMP default
  bool dump_points = false;
};

/// Residual over every grid node, evaluated with OpenMP. Aggregates are
/// max-based and ties go to the lowest node index, so the report does not
/// depend on the thread count.
ResidualReport grid_residual_report(const SolitonProblem& prob, const GridSpec& grid, double tol,
                                    const GridOptions& options = {});

/// Single-threaded reference for grid_residual_report.
ResidualReport grid_residual_report_serial(const SolitonProblem& prob, const GridSpec& grid, double tol,
                                           bool dump_points = false);

}  // namespace hsol
