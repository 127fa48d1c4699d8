#include "hsol/soliton.hpp"

#include <omp.h>

#include <cmath>
#include <limits>

#include "hsol/format.hpp"

namespace hsol {

std::string to_string(SolitonKind kind) {
  switch (kind) {
    case SolitonKind::ricci: return "ricci";
    case SolitonKind::ricci_bourguignon: return "ricci_bourguignon";
    case SolitonKind::g_ricci_bourguignon: return "g_ricci_bourguignon";
    case SolitonKind::gradient_grb: return "gradient_g_ricci_bourguignon";
  }
  return "?";
}

SolitonKind parse_soliton_kind(const std::string& name) {
  if (name == "ricci") return SolitonKind::ricci;
  if (name == "ricci_bourguignon" || name == "rb") return SolitonKind::ricci_bourguignon;
  if (name == "g_ricci_bourguignon" || name == "grb") return SolitonKind::g_ricci_bourguignon;
  if (name == "gradient_g_ricci_bourguignon" || name == "gradient_grb") return SolitonKind::gradient_grb;
  throw ConfigError("unknown soliton kind '" + name +
                    "' (expected ricci, ricci_bourguignon, g_ricci_bourguignon or gradient_g_ricci_bourguignon)");
}

namespace {

int factor_dimension(const ConformalFactorSpec& G, int fallback) {
  if (const auto* d = std::get_if<DerivedFactor>(&G)) return d->potential.n;
  if (const auto* c = std::get_if<CustomFactor>(&G)) return c->expr.dim();
  return fallback;
}

}  // namespace

void validate_problem(const SolitonProblem& prob) {
  if (prob.n < 2) throw ConfigError("dimension must be at least 2");
  if (!std::isfinite(prob.lambda)) throw ConfigError("lambda must be finite");
  if (!std::isfinite(prob.rho)) throw ConfigError("rho must be finite");
  const bool unit_g = std::holds_alternative<UnitFactor>(prob.G);
  switch (prob.kind) {
    case SolitonKind::ricci:
      if (prob.rho != 0.0) {
        throw ConfigError("rho must be 0 for kind=ricci (got " + format_shortest(prob.rho) +
                          "); use kind=ricci_bourguignon for nonzero rho");
      }
      [[fallthrough]];
    case SolitonKind::ricci_bourguignon:
      if (!unit_g) throw ConfigError("G must be unit for kind=" + to_string(prob.kind));
      [[fallthrough]];
    case SolitonKind::g_ricci_bourguignon:
      if (!prob.field) throw ConfigError("kind=" + to_string(prob.kind) + " needs a vector field");
      if (prob.potential) throw ConfigError("kind=" + to_string(prob.kind) + " takes a field, not a potential");
      if (field_dimension(*prob.field) != prob.n) throw ConfigError("field dimension does not match problem dimension");
      break;
    case SolitonKind::gradient_grb:
      if (!prob.potential) throw ConfigError("kind=gradient_g_ricci_bourguignon needs a potential");
      if (prob.field) throw ConfigError("kind=gradient_g_ricci_bourguignon takes a potential, not a field");
      validate_potential(*prob.potential);
      if (prob.potential->n != prob.n) throw ConfigError("potential dimension does not match problem dimension");
      break;
  }
  if (factor_dimension(prob.G, prob.n) != prob.n) throw ConfigError("G dimension does not match problem dimension");
}

SymTensor2 lie_derivative_metric(const VectorFieldSpec& X, const Point& p) {
  const int n = p.dim();
  const auto J = field_jet_at(X, p);
  const double h = p.height();
  const double h2 = h * h;
  const double Xn = J[static_cast<std::size_t>(n - 1)].value;
  SymTensor2 L(n);
  for (int i = 0; i < n; ++i) {
    L.set(i, i, (2 / h2) * (J[static_cast<std::size_t>(i)].d(i) - Xn / h));
    for (int j = i + 1; j < n; ++j) {
      L.set(i, j, (J[static_cast<std::size_t>(i)].d(j) + J[static_cast<std::size_t>(j)].d(i)) / h2);
    }
  }
  return L;
}

SymTensor2 covariant_hessian(const Jet2& F, const Point& p) {
  const int n = p.dim();
  const int m = n - 1;
  const double h = p.height();
  SymTensor2 H(n);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) H.set(i, j, i == j ? F.dd(i, i) - F.d(m) / h : F.dd(i, j));
    H.set(i, m, F.dd(i, m) + F.d(i) / h);
  }
  H.set(m, m, F.dd(m, m) + F.d(m) / h);
  return H;
}

SymTensor2 hessian_at(const PotentialParams& params, const Point& p) {
  return covariant_hessian(potential_jet(params, p), p);
}

SymTensor2 hessian_at(const Expr& F, const Point& p) { return covariant_hessian(F.eval_jet(p), p); }

SymTensor2 covariant_hessian_from_christoffels(const Jet2& F, const Christoffels& gamma) {
  const int n = gamma.dim();
  SymTensor2 H(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = F.dd(i, j);
      for (int k = 0; k < n; ++k) s -= gamma(k, i, j) * F.d(k);
      H.set(i, j, s);
    }
  }
  return H;
}

double euclidean_laplacian_component(const VectorFieldSpec& X, int k, const Point& p) {
  const auto J = field_jet_at(X, p);
  if (k < 0 || k >= static_cast<int>(J.size())) throw std::out_of_range("component index out of range");
  return J[static_cast<std::size_t>(k)].laplacian();
}

SymTensor2 soliton_residual(const SolitonProblem& prob, const Point& p) {
  if (p.dim() != prob.n) throw std::invalid_argument("point dimension does not match problem");
  const int n = prob.n;
  const SymTensor2 g = metric_at(p);
  SymTensor2 r = ricci_at(p);
  const double S = scalar_curvature(n);
  switch (prob.kind) {
    case SolitonKind::ricci:
      r += 0.5 * lie_derivative_metric(*prob.field, p);
      r -= prob.lambda * g;
      break;
    case SolitonKind::ricci_bourguignon:
      r += 0.5 * lie_derivative_metric(*prob.field, p);
      r -= (prob.lambda + prob.rho * S) * g;
      break;
    case SolitonKind::g_ricci_bourguignon:
      r += (conformal_value(prob.G, p) / 2) * lie_derivative_metric(*prob.field, p);
      r -= (prob.lambda + prob.rho * S) * g;
      break;
    case SolitonKind::gradient_grb:
      r += conformal_value(prob.G, p) * hessian_at(*prob.potential, p);
      r -= (prob.lambda + prob.rho * S) * g;
      break;
  }
  return r;
}

double rb_to_ricci_lambda(double lambda, double rho, int n) {
  check_dimension(n);
  return lambda + rho * scalar_curvature(n);
}

double killing_lambda_grb(int n, double rho) {
  check_dimension(n);
  const double nn = static_cast<double>(n);
  return (1 - nn) * (1 - nn * rho);
}

std::uint64_t GridSpec::node_count() const {
  std::uint64_t total = 1;
  for (const auto& a : axes) total *= static_cast<std::uint64_t>(a.count);
  return total;
}

std::vector<double> GridSpec::node(std::uint64_t flat) const {
  std::vector<double> x(axes.size());
  for (std::size_t d = axes.size(); d-- > 0;) {
    const auto& a = axes[d];
    const auto cnt = static_cast<std::uint64_t>(a.count);
    const auto i = flat % cnt;
    flat /= cnt;
    x[d] = a.count == 1 ? a.min : a.min + (a.max - a.min) * (static_cast<double>(i) / static_cast<double>(a.count - 1));
  }
  return x;
}

GridSpec GridSpec::standard(int n, int count) {
  GridSpec g;
  for (int i = 0; i < n - 1; ++i) g.axes.push_back({-2.0, 2.0, count});
  g.axes.push_back({0.1, 4.0, count});
  return g;
}

void validate_grid(const GridSpec& grid) {
  if (grid.dim() < 2) throw ConfigError("grid needs at least 2 axes");
  for (std::size_t d = 0; d < grid.axes.size(); ++d) {
    const auto& a = grid.axes[d];
    const std::string name = "x" + std::to_string(d + 1);
    if (a.count < 1) throw ConfigError("grid axis " + name + " needs count >= 1");
    if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw ConfigError("grid axis " + name + " bounds must be finite");
    if (a.min > a.max) throw ConfigError("grid axis " + name + " has min > max");
  }
  if (!(grid.epsilon_floor > 0.0)) throw ConfigError("grid floor must be positive");
  const auto& last = grid.axes.back();
  if (last.min < grid.epsilon_floor) {
    throw ConfigError("grid axis x" + std::to_string(grid.dim()) + " starts at " + format_shortest(last.min) +
                      ", below the floor " + format_shortest(grid.epsilon_floor));
  }
}

GridEvaluationError::GridEvaluationError(std::uint64_t index, std::vector<double> node, const std::string& cause)
    : DomainError([&] {
        std::string s = "evaluation failed at grid node " + std::to_string(index) + " (";
        for (std::size_t i = 0; i < node.size(); ++i) s += (i ? ", " : "") + format_shortest(node[i]);
        return s + "): " + cause;
      }()),
      index_(index),
      node_(std::move(node)) {}

namespace {

constexpr std::uint64_t kNoIndex = std::numeric_limits<std::uint64_t>::max();

struct NodeResult {
  double max_abs;
  double frobenius;
};

NodeResult evaluate_node(const SolitonProblem& prob, const std::vector<double>& x) {
  const SymTensor2 r = soliton_residual(prob, Point(x));
  const double m = r.max_abs();
  const double f = r.frobenius();
  if (!std::isfinite(m) || !std::isfinite(f)) throw DomainError("non-finite residual");
  for (int i = 0; i < r.dim(); ++i) {
    for (int j = 0; j < r.dim(); ++j) {
      if (std::isnan(r(i, j))) throw DomainError("non-finite residual");
    }
  }
  return {m, f};
}

// Running aggregate; ties keep the smaller index.
struct Aggregate {
  double max_abs = -1.0;
  std::uint64_t argmax = kNoIndex;
  double max_frobenius = 0.0;
  std::uint64_t error_index = kNoIndex;
  std::string error;

  void add(std::uint64_t i, const NodeResult& r) {
    if (r.max_abs > max_abs || (r.max_abs == max_abs && i < argmax)) {
      max_abs = r.max_abs;
      argmax = i;
    }
    if (r.frobenius > max_frobenius) max_frobenius = r.frobenius;
  }
  void fail(std::uint64_t i, std::string what) {
    if (i < error_index) {
      error_index = i;
      error = std::move(what);
    }
  }
  void merge(const Aggregate& o) {
    if (o.argmax != kNoIndex) add(o.argmax, {o.max_abs, o.max_frobenius});
    if (o.error_index != kNoIndex) fail(o.error_index, o.error);
  }
};

ResidualReport finish(const SolitonProblem& prob, const GridSpec& grid, double tol, const Aggregate& agg,
                      std::vector<PointResidual> dump) {
  if (agg.error_index != kNoIndex) throw GridEvaluationError(agg.error_index, grid.node(agg.error_index), agg.error);
  ResidualReport rep;
  rep.problem = prob;
  rep.grid = grid;
  rep.points = grid.node_count();
  rep.max_abs = agg.max_abs;
  rep.max_frobenius = agg.max_frobenius;
  rep.argmax_index = agg.argmax;
  rep.argmax_point = grid.node(agg.argmax);
  rep.tolerance = tol;
  rep.pass = agg.max_abs <= tol;
  rep.dump = std::move(dump);
  return rep;
}

void check_inputs(const SolitonProblem& prob, const GridSpec& grid, double tol) {
  validate_problem(prob);
  validate_grid(grid);
  if (grid.dim() != prob.n) throw ConfigError("grid dimension does not match problem dimension");
  if (!(tol >= 0.0)) throw ConfigError("tolerance must be non-negative");
}

}  // namespace

ResidualReport grid_residual_report_serial(const SolitonProblem& prob, const GridSpec& grid, double tol,
                                           bool dump_points) {
  check_inputs(prob, grid, tol);
  const std::uint64_t N = grid.node_count();
  Aggregate agg;
  std::vector<PointResidual> dump;
  for (std::uint64_t i = 0; i < N; ++i) {
    auto x = grid.node(i);
    try {
      const auto r = evaluate_node(prob, x);
      agg.add(i, r);
      if (dump_points) dump.push_back({std::move(x), r.max_abs, r.frobenius});
    } catch (const std::exception& e) {
      agg.fail(i, e.what());
      break;
    }
  }
  return finish(prob, grid, tol, agg, std::move(dump));
}

ResidualReport grid_residual_report(const SolitonProblem& prob, const GridSpec& grid, double tol,
                                    const GridOptions& options) {
  check_inputs(prob, grid, tol);
  const auto N = static_cast<std::int64_t>(grid.node_count());
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
  std::vector<PointResidual> dump(options.dump_points ? static_cast<std::size_t>(N) : 0);
  Aggregate total;

#pragma omp parallel num_threads(threads)
  {
    Aggregate local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < N; ++i) {
      const auto idx = static_cast<std::uint64_t>(i);
      if (idx > local.error_index) continue;
      auto x = grid.node(idx);
      try {
        const auto r = evaluate_node(prob, x);
        local.add(idx, r);
        if (options.dump_points) dump[static_cast<std::size_t>(i)] = {std::move(x), r.max_abs, r.frobenius};
      } catch (const std::exception& e) {
        local.fail(idx, e.what());
      }
    }
#pragma omp critical(hsol_grid_merge)
    total.merge(local);
  }
  if (total.error_index != kNoIndex) dump.clear();
  return finish(prob, grid, tol, total, std::move(dump));
}

}  // namespace hsol
