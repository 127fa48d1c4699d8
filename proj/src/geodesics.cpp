#include "hsol/geodesics.hpp"

#include <cmath>

#include "hsol/format.hpp"

namespace hsol {

GeodesicDomainExit::GeodesicDomainExit(double last_valid_t, Trajectory partial)
    : DomainError("geodesic left the domain (x_n below 1e-6) after t = " + format_shortest(last_valid_t)),
      last_valid_t_(last_valid_t),
      partial_(std::move(partial)) {}

namespace {

// Acceleration on raw coordinates; RK4 stages need not be valid Points.
void accel(const std::vector<double>& x, const std::vector<double>& v, std::vector<double>& out) {
  const std::size_t n = x.size();
  const std::size_t m = n - 1;
  const double h = x[m];
  double tangential = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    out[k] = (2.0 / h) * v[k] * v[m];
    tangential += v[k] * v[k];
  }
  out[m] = (v[m] * v[m] - tangential) / h;
}

}  // namespace

std::vector<double> geodesic_acceleration(const GeodesicState& s) {
  const auto c = s.point.coords();
  std::vector<double> x(c.begin(), c.end());
  if (s.velocity.size() != x.size()) throw std::invalid_argument("velocity dimension does not match point");
  std::vector<double> out(x.size());
  accel(x, s.velocity, out);
  return out;
}

double speed_squared(const GeodesicState& s) {
  double sum = 0.0;
  for (double v : s.velocity) sum += v * v;
  const double h = s.point.height();
  return sum / (h * h);
}

Trajectory integrate_geodesic(const GeodesicState& s0, double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be non-negative");
  const std::size_t n = static_cast<std::size_t>(s0.point.dim());
  if (s0.velocity.size() != n) throw std::invalid_argument("velocity dimension does not match point");
  for (double v : s0.velocity) {
    if (!std::isfinite(v)) throw DomainError("initial velocity must be finite");
  }

  Trajectory traj;
  traj.dt = dt;
  traj.samples.push_back({0.0, s0});
  const auto steps = static_cast<long long>(std::ceil(t_max / dt - 1e-9));

  const auto c = s0.point.coords();
  std::vector<double> x(c.begin(), c.end());
  std::vector<double> v = s0.velocity;
  std::vector<double> k1x(n), k1v(n), k2x(n), k2v(n), k3x(n), k3v(n), k4x(n), k4v(n), xs(n), vs(n);
  double t = 0.0;

  auto exit_domain = [&]() { throw GeodesicDomainExit(t, traj); };

  for (long long s = 1; s <= steps; ++s) {
    const double t_next = s == steps ? t_max : static_cast<double>(s) * dt;
    const double h = t_next - t;

    k1x = v;
    accel(x, v, k1v);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = x[i] + 0.5 * h * k1x[i];
      vs[i] = v[i] + 0.5 * h * k1v[i];
    }
    if (!(xs[n - 1] > 0.0)) exit_domain();
    k2x = vs;
    accel(xs, vs, k2v);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = x[i] + 0.5 * h * k2x[i];
      vs[i] = v[i] + 0.5 * h * k2v[i];
    }
    if (!(xs[n - 1] > 0.0)) exit_domain();
    k3x = vs;
    accel(xs, vs, k3v);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = x[i] + h * k3x[i];
      vs[i] = v[i] + h * k3v[i];
    }
    if (!(xs[n - 1] > 0.0)) exit_domain();
    k4x = vs;
    accel(xs, vs, k4v);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = x[i] + (h / 6.0) * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
      vs[i] = v[i] + (h / 6.0) * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    }
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) finite = finite && std::isfinite(xs[i]) && std::isfinite(vs[i]);
    if (!finite || !(xs[n - 1] >= kGeodesicFloor)) exit_domain();
    x = xs;
    v = vs;
    t = t_next;
    traj.samples.push_back({t, GeodesicState{Point(x), v}});
  }
  return traj;
}

std::vector<AlongGeodesicRow> evaluate_along_geodesic(const SolitonProblem& prob, const Trajectory& traj) {
  validate_problem(prob);
  std::vector<AlongGeodesicRow> rows;
  rows.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    if (s.state.point.dim() != prob.n) throw std::invalid_argument("trajectory dimension does not match problem");
    AlongGeodesicRow row;
    row.t = s.t;
    row.residual_max_abs = soliton_residual(prob, s.state.point).max_abs();
    if (prob.field) {
      double sum = 0.0;
      for (double c : field_value_at(*prob.field, s.state.point)) sum += c * c;
      row.field_norm = std::sqrt(sum) / s.state.point.height();
    }
    rows.push_back(row);
  }
  return rows;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const int n = traj.samples.empty() ? 0 : traj.samples.front().state.point.dim();
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int i = 1; i <= n; ++i) os << ",v" << i;
  os << "\n";
  for (const auto& s : traj.samples) {
    os << format17(s.t);
    for (double c : s.state.point.coords()) os << ',' << format17(c);
    for (double v : s.state.velocity) os << ',' << format17(v);
    os << "\n";
  }
}

void write_along_csv(std::ostream& os, const std::vector<AlongGeodesicRow>& rows) {
  os << "t,residual_max_abs,field_norm\n";
  for (const auto& r : rows) {
    os << format17(r.t) << ',' << format17(r.residual_max_abs) << ',';
    if (r.field_norm) os << format17(*r.field_norm);
    os << "\n";
  }
}

}  // namespace hsol
