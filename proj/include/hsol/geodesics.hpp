#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hsol/soliton.hpp"

namespace hsol {

struct GeodesicState {
  Point point;
  std::vector<double> velocity;
};

struct TrajectorySample {
  double t = 0.0;
  GeodesicState state;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double dt = 0.0;
  std::string integrator = "rk4";
};

// Integration stops once x_n falls below this.
inline constexpr double kGeodesicFloor = 1e-6;

/// Integration left the domain; holds everything computed up to that point.
class GeodesicDomainExit : public DomainError {
 public:
  GeodesicDomainExit(double last_valid_t, Trajectory partial);
  double last_valid_t() const { return last_valid_t_; }
  const Trajectory& partial() const { return partial_; }

 private:
  double last_valid_t_;
  Trajectory partial_;
};

/// x''^k = -Gamma^k_ij x'^i x'^j, i.e.
///   k < n: (2 / x_n) x'_k x'_n
///   k = n: ((x'_n)^2 - sum_{i<n} (x'_i)^2) / x_n
std::vector<double> geodesic_acceleration(const GeodesicState& s);

/// g(v, v) = |v|^2 / x_n^2.
double speed_squared(const GeodesicState& s);

/// Classical fixed-step RK4 on (x, v). Samples at t = 0, dt, 2dt, ...; the
/// last step is shortened to land on t_max.
Trajectory integrate_geodesic(const GeodesicState& s0, double t_max, double dt);

struct AlongGeodesicRow {
  double t = 0.0;
  double residual_max_abs = 0.0;
  std::optional<double> field_norm;  // |X|_g, when the problem has a field
};

std::vector<AlongGeodesicRow> evaluate_along_geodesic(const SolitonProblem& prob, const Trajectory& traj);

/// CSV with header t,x1..xn,v1..vn; 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_along_csv(std::ostream& os, const std::vector<AlongGeodesicRow>& rows);

}  // namespace hsol
