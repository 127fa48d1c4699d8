#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hsol/geodesics.hpp"
#include "support.hpp"

using namespace hsol;
using hsol::testing::Gen;

namespace {

double vertical_error(double dt) {
  const auto tr = integrate_geodesic({Point{0, 1}, {0, 1}}, 1.0, dt);
  return std::fabs(tr.samples.back().state.point[1] - std::exp(1.0));
}

SolitonProblem killing_problem(double a, double b, double c) {
  SolitonProblem p;
  p.kind = SolitonKind::ricci;
  p.n = 2;
  p.field = build_killing_2d(a, b, c);
  p.lambda = -1;
  return p;
}

}  // namespace

TEST_CASE("acceleration examples") {
  CHECK(geodesic_acceleration({Point{0, 1}, {0, 1}}) == std::vector<double>{0, 1});
  CHECK(geodesic_acceleration({Point{0, 1}, {1, 0}}) == std::vector<double>{0, -1});
  CHECK(geodesic_acceleration({Point{3, -1, 2}, {0, 0, 0}}) == std::vector<double>{0, 0, 0});
  CHECK_THROWS(geodesic_acceleration({Point{0, 1}, {1, 0, 0}}));
}

TEST_CASE("property: acceleration is minus the christoffel contraction") {
  Gen g(601);
  for (int n = 2; n <= 5; ++n) {
    for (int s = 0; s < 50; ++s) {
      const GeodesicState st{g.point(n), g.vec(n, -2, 2)};
      const auto gam = christoffels_at(st.point);
      const auto acc = geodesic_acceleration(st);
      for (int k = 0; k < n; ++k) {
        double want = 0.0;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) want -= gam(k, i, j) * st.velocity[static_cast<std::size_t>(i)] * st.velocity[static_cast<std::size_t>(j)];
        }
        CHECK(acc[static_cast<std::size_t>(k)] == doctest::Approx(want).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("speed examples") {
  CHECK(speed_squared({Point{0, 1}, {0, 1}}) == 1.0);
  CHECK(speed_squared({Point{0, 2}, {2, 0}}) == 1.0);
  CHECK(speed_squared({Point{0, 2}, {0, 0}}) == 0.0);
}

TEST_CASE("closed-form geodesics") {
  CHECK(vertical_error(1e-3) < 1e-6);
  const auto semi = integrate_geodesic({Point{0, 1}, {1, 0}}, 1.0, 1e-3);
  const auto& end = semi.samples.back().state.point;
  CHECK(std::fabs(end[0] - std::tanh(1.0)) < 1e-6);
  CHECK(std::fabs(end[1] - 1.0 / std::cosh(1.0)) < 1e-6);
  CHECK(semi.samples.size() == 1001);
  CHECK(semi.samples.back().t == 1.0);
  CHECK(semi.integrator == "rk4");
}

TEST_CASE("zero duration yields the initial sample") {
  const GeodesicState s0{Point{0.5, 2}, {1, -1}};
  const auto tr = integrate_geodesic(s0, 0.0, 1e-3);
  REQUIRE(tr.samples.size() == 1);
  CHECK(tr.samples[0].t == 0.0);
  CHECK(tr.samples[0].state.point == s0.point);
}

TEST_CASE("samples lie on the step lattice and the last lands on t_max") {
  const auto tr = integrate_geodesic({Point{0, 1}, {0.3, 0.1}}, 0.25, 0.1);
  REQUIRE(tr.samples.size() == 4);
  CHECK(tr.samples[1].t == 0.1);
  CHECK(tr.samples[2].t == 0.2);
  CHECK(tr.samples[3].t == 0.25);
  for (std::size_t i = 1; i < tr.samples.size(); ++i) CHECK(tr.samples[i].t > tr.samples[i - 1].t);
}

TEST_CASE("invalid step arguments") {
  CHECK_THROWS(integrate_geodesic({Point{0, 1}, {0, 1}}, 1.0, 0.0));
  CHECK_THROWS(integrate_geodesic({Point{0, 1}, {0, 1}}, -1.0, 0.1));
  CHECK_THROWS(integrate_geodesic({Point{0, 1}, {0, 1, 0}}, 1.0, 0.1));
}

TEST_CASE("leaving the domain reports the last valid time") {
  try {
    (void)integrate_geodesic({Point{0, 1}, {0, -1}}, 30.0, 0.1);
    FAIL("expected GeodesicDomainExit");
  } catch (const GeodesicDomainExit& e) {
    CHECK(e.last_valid_t() > 13.0);
    CHECK(e.last_valid_t() < 14.5);
    CHECK(e.partial().samples.back().t == e.last_valid_t());
    CHECK(e.partial().samples.back().state.point.height() >= kGeodesicFloor);
  }
}

TEST_CASE("property: speed is conserved") {
  Gen g(602);
  for (int s = 0; s < 4; ++s) {
    const int n = g.integer(2, 3);
    const GeodesicState s0{g.point(n, 1.0, 0.5, 2.0), g.vec(n, -0.5, 0.5)};
    const double v0 = speed_squared(s0);
    const auto tr = integrate_geodesic(s0, 10.0, 1e-3);
    double drift = 0.0;
    for (const auto& smp : tr.samples) drift = std::max(drift, std::fabs(speed_squared(smp.state) - v0));
    CHECK(drift < 1e-8);
  }
}

TEST_CASE("property: integration is reversible") {
  Gen g(603);
  for (int s = 0; s < 20; ++s) {
    const int n = g.integer(2, 4);
    const GeodesicState s0{g.point(n, 1.0, 0.5, 2.0), g.vec(n, -1, 1)};
    const auto fwd = integrate_geodesic(s0, 1.0, 1e-3);
    GeodesicState back = fwd.samples.back().state;
    for (auto& v : back.velocity) v = -v;
    const auto rev = integrate_geodesic(back, 1.0, 1e-3);
    const auto& end = rev.samples.back().state.point;
    for (int i = 0; i < n; ++i) CHECK(std::fabs(end[i] - s0.point[i]) < 1e-6);
  }
}

TEST_CASE("RK4 converges at fourth order") {
  const double e4 = vertical_error(4e-3);
  const double e2 = vertical_error(2e-3);
  const double e1 = vertical_error(1e-3);
  MESSAGE("errors " << e4 << " " << e2 << " " << e1);
  CHECK(e4 / e2 >= 12.0);
  CHECK(e2 / e1 >= 12.0);
}

TEST_CASE("evaluation along a trajectory") {
  const auto tr = integrate_geodesic({Point{0, 1}, {0.4, 0.3}}, 2.0, 0.01);
  for (const auto& row : evaluate_along_geodesic(killing_problem(1, 2, 3), tr)) CHECK(row.residual_max_abs < 1e-9);

  const auto vertical = integrate_geodesic({Point{0, 1}, {0, 1}}, 1.0, 0.01);
  for (const auto& row : evaluate_along_geodesic(killing_problem(0, 1, 0), vertical)) {
    REQUIRE(row.field_norm.has_value());
    CHECK(*row.field_norm == doctest::Approx(1.0).epsilon(1e-14));
  }

  const auto one = integrate_geodesic({Point{0, 1}, {0, 1}}, 0.0, 0.01);
  CHECK(evaluate_along_geodesic(killing_problem(1, 0, 0), one).size() == 1);

  SolitonProblem grad;
  grad.kind = SolitonKind::gradient_grb;
  grad.n = 2;
  grad.potential = PotentialParams{2, 0, {0}, 1, 0};
  grad.lambda = 1;
  grad.G = derived_conformal_factor(*grad.potential, 1, 0);
  const auto rows = evaluate_along_geodesic(grad, tr);
  CHECK_FALSE(rows.front().field_norm.has_value());
}

TEST_CASE("csv export") {
  const auto tr = integrate_geodesic({Point{0, 1}, {0, 1}}, 0.2, 0.1);
  std::ostringstream os;
  write_trajectory_csv(os, tr);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,x1,x2,v1,v2");
  std::getline(is, line);
  CHECK(line == "0,0,1,0,1");
  int rows = 1;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);

  std::ostringstream along;
  write_along_csv(along, evaluate_along_geodesic(killing_problem(0, 1, 0), tr));
  CHECK(along.str().rfind("t,residual_max_abs,field_norm\n0,0,1\n", 0) == 0);
}
