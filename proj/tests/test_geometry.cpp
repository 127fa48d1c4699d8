#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hsol/geometry.hpp"
#include "support.hpp"

using namespace hsol;
using hsol::testing::Gen;

namespace {

void check_diag(const SymTensor2& t, double d) {
  for (int i = 0; i < t.dim(); ++i) {
    for (int j = 0; j < t.dim(); ++j) CHECK(t(i, j) == (i == j ? d : 0.0));
  }
}

// Hand-written table of the nonzero symbols, 1-based indices as (k, i, j).
struct Symbol {
  int k, i, j;
  double v;
};

void check_christoffels(const Point& p, const std::vector<Symbol>& nonzero) {
  const int n = p.dim();
  const auto gam = christoffels_at(p);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double expected = 0.0;
        for (const auto& s : nonzero) {
          if (s.k == k + 1 && s.i == i + 1 && s.j == j + 1) expected = s.v;
        }
        CAPTURE(k);
        CAPTURE(i);
        CAPTURE(j);
        CHECK(gam(k, i, j) == expected);
      }
    }
  }
}

}  // namespace

TEST_CASE("points must lie in the upper half-space") {
  CHECK_THROWS_AS(Point({0.0, -1.0}), DomainError);
  CHECK_THROWS_AS(Point({0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Point({0.0, 1e-13}), DomainError);
  CHECK_THROWS_AS(Point({1.0}), DomainError);
  CHECK_THROWS_AS(Point({std::nan(""), 1.0}), DomainError);
  CHECK_THROWS_AS(Point({0.0, INFINITY}), DomainError);
  CHECK_NOTHROW(Point({0.0, 1e-12}));
  CHECK_THROWS_AS(scalar_curvature(1), DomainError);
}

TEST_CASE("metric examples") {
  check_diag(metric_at(Point{0, 1}), 1.0);
  check_diag(metric_at(Point{0, 2}), 0.25);
  check_diag(metric_at(Point{1, 1, 2}), 0.25);
}

TEST_CASE("inverse metric examples") {
  check_diag(inverse_metric_at(Point{0, 1}), 1.0);
  check_diag(inverse_metric_at(Point{0, 2}), 4.0);
  check_diag(inverse_metric_at(Point{0, 0, 0, 3}), 9.0);
}

TEST_CASE("christoffel examples") {
  check_christoffels(Point{0, 2}, {{2, 1, 1, 0.5}, {1, 1, 2, -0.5}, {1, 2, 1, -0.5}, {2, 2, 2, -0.5}});
  check_christoffels(Point{1, 1, 1}, {{3, 1, 1, 1.0},
                                      {3, 2, 2, 1.0},
                                      {1, 1, 3, -1.0},
                                      {1, 3, 1, -1.0},
                                      {2, 2, 3, -1.0},
                                      {2, 3, 2, -1.0},
                                      {3, 3, 3, -1.0}});
  const auto a = christoffels_at(Point{5, 1});
  const auto b = christoffels_at(Point{0, 1});
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) CHECK(a(k, i, j) == b(k, i, j));
    }
  }
}

TEST_CASE("ricci and scalar curvature examples") {
  check_diag(ricci_at(Point{0, 2}), -0.25);
  check_diag(ricci_at(Point{0, 0, 1}), -2.0);
  check_diag(ricci_at(Point{0, 1}), -1.0);
  CHECK(scalar_curvature(2) == -2.0);
  CHECK(scalar_curvature(3) == -6.0);
  CHECK(scalar_curvature(5) == -20.0);
}

TEST_CASE("ricci from christoffels examples") {
  const auto r1 = ricci_from_christoffels(Point{0, 1});
  const auto r2 = ricci_from_christoffels(Point{0, 0, 2});
  const auto r3 = ricci_from_christoffels(Point{3, 0.5});
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(r1(i, j) == doctest::Approx(i == j ? -1.0 : 0.0).epsilon(1e-12));
      CHECK(r3(i, j) == doctest::Approx(i == j ? -4.0 : 0.0).epsilon(1e-12));
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(r2(i, j) == doctest::Approx(i == j ? -0.5 : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("property: metric times inverse is the identity") {
  Gen g(101);
  for (int n = 2; n <= 5; ++n) {
    for (int s = 0; s < 200; ++s) {
      const Point p = g.point(n, 5.0, 1e-3, 50.0);
      const auto gm = metric_at(p);
      const auto gi = inverse_metric_at(p);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double sum = 0.0;
          for (int k = 0; k < n; ++k) sum += gm(i, k) * gi(k, j);
          CHECK(std::fabs(sum - (i == j ? 1.0 : 0.0)) < 1e-14);
        }
      }
    }
  }
}

TEST_CASE("property: ricci is -(n-1) g and traces to the scalar curvature") {
  Gen g(102);
  for (int n = 2; n <= 5; ++n) {
    for (int s = 0; s < 200; ++s) {
      const Point p = g.point(n, 5.0, 0.01, 20.0);
      const auto ric = ricci_at(p);
      const auto gm = metric_at(p);
      const auto gi = inverse_metric_at(p);
      double trace = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          CHECK(ric(i, j) + (n - 1) * gm(i, j) == 0.0);
          trace += gi(i, j) * ric(i, j);
        }
      }
      CHECK(std::fabs(trace - scalar_curvature(n)) < 1e-12);
    }
  }
}

TEST_CASE("property: contraction oracle reproduces the closed-form ricci") {
  Gen g(103);
  for (int n = 2; n <= 5; ++n) {
    for (int s = 0; s < 200; ++s) {
      const Point p = g.point(n, 3.0, 0.1, 4.0);
      CHECK((ricci_from_christoffels(p) - ricci_at(p)).max_abs() < 1e-9);
    }
  }
}

TEST_CASE("property: christoffels depend only on the height and are symmetric") {
  Gen g(104);
  for (int n = 2; n <= 5; ++n) {
    for (int s = 0; s < 50; ++s) {
      Point p = g.point(n);
      std::vector<double> moved(p.coords().begin(), p.coords().end());
      for (int i = 0; i + 1 < n; ++i) moved[static_cast<std::size_t>(i)] = g.uniform(-10, 10);
      const auto a = christoffels_at(p);
      const auto b = christoffels_at(Point(moved));
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            CHECK(a(k, i, j) == b(k, i, j));
            CHECK(a(k, i, j) == a(k, j, i));
          }
        }
      }
    }
  }
}

TEST_CASE("symmetric tensor writes are mirrored") {
  SymTensor2 t(3);
  t.set(0, 2, 1.5);
  CHECK(t(2, 0) == 1.5);
  CHECK(t.max_abs() == 1.5);
  CHECK(t.frobenius() == doctest::Approx(std::sqrt(2 * 1.5 * 1.5)));
}
