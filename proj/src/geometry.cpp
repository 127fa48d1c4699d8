#include "hsol/geometry.hpp"

namespace hsol {

namespace {

// Sign pattern s such that Gamma^k_ij = s / x_n.
int christoffel_sign(int n, int k, int i, int j) {
  const int m = n - 1;
  if (i < m && j < m) return (k == m && i == j) ? 1 : 0;
  if (i == m && j == m) return k == m ? -1 : 0;
  const int other = i == m ? j : i;  // exactly one lower index is m
  return k == other ? -1 : 0;
}

}  // namespace

SymTensor2 metric_at(const Point& p) {
  const double h = p.height();
  return SymTensor2::diagonal(p.dim(), 1.0 / (h * h));
}

SymTensor2 inverse_metric_at(const Point& p) {
  const double h = p.height();
  return SymTensor2::diagonal(p.dim(), h * h);
}

Christoffels christoffels_at(const Point& p) {
  const int n = p.dim();
  const double inv = 1.0 / p.height();
  Christoffels c(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const int s = christoffel_sign(n, k, i, j);
        if (s != 0) c.set(k, i, j, s * inv);
      }
    }
  }
  return c;
}

SymTensor2 ricci_at(const Point& p) {
  const double h = p.height();
  return SymTensor2::diagonal(p.dim(), -static_cast<double>(p.dim() - 1) * (1.0 / (h * h)));
}

double scalar_curvature(int n) {
  check_dimension(n);
  return -static_cast<double>(n) * static_cast<double>(n - 1);
}

std::vector<Jet2> christoffel_jets_at(const Point& p) {
  const int n = p.dim();
  const Jet2 inv = 1.0 / Jet2::coordinate(p, n - 1);
  const Jet2 zero(n);
  std::vector<Jet2> out(static_cast<std::size_t>(n * n * n), zero);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int s = christoffel_sign(n, k, i, j);
        if (s != 0) out[static_cast<std::size_t>((k * n + i) * n + j)] = static_cast<double>(s) * inv;
      }
    }
  }
  return out;
}

SymTensor2 ricci_from_christoffels(const Point& p) {
  const int n = p.dim();
  const auto gam = christoffel_jets_at(p);
  auto G = [&](int k, int i, int j) -> const Jet2& { return gam[static_cast<std::size_t>((k * n + i) * n + j)]; };
  SymTensor2 ric(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) {
        s += G(k, i, j).d(k) - G(k, k, j).d(i);
        for (int l = 0; l < n; ++l) {
          s += G(k, k, l).value * G(l, i, j).value - G(k, i, l).value * G(l, k, j).value;
        }
      }
      ric.set(i, j, s);
    }
  }
  return ric;
}

}  // namespace hsol
