#include "hsol/types.hpp"

#include <cmath>
#include <string>

#include "hsol/format.hpp"

namespace hsol {

void check_dimension(int n) {
  if (n < 2) throw DomainError("dimension must be at least 2, got " + std::to_string(n));
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  check_dimension(dim());
  for (double c : coords_) {
    if (!std::isfinite(c)) throw DomainError("point has a non-finite coordinate");
  }
  if (!(coords_.back() >= kHeightFloor)) {
    throw DomainError("point is outside H^" + std::to_string(dim()) + ": last coordinate " +
                      format_shortest(coords_.back()) + " must be >= 1e-12");
  }
}

Point Point::shifted(int i, double delta) const {
  auto c = coords_;
  c[static_cast<std::size_t>(i)] += delta;
  return Point(std::move(c));
}

SymTensor2::SymTensor2(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

SymTensor2 SymTensor2::identity(int n) { return diagonal(n, 1.0); }

SymTensor2 SymTensor2::diagonal(int n, double d) {
  SymTensor2 t(n);
  for (int i = 0; i < n; ++i) t.set(i, i, d);
  return t;
}

double SymTensor2::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::fmax(m, std::fabs(v));
  return m;
}

double SymTensor2::frobenius() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

SymTensor2& SymTensor2::operator+=(const SymTensor2& rhs) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
  return *this;
}

SymTensor2& SymTensor2::operator-=(const SymTensor2& rhs) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
  return *this;
}

SymTensor2& SymTensor2::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Christoffels::Christoffels(int n)
    : n_(n), v_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

}  // namespace hsol
