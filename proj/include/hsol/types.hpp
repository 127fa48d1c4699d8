#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsol {

/// Raised when a value leaves the domain of an operation: a point outside
/// the half-space, a division by zero, log of a non-positive number.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised for malformed or inconsistent problem descriptions.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Points with a smaller last coordinate are rejected; 1/x_n^3 shows up in
// curvature derivatives and overflows quickly below this.
inline constexpr double kHeightFloor = 1e-12;

/// A location in the upper half-space H^n (n >= 2, last coordinate > 0).
class Point {
 public:
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  double height() const { return coords_.back(); }
  std::span<const double> coords() const { return coords_; }

  /// Copy with coordinate i shifted by delta; revalidated.
  Point shifted(int i, double delta) const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

void check_dimension(int n);

/// Symmetric n x n tensor in the coordinate frame. Stored full and mirrored on
/// every write, so T(i,j) and T(j,i) are bit-identical.
class SymTensor2 {
 public:
  explicit SymTensor2(int n);
  static SymTensor2 identity(int n);
  static SymTensor2 diagonal(int n, double d);

  int dim() const { return n_; }
  double operator()(int i, int j) const { return a_[index(i, j)]; }
  void set(int i, int j, double v) {
    a_[index(i, j)] = v;
    a_[index(j, i)] = v;
  }

  double max_abs() const;
  double frobenius() const;

  SymTensor2& operator+=(const SymTensor2& rhs);
  SymTensor2& operator-=(const SymTensor2& rhs);
  SymTensor2& operator*=(double s);

  friend SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
  friend SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
  friend SymTensor2 operator*(double s, SymTensor2 a) { return a *= s; }
  friend bool operator==(const SymTensor2&, const SymTensor2&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }
  int n_;
  std::vector<double> a_;
};

/// Dense n^3 table of Christoffel symbols Gamma^k_ij, symmetric in (i, j).
class Christoffels {
 public:
  explicit Christoffels(int n);

  int dim() const { return n_; }
  double operator()(int k, int i, int j) const { return v_[index(k, i, j)]; }
  void set(int k, int i, int j, double v) {
    v_[index(k, i, j)] = v;
    v_[index(k, j, i)] = v;
  }

  friend bool operator==(const Christoffels&, const Christoffels&) = default;

 private:
  std::size_t index(int k, int i, int j) const {
    const auto n = static_cast<std::size_t>(n_);
    return (static_cast<std::size_t>(k) * n + static_cast<std::size_t>(i)) * n + static_cast<std::size_t>(j);
  }
  int n_;
  std::vector<double> v_;
};

}  // namespace hsol
