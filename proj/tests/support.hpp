#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hsol/fields.hpp"
#include "hsol/format.hpp"
#include "hsol/types.hpp"

namespace hsol::testing {

// Deterministic generators for property tests. Every test seeds its own Gen.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }

  std::vector<double> vec(int len, double lo, double hi) {
    std::vector<double> v(static_cast<std::size_t>(len));
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  // x_k in [-span, span], x_n in [h_lo, h_hi].
  Point point(int n, double span = 2.0, double h_lo = 0.1, double h_hi = 4.0) {
    std::vector<double> c = vec(n - 1, -span, span);
    c.push_back(uniform(h_lo, h_hi));
    return Point(std::move(c));
  }

  Killing2D killing_2d() { return {uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)}; }

  KillingND killing_nd(int n) {
    return {n, vec(n - 1, -2, 2), uniform(-2, 2), vec(n - 1, -2, 2)};
  }

  // P stays at least `margin` above zero on H^n: a > 0 and c exceeds the
  // completed-square bound, or a = 0, b = 0 and |c| >= margin.
  PotentialParams zero_free_potential(int n, double margin = 0.1) {
    PotentialParams p;
    p.n = n;
    p.e = uniform(-1, 1);
    const int shape = integer(0, 3);
    if (shape == 0) {
      p.a = 0.0;
      p.b.assign(static_cast<std::size_t>(n - 1), 0.0);
      p.c = (coin() ? 1.0 : -1.0) * uniform(margin + 0.5, 3.0);
      return p;
    }
    const double sign = shape == 3 ? -1.0 : 1.0;
    p.a = sign * uniform(0.2, 2.0);
    p.b = vec(n - 1, -1.5, 1.5);
    double bound = 0.0;
    for (double b : p.b) bound += b * b;
    bound /= 2.0 * p.a;
    p.c = bound + sign * uniform(margin, 2.0);
    return p;
  }

  // Some of a, b, c nonzero; no zero-free requirement.
  PotentialParams nondegenerate_potential(int n) {
    PotentialParams p;
    p.n = n;
    do {
      p.a = coin() ? uniform(-2, 2) : 0.0;
      p.b = coin() ? vec(n - 1, -2, 2) : std::vector<double>(static_cast<std::size_t>(n - 1), 0.0);
      p.c = coin() ? uniform(-2, 2) : 0.0;
    } while (p.a == 0.0 && p.c == 0.0 && std::all_of(p.b.begin(), p.b.end(), [](double b) { return b == 0.0; }));
    p.e = uniform(-1, 1);
    return p;
  }

  // Expression text in x1..xn of the given depth that is finite and smooth on
  // [-1,1]^(n-1) x [0.5,2]: log/sqrt only see 1 + e^2, denominators are
  // 1 + e^2 or the height coordinate.
  std::string expression(int n, int depth) {
    if (depth <= 0) {
      if (integer(0, 3) == 0) return number();
      return "x" + std::to_string(integer(1, n));
    }
    const std::string a = expression(n, depth - 1);
    switch (integer(0, 10)) {
      case 0: return "(" + a + " + " + expression(n, depth - 1) + ")";
      case 1: return "(" + a + " - " + expression(n, depth - 1) + ")";
      case 2: return "(" + a + ")*(" + expression(n, depth - 1) + ")";
      case 3: return "(" + a + ")/(1 + (" + expression(n, depth - 1) + ")^2)";
      case 4: return "(" + a + ")/x" + std::to_string(n);
      case 5: return "(" + a + ")^" + std::to_string(integer(2, 3));
      case 6: return "sin(" + a + ")";
      case 7: return "cos(" + a + ")";
      case 8: return "exp(" + bounded(a) + ")";
      case 9: return "log(1 + (" + a + ")^2)";
      default: return "sqrt(1 + (" + a + ")^2)";
    }
  }

 private:
  std::string number() {
    const double v = std::round(uniform(-3, 3) * 100.0) / 100.0;
    std::string s = format_shortest(v);
    return v < 0 ? "(" + s + ")" : s;
  }
  // Keeps exp arguments in [-1, 1] so the corpus does not overflow.
  static std::string bounded(const std::string& e) { return "sin(" + e + ")"; }

  std::mt19937_64 eng_;
};

// Points in the box where the random expression corpus is well behaved.
inline Point corpus_point(Gen& g, int n) { return g.point(n, 1.0, 0.5, 2.0); }

inline double max_abs_diff(const SymTensor2& a, const SymTensor2& b) { return (a - b).max_abs(); }

}  // namespace hsol::testing
