#pragma once

#include <vector>

#include "hsol/jet.hpp"
#include "hsol/types.hpp"

namespace hsol {

// Closed-form Riemannian data of H^n with g_ij = delta_ij / x_n^2.

SymTensor2 metric_at(const Point& p);
SymTensor2 inverse_metric_at(const Point& p);

/// Nonzero symbols (0-based, m = n-1 is the height index):
///   Gamma^m_ij = delta_ij / x_n   (i, j < m)
///   Gamma^k_mj = -delta_jk / x_n  (j < m), mirrored in the lower pair
///   Gamma^m_mm = -1 / x_n
Christoffels christoffels_at(const Point& p);

/// Ric = -(n-1) g (constant sectional curvature -1).
SymTensor2 ricci_at(const Point& p);

/// S = g^ij Ric_ij = -n(n-1).
double scalar_curvature(int n);

/// Christoffel symbols as jets in the point, for contraction formulas that
/// need their derivatives. Entry index is (k * n + i) * n + j.
std::vector<Jet2> christoffel_jets_at(const Point& p);

/// Ricci tensor recomputed from the Christoffel symbols,
///   Ric_ij = d_k G^k_ij - d_i G^k_kj + G^k_kl G^l_ij - G^k_il G^l_kj,
/// with derivatives taken by jet arithmetic. Used as an oracle for ricci_at.
SymTensor2 ricci_from_christoffels(const Point& p);

}  // namespace hsol
