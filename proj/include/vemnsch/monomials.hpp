#pragma once

#include <Eigen/Dense>

#include <vector>

#include "vemnsch/geometry.hpp"

namespace vemnsch {

// Scaled monomial bases on a polygon E with centroid x_E and diameter h_E:
//   m_a(x) = ((x - x_E)/h_E)^a1 * ((y - y_E)/h_E)^a2 .
// Basis ordering: by total degree, then by descending first exponent:
//   1, x, y, x^2, xy, y^2, x^3, x^2 y, ...
// This ordering is frozen; interior-moment degrees of freedom, projector
// matrices and snapshot files all rely on it.

// Dimension of P_n in 2D; zero for negative n.
inline int np(int n) { return n < 0 ? 0 : (n + 1) * (n + 2) / 2; }

struct MIndex {
  int a1 = 0, a2 = 0;
  int total() const { return a1 + a2; }
};

// Multi-indices of all monomials of degree <= n, in basis order.
const std::vector<MIndex>& mono_exponents(int n);

// Position of a multi-index in basis order.
inline int mono_position(const MIndex& a) {
  const int s = a.total();
  return s * (s + 1) / 2 + a.a2;
}

// Local frame (centroid and diameter) monomials are scaled with.
struct MonomialFrame {
  Vec2 center{0, 0};
  double h = 1.0;
};

// Values of all monomials of degree <= n at the given points; rows = points,
// columns = basis order.
Eigen::MatrixXd mono_values(const MonomialFrame& f, int n, const Eigen::Matrix<double, Eigen::Dynamic, 2>& pts);

// Coefficient maps of partial derivatives: if p has coefficients c over the
// degree-n basis, d/dx p has coefficients Dx(f,n) * c over the degree-(n-1)
// basis (np(n-1) x np(n)); same for Dy.
Eigen::MatrixXd mono_dx(const MonomialFrame& f, int n);
Eigen::MatrixXd mono_dy(const MonomialFrame& f, int n);

// Point evaluation of a single monomial and its derivatives.
double mono_eval(const MonomialFrame& f, const MIndex& a, const Vec2& x);
Vec2 mono_grad(const MonomialFrame& f, const MIndex& a, const Vec2& x);

}  // namespace vemnsch
