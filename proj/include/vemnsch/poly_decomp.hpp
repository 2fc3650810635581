#pragma once

#include <Eigen/Dense>

#include "vemnsch/mesh.hpp"
#include "vemnsch/monomials.hpp"

namespace vemnsch {

// Integrals of all monomials of degree <= n over the cell (exact for rules of
// degree >= n).
Eigen::VectorXd mono_integrals(const MonomialFrame& f, int n, const QuadRule& quad);

// Monomial mass matrix H_ij = (m_i, m_j)_E, SPD for non-degenerate cells
// (rule degree >= 2n).  Throws if positivity fails.
Eigen::MatrixXd mass_matrix(const MonomialFrame& f, int n, const QuadRule& quad);

// Splitting of vector polynomials: [P_n(E)]^2 = grad P_{n+1}(E) (+) mperp P_{n-1}(E),
// with the scaled rotated generator mperp = ((y - y_E), -(x - x_E))/h_E.  The
// matrix `X` holds the monomial-coefficient expansion of each basis field
// (x-component block then y-component block); it is square and invertible, so
// any [P_n]^2 field can be expanded in the split basis by one solve.
struct VectorPolyDecomposition {
  int n = 0;
  int n_grad = 0;              // np(n+1) - 1 gradient fields (constants dropped)
  int n_rot = 0;               // np(n-1) rotated fields
  Eigen::MatrixXd X;           // 2 np(n) x (n_grad + n_rot)
};
VectorPolyDecomposition vector_poly_decomposition(const MonomialFrame& f, int n);

}  // namespace vemnsch
