#pragma once

#include <Eigen/Dense>

namespace vemnsch {

// Small dense helpers for 1D polynomials p(s) = sum_j c_j s^j on [0,1],
// used to build edge-trace polynomials from nodal/Hermite data.

// Rows = evaluation points, columns = powers 0..deg.
inline Eigen::MatrixXd power_matrix(const Eigen::VectorXd& s, int deg) {
  Eigen::MatrixXd V(s.size(), deg + 1);
  V.col(0).setOnes();
  for (int j = 1; j <= deg; ++j) V.col(j) = V.col(j - 1).cwiseProduct(s);
  return V;
}

// Same for d/ds.
inline Eigen::MatrixXd dpower_matrix(const Eigen::VectorXd& s, int deg) {
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(s.size(), deg + 1);
  if (deg >= 1) V.col(1).setOnes();
  for (int j = 2; j <= deg; ++j)
    V.col(j) = double(j) / double(j - 1) * V.col(j - 1).cwiseProduct(s);
  return V;
}

// Map nodal values at distinct nodes to monomial coefficients (degree =
// #nodes - 1): inverse Vandermonde.
inline Eigen::MatrixXd nodal_to_coeff(const Eigen::VectorXd& nodes) {
  const int n = static_cast<int>(nodes.size());
  return power_matrix(nodes, n - 1).fullPivLu().inverse();
}

}  // namespace vemnsch
