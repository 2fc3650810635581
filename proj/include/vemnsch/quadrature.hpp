#pragma once

#include <Eigen/Dense>

#include <vector>

#include "vemnsch/geometry.hpp"

namespace vemnsch {

// One-dimensional Gauss-Legendre rule on [0,1]; exact for degree 2n-1.
struct Quad1d {
  Eigen::VectorXd x, w;
};
Quad1d gauss_legendre_01(int n);

// Gauss-Lobatto nodes on [0,1] (n >= 2, includes both endpoints). Only the
// nodes are needed: they place edge degrees of freedom.
Eigen::VectorXd gauss_lobatto_01(int n);

// Two-dimensional rule with positive weights.
struct QuadRule {
  Eigen::Matrix<double, Eigen::Dynamic, 2> pts;
  Eigen::VectorXd w;
  int degree = 0;  // declared polynomial exactness
  int size() const { return static_cast<int>(w.size()); }
};

// Rule on the segment a-b; pts lie on the segment, weights sum to its length,
// s holds the corresponding parameters in [0,1] with x(s) = a + s (b - a).
struct EdgeRule {
  Eigen::Matrix<double, Eigen::Dynamic, 2> pts;
  Eigen::VectorXd w, s;
  int degree = 0;
  int size() const { return static_cast<int>(w.size()); }
};
EdgeRule edge_rule(const Vec2& a, const Vec2& b, int degree);

// Rule on the triangle (a,b,c) exact for total degree `degree` (tensor
// Gauss-Legendre through the Duffy collapse).
QuadRule triangle_rule(const Vec2& a, const Vec2& b, const Vec2& c, int degree);

// Rule on a CCW simple polygon, built by sub-triangulation (fan rooted at a
// kernel point when one exists, ear clipping otherwise).  Construction
// verifies exactness on every monomial up to `degree` against analytic
// integrals obtained from the divergence theorem (an independent
// edge-integral route) and throws on disagreement.
QuadRule polygon_rule(const std::vector<Vec2>& poly, int degree);

}  // namespace vemnsch
