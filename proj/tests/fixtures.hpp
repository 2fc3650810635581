#pragma once

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "doctest.h"
#include "vemnsch/local_forms.hpp"
#include "vemnsch/mesh.hpp"
#include "vemnsch/monomials.hpp"

namespace vemtest {

using namespace vemnsch;

// Single-cell fixtures: a skewed triangle, a non-parallelogram quad and an
// irregular pentagon, all CCW and star-shaped.
inline PolygonalMesh triangle_mesh() {
  return build_mesh({{0.0, 0.0}, {1.0, 0.1}, {0.35, 0.9}}, {{0, 1, 2}});
}

inline PolygonalMesh quad_mesh() {
  return build_mesh({{0.0, 0.0}, {1.1, -0.05}, {1.0, 0.95}, {-0.1, 1.0}},
                    {{0, 1, 2, 3}});
}

inline PolygonalMesh pentagon_mesh() {
  return build_mesh(
      {{0.0, 0.0}, {0.9, -0.1}, {1.3, 0.6}, {0.5, 1.1}, {-0.2, 0.7}},
      {{0, 1, 2, 3, 4}});
}

// Two unit triangles sharing the diagonal edge, for cross-cell trace checks.
inline PolygonalMesh two_triangle_mesh() {
  return build_mesh({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}},
                    {{0, 1, 2}, {0, 2, 3}});
}

inline CellGeometry cell_geo(const PolygonalMesh& m, int c, int k, int l) {
  return cell_geometry(m, c, cell_quad_degree(k, l), edge_quad_degree(k, l));
}

inline std::mt19937& rng() {
  static std::mt19937 gen(123456u);
  return gen;
}

inline double urand(double a = -1.0, double b = 1.0) {
  return std::uniform_real_distribution<double>(a, b)(rng());
}

inline Eigen::VectorXd random_vec(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = urand();
  return v;
}

// Value of the scaled-monomial polynomial with the given coefficients.
inline double poly_eval(const MonomialFrame& f, const Eigen::VectorXd& coeff,
                        int deg, const Vec2& x) {
  const auto& exps = mono_exponents(deg);
  double s = 0;
  for (int j = 0; j < coeff.size(); ++j) s += coeff(j) * mono_eval(f, exps[j], x);
  return s;
}

inline Vec2 poly_grad(const MonomialFrame& f, const Eigen::VectorXd& coeff,
                      int deg, const Vec2& x) {
  const auto& exps = mono_exponents(deg);
  Vec2 g(0, 0);
  for (int j = 0; j < coeff.size(); ++j) g += coeff(j) * mono_grad(f, exps[j], x);
  return g;
}

}  // namespace vemtest
