#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "vemnsch/mesh.hpp"

namespace vemnsch {

// Local operators of the divergence-free velocity element of order k (khat =
// max(k,2)) with piecewise-P_{k-1} pressure.
//
// Local DoF ordering (frozen; the global numbering mirrors it):
//   [2 nv]                per vertex i: u_x(a_i), u_y(a_i);
//   [nv (k-1 + khat-1)]   per side r (stored-edge parameter order): values of
//                         u . t_e at the k-1 internal Gauss-Lobatto nodes,
//                         then u . n_e at the khat-1 internal nodes, with t_e,
//                         n_e the stored (global) edge frame;
//   [np(k-3)]             rotated interior moments |E|^-1 (u . mperp m_a)_E;
//   [np(k-1) - 1]         divergence moments h_E^-1 (div u, m_a)_E, |a| >= 1.
//
// Polynomial coefficient layout: vector polynomials stack the x-component
// coefficients then the y-component ones; 2x2 tensors (gradients) stack the
// four component blocks in row-major order (xx, xy, yx, yy).
struct VelocityElement {
  int k = 1, khat = 2;
  int nv = 0, ndof = 0;
  int npk = 0, npk1 = 0;  // np(k), np(k-1)
  int off_edge = 0, off_rot = 0, off_div = 0;
  int n_edge_t = 0, n_edge_n = 0;  // k-1, khat-1

  Eigen::MatrixXd H;         // monomial mass up to degree k+1
  Eigen::MatrixXd pi_nabla;  // 2 npk   x N   H1-seminorm projector
  Eigen::MatrixXd pi0;       // 2 npk   x N   L2 projector
  Eigen::MatrixXd pi_grad;   // 4 npk1  x N   L2 projection of the gradient
  Eigen::MatrixXd iota;      // npk1    x N   polynomial divergence
  Eigen::MatrixXd mom;       // 2 npk   x N   moments vs vector monomials
  Eigen::MatrixXd dofmat;    // N x 2 npk     DoFs of the vector monomials
  Eigen::MatrixXd Bp;        // npk1 x N      (m_q, iota(v))_E  (exact mixed term)
  Eigen::VectorXd pvol;      // npk1          integrals of the pressure monomials
  Eigen::MatrixXd S0, Snab;  // N x N         dofi-dofi stabilizations (unscaled)
  Eigen::MatrixXd MF;        // N x N         (Pi0 u, Pi0 v) + h^2 S0
  Eigen::MatrixXd Anab;      // N x N         (Pi_grad u, Pi_grad v) + Snab

  // Per side, values at the edge-rule points: u . n_outward, u_x, u_y.
  std::vector<Eigen::MatrixXd> un_out, ux_edge, uy_edge;

  // Internal edge-node parameters (in (0,1), stored-edge order).
  Eigen::VectorXd tnodes, nnodes;
};

VelocityElement build_velocity_element(const CellGeometry& g, int k);

// DoF vector of a smooth field (vertex/edge values exact, interior moments by
// the cell rule).
Eigen::VectorXd interpolate_velocity(const CellGeometry& g, int k,
                                     const std::function<Vec2(const Vec2&)>& u);

// Number of local DoFs for a cell with nv vertices.
int velocity_ndof(int k, int nv);

}  // namespace vemnsch
