#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "vemnsch/mesh.hpp"

namespace vemnsch {

// Local operators of the C1-conforming phase element of order l (lhat =
// max(l,3)).
//
// Local DoF ordering (frozen; the global numbering mirrors it):
//   [3 nv]                  per vertex i: phi(a_i), then the scaled gradient
//                           h_a dphi/dx(a_i), h_a dphi/dy(a_i);
//   [nv (l-2 + lhat-3)]     per side r (stored-edge parameter order): scaled
//                           normal derivatives h_e dphi/dn_e at the l-2
//                           internal Gauss-Lobatto nodes (n_e the stored edge
//                           normal), then values of phi at the lhat-3 internal
//                           Gauss-Lobatto nodes;
//   [np(l-4)]               interior moments |E|^-1 (m_a, phi)_E.
//
// Edge traces: the value trace is the P_lhat polynomial matching endpoint
// values, endpoint tangential derivatives (implied by the vertex gradients)
// and the internal value nodes; the normal-derivative trace is the P_{l-1}
// polynomial matching the endpoint normal derivatives and the internal
// normal-derivative nodes.
struct PhaseElement {
  int l = 2, lhat = 3;
  int nv = 0, ndof = 0;
  int npl = 0, npl1 = 0, npl2 = 0;  // np(l), np(l-1), np(l-2)
  int off_edge = 0, off_mom = 0;
  int n_edge_n = 0, n_edge_v = 0;  // l-2, lhat-3

  Eigen::MatrixXd H;        // monomial mass up to degree l
  Eigen::MatrixXd piD;      // npl    x N   H2-seminorm projector
  Eigen::MatrixXd pi0;      // npl    x N   L2 projector
  Eigen::MatrixXd pi_grad;  // 2 npl1 x N   L2 projection of the gradient
  Eigen::MatrixXd pi_hess;  // 4 npl2 x N   L2 projection of the Hessian (xx,xy,yx,yy)
  Eigen::MatrixXd pi_lap;   // npl2   x N   L2 projection of the Laplacian
  Eigen::MatrixXd momphi;   // npl    x N   moments (phi, m_a)_E
  Eigen::MatrixXd dofmat;   // N x npl      DoFs of the monomials
  Eigen::MatrixXd S0, SD;   // N x N        dofi-dofi stabilizations (unscaled)
  Eigen::MatrixXd M;        // N x N        (Pi0 phi, Pi0 psi) + h^2 S0
  Eigen::MatrixXd AD;       // N x N        (Pi_hess phi, Pi_hess psi) + h^-2 SD

  // Per side: s-power coefficient maps of the value trace (lhat+1 x N) and of
  // the normal-derivative trace w.r.t. the stored edge normal (l x N), and
  // values at the edge-rule points of phi, dphi/dx, dphi/dy and the monomials.
  std::vector<Eigen::MatrixXd> coefV, coefN;
  std::vector<Eigen::MatrixXd> val_edge, gx_edge, gy_edge, vmono_edge;

  // Internal edge-node parameters (in (0,1), stored-edge order).
  Eigen::VectorXd dnodes, vnodes;
};

PhaseElement build_phase_element(const CellGeometry& g, int l);

Eigen::VectorXd interpolate_phase(const CellGeometry& g, int l,
                                  const std::function<double(const Vec2&)>& phi,
                                  const std::function<Vec2(const Vec2&)>& grad_phi);

int phase_ndof(int l, int nv);

}  // namespace vemnsch
