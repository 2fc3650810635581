#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "vemnsch/mesh.hpp"
#include "vemnsch/phase_element.hpp"
#include "vemnsch/velocity_element.hpp"

namespace vemnsch {

// Quadrature degree policy shared by element construction, forms and error
// evaluation: one volume rule per cell and one rule per edge cover every
// integrand appearing in the discrete forms (the stiffest are the quartic
// potential at degree 4l and the convective terms), with a +2 safety margin.
int cell_quad_degree(int k, int l);
int edge_quad_degree(int k, int l);

// Per-cell form evaluators of the coupled flow/phase discretization.
//
// Constant (state-independent) matrices live in the embedded elements
// (vel.MF, vel.Anab, ph.M, ph.AD, vel.Bp); this class adds the nonlinear
// forms: convective forms of both equations in skew-symmetrized shape, the
// capillary stress d, the double-well term r, load vectors and diagnostic
// functionals.  All evaluators are pure functions of local coefficient
// vectors and safe to call concurrently.
class LocalForms {
 public:
  LocalForms(const PolygonalMesh& mesh, int cell, int k, int l);

  const CellGeometry& geo() const { return g_; }
  const VelocityElement& vel() const { return vel_; }
  const PhaseElement& phase() const { return ph_; }
  int nu() const { return vel_.ndof; }
  int nphi() const { return ph_.ndof; }

  // Convective form of the flow equation: Ct(w)_{ij} = ((grad dof_j) Pi0 w,
  // Pi0 dof_i)_E; the skew-symmetric form used in the scheme is
  // 0.5 (Ct - Ct^T).
  Eigen::MatrixXd conv_flow(const Eigen::VectorXd& w) const;
  // Directional derivatives at state u of the two slots:
  // D1_{ij} = ct(e_j; u, e_i), D2_{ij} = ct(e_j; e_i, u).
  void conv_flow_jac(const Eigen::VectorXd& u, Eigen::MatrixXd& D1,
                     Eigen::MatrixXd& D2) const;

  // Convective form of the phase equation: Kt(u)_{ij} = ct_h(u; e_j, e_i)
  // with volume part (Pi0 u . grad(Pi0 phi), Pi0 psi)_E and boundary part
  // ((u.n_out)(phi - Pi0 phi), Pi0 psi)_{dE}; skew form is 0.5 (Kt - Kt^T).
  Eigen::MatrixXd conv_phase(const Eigen::VectorXd& u) const;
  // Derivative w.r.t. u of the skew form applied to phi:
  // J_{im} = 0.5 [ct_h(e_m; phi, e_i) - ct_h(e_m; e_i, phi)].
  Eigen::MatrixXd conv_phase_jac_u(const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& phi) const;

  // Capillary stress d(phi; phi, v) = (PiLap phi * PiGrad phi, Pi0 v)_E:
  // residual over velocity DoFs and derivative over phase DoFs.
  Eigen::VectorXd stress_vec(const Eigen::VectorXd& phi) const;
  Eigen::MatrixXd stress_jac(const Eigen::VectorXd& phi) const;

  // Double-well term r(phi; phi, psi) = (f'(Pi0 phi) PiGrad phi, PiGrad psi)
  // with f(s) = s^3 - s, and its full derivative.
  Eigen::VectorXd dwell_vec(const Eigen::VectorXd& phi) const;
  Eigen::MatrixXd dwell_jac(const Eigen::VectorXd& phi) const;

  // Load vectors (g, Pi0 v)_E and (q, Pi0 psi)_E.
  Eigen::VectorXd load_flow(const std::function<Vec2(const Vec2&)>& gfun) const;
  Eigen::VectorXd load_phase(const std::function<double(const Vec2&)>& qfun) const;

  // Transport flux data on the domain boundary.  The skew form underlying
  // conv_phase equals the plain transport integral (u . grad phi, psi) minus
  // 1/2 (u.n phi, psi)_Gamma, so a problem with prescribed in/outflow
  // (u.n != 0 on Gamma) and a source manufactured from the strong equation
  // needs this boundary functional added to the residual.  W is the exact
  // flux density u*phi; the returned vector is
  //   b_i = 1/2 (W . n_out, psi_i)_{dE ∩ Gamma}
  // evaluated with the exact edge value traces.  Zero for interior cells.
  Eigen::VectorXd transport_flux_correction(
      const std::function<Vec2(const Vec2&)>& W) const;

  // Diagnostics.
  double mass(const Eigen::VectorXd& phi) const;        // (Pi0 phi, 1)_E
  double kinetic(const Eigen::VectorXd& u) const;       // 0.5 |Pi0 u|^2
  double grad_energy(const Eigen::VectorXd& phi) const; // 0.5 |PiGrad phi|^2
  double well_energy(const Eigen::VectorXd& phi) const; // int 0.25 (s^2-1)^2
  double div_norm(const Eigen::VectorXd& u) const;      // ||iota(u)||_{0,E}
  // L2 norm of the chemical potential -PiLap phi + eps^-2 f(Pi0 phi).
  double chem_potential_sq(const Eigen::VectorXd& phi, double eps) const;

 private:
  CellGeometry g_;
  VelocityElement vel_;
  PhaseElement ph_;
  Eigen::VectorXd wq_;                   // cell rule weights
  Eigen::MatrixXd U0x_, U0y_;            // nq x Nu   Pi0 u values
  Eigen::MatrixXd Gxx_, Gxy_, Gyx_, Gyy_;  // nq x Nu  projected gradient values
  Eigen::MatrixXd Phi0_;                 // nq x Nl   Pi0 phi values
  Eigen::MatrixXd GP0x_, GP0y_;          // nq x Nl   grad(Pi0 phi) values
  Eigen::MatrixXd Gpx_, Gpy_;            // nq x Nl   PiGrad phi values
  Eigen::MatrixXd Lapq_;                 // nq x Nl   PiLap phi values
  std::vector<Eigen::MatrixXd> phi0_e_;  // per edge: Pi0 phi values at edge pts
  std::vector<char> bside_;              // per side: lies on the domain boundary
  Eigen::MatrixXd Mcons_u_;              // consistency part of MF
  Eigen::MatrixXd Agrad_phi_;            // projected-gradient Gram of the phase
};

}  // namespace vemnsch
