#pragma once

#include <Eigen/Sparse>

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "vemnsch/dof_map.hpp"
#include "vemnsch/exact_solution.hpp"
#include "vemnsch/local_forms.hpp"
#include "vemnsch/mesh.hpp"

namespace vemnsch {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using FlowField = std::function<Vec2(const Vec2&)>;
using ScalarField = std::function<double(const Vec2&)>;

// Assembled implicit-Euler step of the coupled system.  Unknown layout
// [u | p | mu | phi]; residual rows follow it:
//   momentum:   MF (u - u_prev)/tau + nu Anab u + C_F(u) u + lambda d(phi)
//               - B^T p - mu-free - load,
//   continuity: B u + mu * (cell volumes of pressure monomials) = 0,
//   zero mean:  sum_E int_E p_hat = 0,
//   phase:      M (phi - phi_prev)/tau + gamma AD phi + C_h(u) phi
//               + gamma eps^-2 r(phi) - load.
class GlobalSystem {
 public:
  GlobalSystem(const PolygonalMesh& mesh, int k, int l, const PhysParams& phys,
               int threads = 1);

  const PolygonalMesh& mesh() const { return mesh_; }
  const DofMaps& maps() const { return maps_; }
  const ConstraintMap& cons() const { return cons_; }
  const PhysParams& phys() const { return phys_; }
  const LocalForms& forms(int c) const { return *forms_[c]; }
  int k() const { return maps_.k; }
  int l() const { return maps_.l; }
  int threads() const { return threads_; }

  // phase_flux, when given, carries the exact boundary flux density u*phi of
  // a problem with in/outflow velocity data; the phase residual then includes
  // the boundary functional restoring consistency of the skew transport form
  // with a volume-manufactured source (see
  // LocalForms::transport_flux_correction).
  Eigen::VectorXd residual(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prev,
                           double tau, const FlowField& g,
                           const ScalarField& gphi,
                           const FlowField& phase_flux = nullptr) const;
  Eigen::SparseMatrix<double> jacobian(const Eigen::VectorXd& x, double tau) const;

  // Local coefficient slices of a full vector.
  Eigen::VectorXd local_u(const Eigen::VectorXd& x, int c) const;
  Eigen::VectorXd local_p(const Eigen::VectorXd& x, int c) const;
  Eigen::VectorXd local_phi(const Eigen::VectorXd& x, int c) const;

  // DoF interpolation of fields into a full vector (pressure by cellwise L2
  // projection when given).
  Eigen::VectorXd interpolate_state(const FlowField& u, const ScalarField& phi,
                                    const FlowField& grad_phi,
                                    const ScalarField& p_hat = nullptr) const;

  // Diagnostics over a full vector.
  double total_mass(const Eigen::VectorXd& x) const;
  double energy(const Eigen::VectorXd& x) const;
  // max_E ||iota(u)||_0,E relative to the global velocity norm
  double div_inf(const Eigen::VectorXd& x) const;

 private:
  PolygonalMesh mesh_;
  PhysParams phys_;
  DofMaps maps_;
  ConstraintMap cons_;
  int threads_ = 1;
  std::vector<std::unique_ptr<LocalForms>> forms_;
};

struct NewtonOptions {
  double rel_tol = 1e-6;
  double abs_floor = 1e-14;
  int max_iter = 25;
};

struct NewtonReport {
  bool converged = false;
  int iters = 0;
  std::vector<double> res_norms;  // free-residual sup norms, one per evaluation
  double div_inf_max = 0.0;       // max over the step's iterates
};

// One implicit step: overwrites the constrained entries of x with
// `fixed_vals`, then runs the Newton iteration on the free unknowns (seeded
// with the incoming x).  Throws SolverError on non-convergence or a singular
// factorization.
NewtonReport newton_step(const GlobalSystem& sys, Eigen::VectorXd& x,
                         const Eigen::VectorXd& x_prev, double tau,
                         const Eigen::VectorXd& fixed_vals, const FlowField& g,
                         const ScalarField& gphi, const NewtonOptions& opt = {},
                         const FlowField& phase_flux = nullptr);

}  // namespace vemnsch
