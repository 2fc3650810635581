#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "vemnsch/system.hpp"
#include "vemnsch/transient.hpp"

namespace vemnsch {

using MatrixField = std::function<Eigen::Matrix2d(const Vec2&)>;

struct ErrorTriple {
  double err_u = 0, err_p = 0, err_phi = 0;
  // Set when the corresponding exact field vanishes identically; the error is
  // then reported in absolute form.
  bool abs_u = false, abs_p = false, abs_phi = false;
};

// Relative error functionals of a discrete state against analytic fields:
//   velocity: cellwise L2 distance of the exact gradient to the projected
//             discrete gradient,
//   pressure: L2 distance after subtracting each field's domain mean,
//   phase:    cellwise L2 distance of the exact Hessian to the projected
//             discrete Hessian.
ErrorTriple compute_errors(const GlobalSystem& sys, const Eigen::VectorXd& x,
                           const MatrixField& grad_u, const ScalarField& p_hat,
                           const MatrixField& hess_phi);

// Projection-based chemical-potential postprocessing.  Per cell the pair of
// polynomial coefficient vectors (q, z): q holds the coefficients (degree
// l-2) of minus the projected Laplacian of phi_h, z those (degree l) of the
// projected phi_h; the field is w(x) = q(x) + eps^-2 f(z(x)) with
// f(s) = s^3 - s.
struct ChemPotentialCell {
  Eigen::VectorXd lap_part;
  Eigen::VectorXd phi0_part;
};
std::vector<ChemPotentialCell> chemical_potential(const GlobalSystem& sys,
                                                  const Eigen::VectorXd& x);

// One refinement level of a convergence study.
struct ErrorRow {
  std::string mesh_family;
  double h = 0, tau = 0;
  int k = 1, l = 2;
  ErrorTriple err;
};

// CSV serializers.  Every number prints with %.17g so identical runs produce
// byte-identical files.
std::string diagnostics_csv(const std::vector<StepRecord>& records);
// Columns mesh_family,h,k,l,tau,err_u_H1,err_p_L2,err_phi_H2 plus rate
// columns computed between consecutive rows (blank on the first row).
std::string errors_csv(const std::vector<ErrorRow>& rows);

// Plain-text state snapshot: per cell the polynomial coefficients of the
// projected velocity, the pressure and the projected phase field, followed by
// vertex samples.  The format is documented in the emitted header lines.
std::string snapshot_text(const GlobalSystem& sys, const Eigen::VectorXd& x,
                          int step, double t);

}  // namespace vemnsch
