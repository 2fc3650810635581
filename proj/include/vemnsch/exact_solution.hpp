#pragma once

#include <Eigen/Dense>

#include "vemnsch/geometry.hpp"

namespace vemnsch {

struct PhysParams {
  double nu = 1.0;      // kinematic viscosity
  double lambda = 1.0;  // capillary coefficient
  double gamma = 1.0;   // mobility
  double eps = 1.0;     // interface width
};

// Smooth reference solution of the coupled flow/phase system on (0,1)^2 with
// affine time dependence, together with the closed-form forcing terms that
// make it an exact solution:
//   u   = (t+1) e^x ( sin y + y cos y - x sin y,
//                    -(cos y + x cos y + y sin y) )      (divergence-free)
//   p   = (2t+1) sin(pi x) cos(4 pi y)
//   phi = (t+1) cos(2 pi x) cos(2 pi y)
//   p_hat = p + (lambda/2) |grad phi|^2
// Flow forcing:  g   = u_t - nu lap u + (grad u) u + grad p_hat
//                      + lambda (lap phi) grad phi
// Phase forcing: g_q = phi_t + u . grad phi
//                      + gamma (lap^2 phi - eps^-2 lap f(phi)),  f(s)=s^3-s.
// All derivatives are hand-derived closed forms (validated against finite
// differences in the test suite).
class ManufacturedSolution {
 public:
  explicit ManufacturedSolution(const PhysParams& par) : par_(par) {}

  const PhysParams& params() const { return par_; }

  Vec2 velocity(const Vec2& x, double t) const;
  Eigen::Matrix2d velocity_grad(const Vec2& x, double t) const;  // (i,j) = du_i/dx_j
  Vec2 velocity_dt(const Vec2& x, double t) const;
  Vec2 velocity_lap(const Vec2& x, double t) const;

  double pressure(const Vec2& x, double t) const;
  Vec2 pressure_grad(const Vec2& x, double t) const;
  double pressure_hat(const Vec2& x, double t) const;

  double phase(const Vec2& x, double t) const;
  Vec2 phase_grad(const Vec2& x, double t) const;
  Eigen::Matrix2d phase_hess(const Vec2& x, double t) const;
  double phase_lap(const Vec2& x, double t) const;
  double phase_bilap(const Vec2& x, double t) const;
  double phase_dt(const Vec2& x, double t) const;

  Vec2 forcing_flow(const Vec2& x, double t) const;
  double forcing_phase(const Vec2& x, double t) const;

 private:
  PhysParams par_;
};

// Initial phase field of the elliptical-bubble experiment on (-0.4,0.4)^2.
double bubble_phi0(const Vec2& x);
Vec2 bubble_grad_phi0(const Vec2& x);

}  // namespace vemnsch
