#pragma once

#include <functional>
#include <vector>

#include "vemnsch/system.hpp"

namespace vemnsch {

using TimeFlowField = std::function<Vec2(const Vec2&, double)>;
using TimeScalarField = std::function<double(const Vec2&, double)>;

// One accepted time level.  `div_inf` is the maximum relative cellwise
// divergence norm seen over the step's Newton iterates, `final_residual`
// the last free-residual sup norm.
struct StepRecord {
  int step = 0;
  double t = 0;
  double mass = 0;
  double energy = 0;
  int newton_iters = 0;
  double final_residual = 0;
  double div_inf = 0;
};

struct TransientOptions {
  NewtonOptions newton;
  // Called after every accepted step (and once for the initial state with
  // step = 0); use it to write snapshots.
  std::function<void(int step, double t, const Eigen::VectorXd& x)> on_step;
};

// Implicit-Euler time loop over n = 1..nsteps from the state in x at time t0.
// Boundary velocity data, forcing terms and phase source may be null (zero).
// phase_flux is the exact boundary flux density u*phi of a problem with
// in/outflow data (consistency of the skew transport form; see
// GlobalSystem::residual); null when u.n vanishes on the boundary.
// Returns one record per level including the initial one (step 0 carries the
// seed's mass/energy and zero iteration counts).  Step failures are rethrown
// with the step index prepended.
std::vector<StepRecord> run_transient(const GlobalSystem& sys,
                                      Eigen::VectorXd& x, double t0, double tau,
                                      int nsteps, const TimeFlowField& ub,
                                      const TimeFlowField& g,
                                      const TimeScalarField& gphi,
                                      const TimeFlowField& phase_flux = nullptr,
                                      const TransientOptions& opt = {});

}  // namespace vemnsch
