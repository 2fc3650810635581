#include "vemnsch/transient.hpp"

#include <string>
#include <utility>

namespace vemnsch {

std::vector<StepRecord> run_transient(const GlobalSystem& sys,
                                      Eigen::VectorXd& x, double t0, double tau,
                                      int nsteps, const TimeFlowField& ub,
                                      const TimeFlowField& g,
                                      const TimeScalarField& gphi,
                                      const TimeFlowField& phase_flux,
                                      const TransientOptions& opt) {
  std::vector<StepRecord> records;
  records.reserve(nsteps + 1);
  StepRecord r0;
  r0.step = 0;
  r0.t = t0;
  r0.mass = sys.total_mass(x);
  r0.energy = sys.energy(x);
  records.push_back(r0);
  if (opt.on_step) opt.on_step(0, t0, x);

  for (int n = 1; n <= nsteps; ++n) {
    const double t = t0 + n * tau;
    Eigen::VectorXd fixed = Eigen::VectorXd::Zero(sys.maps().n_total);
    if (ub)
      fixed = boundary_values(sys.mesh(), sys.maps(),
                              [&](const Vec2& p) { return ub(p, t); });
    FlowField gt;
    if (g) gt = [&, t](const Vec2& p) { return g(p, t); };
    ScalarField gphit;
    if (gphi) gphit = [&, t](const Vec2& p) { return gphi(p, t); };
    FlowField fluxt;
    if (phase_flux) fluxt = [&, t](const Vec2& p) { return phase_flux(p, t); };

    const Eigen::VectorXd x_prev = x;
    NewtonReport rep;
    try {
      rep = newton_step(sys, x, x_prev, tau, fixed, gt, gphit, opt.newton,
                        fluxt);
    } catch (const SolverError& e) {
      throw SolverError("step " + std::to_string(n) + " (t = " +
                        std::to_string(t) + "): " + e.what());
    }

    StepRecord rec;
    rec.step = n;
    rec.t = t;
    rec.mass = sys.total_mass(x);
    rec.energy = sys.energy(x);
    rec.newton_iters = rep.iters;
    rec.final_residual = rep.res_norms.empty() ? 0.0 : rep.res_norms.back();
    rec.div_inf = rep.div_inf_max;
    records.push_back(rec);
    if (opt.on_step) opt.on_step(n, t, x);
  }
  return records;
}

}  // namespace vemnsch
