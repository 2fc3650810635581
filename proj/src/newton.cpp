#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <string>

#include "vemnsch/system.hpp"

namespace vemnsch {

NewtonReport newton_step(const GlobalSystem& sys, Eigen::VectorXd& x,
                         const Eigen::VectorXd& x_prev, double tau,
                         const Eigen::VectorXd& fixed_vals, const FlowField& g,
                         const ScalarField& gphi, const NewtonOptions& opt,
                         const FlowField& phase_flux) {
  const Eigen::SparseMatrix<double>& P = sys.cons().P;
  const Eigen::SparseMatrix<double> Pt = P.transpose();

  // Impose the constrained values, keep the free part of the seed.
  x = P * (Pt * x) + fixed_vals;

  NewtonReport rep;
  double tol = opt.abs_floor;
  for (int it = 0;; ++it) {
    const Eigen::VectorXd r_free =
        Pt * sys.residual(x, x_prev, tau, g, gphi, phase_flux);
    const double rn =
        r_free.size() > 0 ? r_free.lpNorm<Eigen::Infinity>() : 0.0;
    rep.res_norms.push_back(rn);
    if (it == 0) tol = std::max(opt.rel_tol * rn, opt.abs_floor);
    if (rn <= tol) {
      rep.converged = true;
      break;
    }
    if (it >= opt.max_iter) {
      std::string hist;
      for (double v : rep.res_norms) hist += " " + std::to_string(v);
      throw SolverError("newton_step: no convergence after " +
                        std::to_string(opt.max_iter) +
                        " iterations; residual norms:" + hist);
    }

    const Eigen::SparseMatrix<double> Jf =
        (Pt * sys.jacobian(x, tau) * P).pruned();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(Jf);
    if (lu.info() != Eigen::Success)
      throw SolverError("newton_step: singular Jacobian factorization");
    Eigen::VectorXd delta = lu.solve(Eigen::VectorXd(-r_free));
    if (lu.info() != Eigen::Success || !delta.allFinite())
      throw SolverError("newton_step: linear solve failed");
    // One sweep of iterative refinement: the saddle blocks are scaled very
    // differently (mass/tau against the divergence rows), and a single
    // factorized solve can leave the small-scale linear rows several digits
    // short of machine precision.
    delta += lu.solve(Eigen::VectorXd(-r_free - Jf * delta));
    if (!delta.allFinite())
      throw SolverError("newton_step: linear solve failed");

    x += P * delta;
    ++rep.iters;
    rep.div_inf_max = std::max(rep.div_inf_max, sys.div_inf(x));
  }
  return rep;
}

}  // namespace vemnsch
