#include "vemnsch/system.hpp"

#include <cmath>
#include <string>

#include "vemnsch/parallel.hpp"
#include "vemnsch/phase_element.hpp"
#include "vemnsch/poly_decomp.hpp"
#include "vemnsch/velocity_element.hpp"

namespace vemnsch {

GlobalSystem::GlobalSystem(const PolygonalMesh& mesh, int k, int l,
                           const PhysParams& phys, int threads)
    : mesh_(mesh),
      phys_(phys),
      maps_(build_dof_maps(mesh, k, l)),
      cons_(build_constraints(mesh, maps_)),
      threads_(std::max(1, threads)) {
  const int NC = mesh_.n_cells();
  forms_.resize(NC);
  parallel_for(NC, threads_, [&](int c) {
    forms_[c] = std::make_unique<LocalForms>(mesh_, c, k, l);
  });
}

Eigen::VectorXd GlobalSystem::local_u(const Eigen::VectorXd& x, int c) const {
  const auto& idx = maps_.cell_u[c];
  Eigen::VectorXd v(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) v(i) = x(idx[i]);
  return v;
}

Eigen::VectorXd GlobalSystem::local_p(const Eigen::VectorXd& x, int c) const {
  const int m = np(maps_.k - 1);
  return x.segment(maps_.off_p + maps_.cell_p[c], m);
}

Eigen::VectorXd GlobalSystem::local_phi(const Eigen::VectorXd& x, int c) const {
  const auto& idx = maps_.cell_phi[c];
  Eigen::VectorXd v(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) v(i) = x(maps_.off_phi + idx[i]);
  return v;
}

namespace {

struct CellResidual {
  Eigen::VectorXd ru, rp, rphi;
  double rmu = 0;
};

struct CellJacobian {
  Eigen::MatrixXd Juu, Juphi, Jphiphi, Jphiu;
  // constant blocks (Bp, pvol) are read from the elements directly
};

}  // namespace

Eigen::VectorXd GlobalSystem::residual(const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& x_prev, double tau,
                                       const FlowField& g,
                                       const ScalarField& gphi,
                                       const FlowField& phase_flux) const {
  const int NC = mesh_.n_cells();
  const double nu = phys_.nu, lam = phys_.lambda, gam = phys_.gamma,
               eps = phys_.eps;
  const double mu = x(maps_.off_mu);
  std::vector<CellResidual> loc(NC);
  parallel_for(NC, threads_, [&](int c) {
    const LocalForms& lf = *forms_[c];
    const Eigen::VectorXd u = local_u(x, c), up = local_u(x_prev, c);
    const Eigen::VectorXd ph = local_phi(x, c), php = local_phi(x_prev, c);
    const Eigen::VectorXd pc = local_p(x, c);
    const VelocityElement& ve = lf.vel();
    const PhaseElement& pe = lf.phase();

    const Eigen::MatrixXd Ct = lf.conv_flow(u);
    Eigen::VectorXd ru = ve.MF * ((u - up) / tau) + nu * (ve.Anab * u) +
                         0.5 * (Ct * u - Ct.transpose() * u) +
                         lam * lf.stress_vec(ph) - ve.Bp.transpose() * pc;
    if (g) ru -= lf.load_flow(g);

    Eigen::VectorXd rp = ve.Bp * u + mu * ve.pvol;

    const Eigen::MatrixXd Kt = lf.conv_phase(u);
    Eigen::VectorXd rphi = pe.M * ((ph - php) / tau) + gam * (pe.AD * ph) +
                           0.5 * (Kt * ph - Kt.transpose() * ph) +
                           (gam / (eps * eps)) * lf.dwell_vec(ph);
    if (gphi) rphi -= lf.load_phase(gphi);
    if (phase_flux) rphi += lf.transport_flux_correction(phase_flux);

    if (!ru.allFinite() || !rp.allFinite() || !rphi.allFinite())
      throw SolverError("residual: non-finite value on cell " + std::to_string(c));
    loc[c].ru = std::move(ru);
    loc[c].rp = std::move(rp);
    loc[c].rphi = std::move(rphi);
    loc[c].rmu = ve.pvol.dot(pc);
  });

  Eigen::VectorXd r = Eigen::VectorXd::Zero(maps_.n_total);
  for (int c = 0; c < NC; ++c) {
    const auto& cu = maps_.cell_u[c];
    for (size_t i = 0; i < cu.size(); ++i) r(cu[i]) += loc[c].ru(i);
    const int p0 = maps_.off_p + maps_.cell_p[c];
    r.segment(p0, loc[c].rp.size()) += loc[c].rp;
    r(maps_.off_mu) += loc[c].rmu;
    const auto& cf = maps_.cell_phi[c];
    for (size_t i = 0; i < cf.size(); ++i) r(maps_.off_phi + cf[i]) += loc[c].rphi(i);
  }
  return r;
}

Eigen::SparseMatrix<double> GlobalSystem::jacobian(const Eigen::VectorXd& x,
                                                   double tau) const {
  const int NC = mesh_.n_cells();
  const double nu = phys_.nu, lam = phys_.lambda, gam = phys_.gamma,
               eps = phys_.eps;
  std::vector<CellJacobian> loc(NC);
  parallel_for(NC, threads_, [&](int c) {
    const LocalForms& lf = *forms_[c];
    const Eigen::VectorXd u = local_u(x, c);
    const Eigen::VectorXd ph = local_phi(x, c);
    const VelocityElement& ve = lf.vel();
    const PhaseElement& pe = lf.phase();

    const Eigen::MatrixXd Ct = lf.conv_flow(u);
    Eigen::MatrixXd D1, D2;
    lf.conv_flow_jac(u, D1, D2);
    loc[c].Juu = ve.MF / tau + nu * ve.Anab + 0.5 * (Ct - Ct.transpose()) +
                 0.5 * (D1 - D2);
    loc[c].Juphi = lam * lf.stress_jac(ph);

    const Eigen::MatrixXd Kt = lf.conv_phase(u);
    loc[c].Jphiphi = pe.M / tau + gam * pe.AD + 0.5 * (Kt - Kt.transpose()) +
                     (gam / (eps * eps)) * lf.dwell_jac(ph);
    loc[c].Jphiu = lf.conv_phase_jac_u(u, ph);
  });

  std::vector<Eigen::Triplet<double>> trips;
  size_t nnz_estimate = 0;
  for (int c = 0; c < NC; ++c) {
    const size_t nu_loc = maps_.cell_u[c].size(), nf = maps_.cell_phi[c].size();
    const size_t npl = np(maps_.k - 1);
    nnz_estimate +=
        nu_loc * nu_loc + 2 * nu_loc * nf + nf * nf + 2 * nu_loc * npl + 2 * npl;
  }
  trips.reserve(nnz_estimate);
  for (int c = 0; c < NC; ++c) {
    const auto& cu = maps_.cell_u[c];
    const auto& cf = maps_.cell_phi[c];
    const int p0 = maps_.off_p + maps_.cell_p[c];
    const int npl = np(maps_.k - 1);
    const VelocityElement& ve = forms_[c]->vel();
    for (size_t i = 0; i < cu.size(); ++i)
      for (size_t j = 0; j < cu.size(); ++j)
        trips.emplace_back(cu[i], cu[j], loc[c].Juu(i, j));
    for (size_t i = 0; i < cu.size(); ++i)
      for (size_t j = 0; j < cf.size(); ++j)
        trips.emplace_back(cu[i], maps_.off_phi + cf[j], loc[c].Juphi(i, j));
    for (int q = 0; q < npl; ++q)
      for (size_t i = 0; i < cu.size(); ++i) {
        trips.emplace_back(cu[i], p0 + q, -ve.Bp(q, i));  // -B^T p in momentum
        trips.emplace_back(p0 + q, cu[i], ve.Bp(q, i));   // continuity rows
      }
    for (int q = 0; q < npl; ++q) {
      trips.emplace_back(p0 + q, maps_.off_mu, ve.pvol(q));
      trips.emplace_back(maps_.off_mu, p0 + q, ve.pvol(q));
    }
    for (size_t i = 0; i < cf.size(); ++i)
      for (size_t j = 0; j < cf.size(); ++j)
        trips.emplace_back(maps_.off_phi + cf[i], maps_.off_phi + cf[j],
                           loc[c].Jphiphi(i, j));
    for (size_t i = 0; i < cf.size(); ++i)
      for (size_t j = 0; j < cu.size(); ++j)
        trips.emplace_back(maps_.off_phi + cf[i], cu[j], loc[c].Jphiu(i, j));
  }
  Eigen::SparseMatrix<double> J(maps_.n_total, maps_.n_total);
  J.setFromTriplets(trips.begin(), trips.end());
  return J;
}

Eigen::VectorXd GlobalSystem::interpolate_state(const FlowField& u,
                                                const ScalarField& phi,
                                                const FlowField& grad_phi,
                                                const ScalarField& p_hat) const {
  const int NC = mesh_.n_cells();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(maps_.n_total);
  std::vector<Eigen::VectorXd> lu(NC), lphi(NC), lp(NC);
  parallel_for(NC, threads_, [&](int c) {
    const CellGeometry& g = forms_[c]->geo();
    if (u) lu[c] = interpolate_velocity(g, maps_.k, u);
    if (phi) lphi[c] = interpolate_phase(g, maps_.l, phi, grad_phi);
    if (p_hat) {
      const int m = np(maps_.k - 1);
      Eigen::VectorXd mom(m);
      const auto& exps = mono_exponents(maps_.k - 1);
      for (int j = 0; j < m; ++j) {
        double s = 0;
        for (int q = 0; q < g.quad.size(); ++q) {
          const Vec2 pq = g.quad.pts.row(q).transpose();
          s += g.quad.w(q) * p_hat(pq) * mono_eval(g.frame, exps[j], pq);
        }
        mom(j) = s;
      }
      lp[c] = forms_[c]
                  ->vel()
                  .H.topLeftCorner(m, m)
                  .llt()
                  .solve(mom);
    }
  });
  for (int c = 0; c < NC; ++c) {
    if (u) {
      const auto& cu = maps_.cell_u[c];
      for (size_t i = 0; i < cu.size(); ++i) x(cu[i]) = lu[c](i);
    }
    if (phi) {
      const auto& cf = maps_.cell_phi[c];
      for (size_t i = 0; i < cf.size(); ++i) x(maps_.off_phi + cf[i]) = lphi[c](i);
    }
    if (p_hat) x.segment(maps_.off_p + maps_.cell_p[c], lp[c].size()) = lp[c];
  }
  return x;
}

double GlobalSystem::total_mass(const Eigen::VectorXd& x) const {
  double m = 0;
  for (int c = 0; c < mesh_.n_cells(); ++c) m += forms_[c]->mass(local_phi(x, c));
  return m;
}

double GlobalSystem::energy(const Eigen::VectorXd& x) const {
  const double lam = phys_.lambda, eps = phys_.eps;
  double J = 0;
  for (int c = 0; c < mesh_.n_cells(); ++c) {
    const Eigen::VectorXd u = local_u(x, c), ph = local_phi(x, c);
    J += forms_[c]->kinetic(u) + lam * forms_[c]->grad_energy(ph) +
         lam / (eps * eps) * forms_[c]->well_energy(ph);
  }
  return J;
}

double GlobalSystem::div_inf(const Eigen::VectorXd& x) const {
  double dmax = 0, unorm2 = 0;
  for (int c = 0; c < mesh_.n_cells(); ++c) {
    const Eigen::VectorXd u = local_u(x, c);
    dmax = std::max(dmax, forms_[c]->div_norm(u));
    const VelocityElement& ve = forms_[c]->vel();
    unorm2 += u.dot((ve.MF + ve.Anab) * u);
  }
  const double unorm = std::sqrt(std::max(unorm2, 0.0));
  return unorm > 0 ? dmax / unorm : dmax;
}

}  // namespace vemnsch
