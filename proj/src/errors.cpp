#include "vemnsch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vemnsch/monomials.hpp"
#include "vemnsch/phase_element.hpp"
#include "vemnsch/velocity_element.hpp"

namespace vemnsch {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_int(long long v) { return std::to_string(v); }

double ratio_or_abs(double num, double den, bool& abs_flag) {
  if (den > 0) return std::sqrt(num / den);
  abs_flag = true;
  return std::sqrt(num);
}

}  // namespace

ErrorTriple compute_errors(const GlobalSystem& sys, const Eigen::VectorXd& x,
                           const MatrixField& grad_u, const ScalarField& p_hat,
                           const MatrixField& hess_phi) {
  const int k = sys.k(), l = sys.l();
  const int npk1 = np(k - 1), npl2 = np(l - 2);
  double num_u = 0, den_u = 0, num_phi = 0, den_phi = 0;
  double int_d = 0, int_d2 = 0, int_q = 0, int_q2 = 0, area = 0;

  for (int c = 0; c < sys.mesh().n_cells(); ++c) {
    const LocalForms& lf = sys.forms(c);
    const CellGeometry& g = lf.geo();
    const Eigen::VectorXd u = sys.local_u(x, c);
    const Eigen::VectorXd ph = sys.local_phi(x, c);
    const Eigen::VectorXd pc = sys.local_p(x, c);
    const int nq = g.quad.size();

    const Eigen::MatrixXd Vk1 = mono_values(g.frame, k - 1, g.quad.pts);
    const Eigen::MatrixXd Vl2 = mono_values(g.frame, l - 2, g.quad.pts);
    Eigen::MatrixXd gu(nq, 4);
    for (int b = 0; b < 4; ++b)
      gu.col(b) = Vk1 * (lf.vel().pi_grad.middleRows(b * npk1, npk1) * u);
    Eigen::MatrixXd hp(nq, 4);
    for (int b = 0; b < 4; ++b)
      hp.col(b) = Vl2 * (lf.phase().pi_hess.middleRows(b * npl2, npl2) * ph);
    const Eigen::VectorXd pv = Vk1 * pc;

    for (int q = 0; q < nq; ++q) {
      const double w = g.quad.w(q);
      const Vec2 pt = g.quad.pts.row(q).transpose();
      const Eigen::Matrix2d Gx = grad_u(pt);
      const Eigen::Matrix2d Hx = hess_phi(pt);
      den_u += w * Gx.squaredNorm();
      den_phi += w * Hx.squaredNorm();
      const double du[4] = {gu(q, 0) - Gx(0, 0), gu(q, 1) - Gx(0, 1),
                            gu(q, 2) - Gx(1, 0), gu(q, 3) - Gx(1, 1)};
      num_u += w * (du[0] * du[0] + du[1] * du[1] + du[2] * du[2] +
                    du[3] * du[3]);
      const double dh[4] = {hp(q, 0) - Hx(0, 0), hp(q, 1) - Hx(0, 1),
                            hp(q, 2) - Hx(1, 0), hp(q, 3) - Hx(1, 1)};
      num_phi += w * (dh[0] * dh[0] + dh[1] * dh[1] + dh[2] * dh[2] +
                      dh[3] * dh[3]);
      const double qe = p_hat(pt);
      const double d = pv(q) - qe;
      int_d += w * d;
      int_d2 += w * d * d;
      int_q += w * qe;
      int_q2 += w * qe * qe;
      area += w;
    }
  }

  const double num_p = std::max(0.0, int_d2 - int_d * int_d / area);
  const double den_p = std::max(0.0, int_q2 - int_q * int_q / area);
  ErrorTriple e;
  e.err_u = ratio_or_abs(num_u, den_u, e.abs_u);
  e.err_p = ratio_or_abs(num_p, den_p, e.abs_p);
  e.err_phi = ratio_or_abs(num_phi, den_phi, e.abs_phi);
  return e;
}

std::vector<ChemPotentialCell> chemical_potential(const GlobalSystem& sys,
                                                  const Eigen::VectorXd& x) {
  std::vector<ChemPotentialCell> out(sys.mesh().n_cells());
  for (int c = 0; c < sys.mesh().n_cells(); ++c) {
    const PhaseElement& pe = sys.forms(c).phase();
    const Eigen::VectorXd ph = sys.local_phi(x, c);
    out[c].lap_part = -(pe.pi_lap * ph);
    out[c].phi0_part = pe.pi0 * ph;
  }
  return out;
}

std::string diagnostics_csv(const std::vector<StepRecord>& records) {
  std::string s = "step,t,mass,energy_J,newton_iters,final_residual,div_inf_norm\n";
  for (const StepRecord& r : records) {
    s += fmt_int(r.step);
    s += ',';
    s += fmt(r.t);
    s += ',';
    s += fmt(r.mass);
    s += ',';
    s += fmt(r.energy);
    s += ',';
    s += fmt_int(r.newton_iters);
    s += ',';
    s += fmt(r.final_residual);
    s += ',';
    s += fmt(r.div_inf);
    s += '\n';
  }
  return s;
}

std::string errors_csv(const std::vector<ErrorRow>& rows) {
  std::string s =
      "mesh_family,h,k,l,tau,err_u_H1,err_p_L2,err_phi_H2,rate_u,rate_p,"
      "rate_phi\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    const ErrorRow& r = rows[i];
    s += r.mesh_family;
    s += ',';
    s += fmt(r.h);
    s += ',';
    s += fmt_int(r.k);
    s += ',';
    s += fmt_int(r.l);
    s += ',';
    s += fmt(r.tau);
    s += ',';
    s += fmt(r.err.err_u);
    s += ',';
    s += fmt(r.err.err_p);
    s += ',';
    s += fmt(r.err.err_phi);
    if (i > 0 && rows[i - 1].mesh_family == r.mesh_family &&
        rows[i - 1].h > 0 && r.h > 0 && rows[i - 1].h != r.h) {
      const double lh = std::log(rows[i - 1].h / r.h);
      s += ',';
      s += fmt(std::log(rows[i - 1].err.err_u / r.err.err_u) / lh);
      s += ',';
      s += fmt(std::log(rows[i - 1].err.err_p / r.err.err_p) / lh);
      s += ',';
      s += fmt(std::log(rows[i - 1].err.err_phi / r.err.err_phi) / lh);
    } else {
      s += ",,,";
    }
    s += '\n';
  }
  return s;
}

std::string snapshot_text(const GlobalSystem& sys, const Eigen::VectorXd& x,
                          int step, double t) {
  const PolygonalMesh& mesh = sys.mesh();
  const DofMaps& maps = sys.maps();
  const int k = maps.k, l = maps.l;
  std::string s;
  s += "# state snapshot\n";
  s += "# step " + fmt_int(step) + " t " + fmt(t) + "\n";
  s += "# k " + fmt_int(k) + " l " + fmt_int(l) + " cells " +
       fmt_int(mesh.n_cells()) + " vertices " + fmt_int(mesh.n_vertices()) +
       "\n";
  s += "# Cell polynomials use scaled monomials m(x,y) = ((x-xc)/h)^a "
       "((y-yc)/h)^b,\n";
  s += "# ordered by total degree a+b, then by increasing b.  Per cell:\n";
  s += "#   cell <id> <h> <xc> <yc>\n";
  s += "#   u0x <np(k) coefficients>   projected velocity, x component\n";
  s += "#   u0y <np(k) coefficients>   projected velocity, y component\n";
  s += "#   phat <np(k-1) coefficients>   discrete pressure\n";
  s += "#   phi0 <np(l) coefficients>   projected phase field\n";
  s += "# Vertex samples: vertex <id> <x> <y> <ux> <uy> <phi>\n";
  const int npk = np(k), npk1 = np(k - 1), npl = np(l);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const LocalForms& lf = sys.forms(c);
    const CellGeometry& g = lf.geo();
    const Eigen::VectorXd u0 = lf.vel().pi0 * sys.local_u(x, c);
    const Eigen::VectorXd f0 = lf.phase().pi0 * sys.local_phi(x, c);
    const Eigen::VectorXd pc = sys.local_p(x, c);
    s += "cell " + fmt_int(c) + " " + fmt(g.h) + " " + fmt(g.frame.center(0)) +
         " " + fmt(g.frame.center(1)) + "\n";
    s += "u0x";
    for (int j = 0; j < npk; ++j) s += " " + fmt(u0(j));
    s += "\nu0y";
    for (int j = 0; j < npk; ++j) s += " " + fmt(u0(npk + j));
    s += "\nphat";
    for (int j = 0; j < npk1; ++j) s += " " + fmt(pc(j));
    s += "\nphi0";
    for (int j = 0; j < npl; ++j) s += " " + fmt(f0(j));
    s += "\n";
  }
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    s += "vertex " + fmt_int(v) + " " + fmt(mesh.vertices[v](0)) + " " +
         fmt(mesh.vertices[v](1)) + " " + fmt(x(2 * v)) + " " +
         fmt(x(2 * v + 1)) + " " + fmt(x(maps.off_phi + 3 * v)) + "\n";
  }
  return s;
}

}  // namespace vemnsch
