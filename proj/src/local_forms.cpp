#include "vemnsch/local_forms.hpp"

#include <algorithm>
#include <cmath>

namespace vemnsch {

int cell_quad_degree(int k, int l) {
  const int khat = std::max(k, 2);
  return std::max({4 * l - 2, 2 * l + k - 1, 3 * k - 1, 2 * k, 2 * khat}) + 2;
}

int edge_quad_degree(int k, int l) {
  const int khat = std::max(k, 2);
  const int lhat = std::max(l, 3);
  return khat + lhat + l + 2;
}

LocalForms::LocalForms(const PolygonalMesh& mesh, int cell, int k, int l)
    : g_(cell_geometry(mesh, cell, cell_quad_degree(k, l), edge_quad_degree(k, l))),
      vel_(build_velocity_element(g_, k)),
      ph_(build_phase_element(g_, l)) {
  const int npk = vel_.npk, npk1 = vel_.npk1;
  const int npl1 = ph_.npl1, npl2 = ph_.npl2;
  wq_ = g_.quad.w;
  const Eigen::MatrixXd Vk = mono_values(g_.frame, k, g_.quad.pts);
  const Eigen::MatrixXd Vk1 = Vk.leftCols(npk1);
  U0x_ = Vk * vel_.pi0.topRows(npk);
  U0y_ = Vk * vel_.pi0.bottomRows(npk);
  Gxx_ = Vk1 * vel_.pi_grad.middleRows(0 * npk1, npk1);
  Gxy_ = Vk1 * vel_.pi_grad.middleRows(1 * npk1, npk1);
  Gyx_ = Vk1 * vel_.pi_grad.middleRows(2 * npk1, npk1);
  Gyy_ = Vk1 * vel_.pi_grad.middleRows(3 * npk1, npk1);

  const Eigen::MatrixXd Vl = mono_values(g_.frame, l, g_.quad.pts);
  const Eigen::MatrixXd Vl1 = Vl.leftCols(npl1);
  const Eigen::MatrixXd Vl2 = Vl.leftCols(npl2);
  Phi0_ = Vl * ph_.pi0;
  GP0x_ = Vl1 * (mono_dx(g_.frame, l) * ph_.pi0);
  GP0y_ = Vl1 * (mono_dy(g_.frame, l) * ph_.pi0);
  Gpx_ = Vl1 * ph_.pi_grad.topRows(npl1);
  Gpy_ = Vl1 * ph_.pi_grad.bottomRows(npl1);
  Lapq_ = Vl2 * ph_.pi_lap;

  phi0_e_.resize(g_.nv);
  for (int r = 0; r < g_.nv; ++r) phi0_e_[r] = ph_.vmono_edge[r] * ph_.pi0;

  bside_.resize(g_.nv);
  for (int r = 0; r < g_.nv; ++r)
    bside_[r] = mesh.boundary_edge[g_.edge_ids[r]];

  Mcons_u_ = vel_.MF - g_.h * g_.h * vel_.S0;
  Agrad_phi_ = Eigen::MatrixXd::Zero(ph_.ndof, ph_.ndof);
  const auto Hl1 = ph_.H.topLeftCorner(npl1, npl1);
  Agrad_phi_ += ph_.pi_grad.topRows(npl1).transpose() * Hl1 * ph_.pi_grad.topRows(npl1);
  Agrad_phi_ +=
      ph_.pi_grad.bottomRows(npl1).transpose() * Hl1 * ph_.pi_grad.bottomRows(npl1);
}

Eigen::MatrixXd LocalForms::conv_flow(const Eigen::VectorXd& w) const {
  const Eigen::VectorXd Wx = U0x_ * w, Wy = U0y_ * w;
  Eigen::MatrixXd C =
      U0x_.transpose() * (wq_.cwiseProduct(Wx)).asDiagonal() * Gxx_ +
      U0x_.transpose() * (wq_.cwiseProduct(Wy)).asDiagonal() * Gxy_ +
      U0y_.transpose() * (wq_.cwiseProduct(Wx)).asDiagonal() * Gyx_ +
      U0y_.transpose() * (wq_.cwiseProduct(Wy)).asDiagonal() * Gyy_;
  return C;
}

void LocalForms::conv_flow_jac(const Eigen::VectorXd& u, Eigen::MatrixXd& D1,
                               Eigen::MatrixXd& D2) const {
  const Eigen::VectorXd gxx = Gxx_ * u, gxy = Gxy_ * u, gyx = Gyx_ * u,
                        gyy = Gyy_ * u;
  const Eigen::VectorXd Ux = U0x_ * u, Uy = U0y_ * u;
  D1 = U0x_.transpose() * (wq_.cwiseProduct(gxx)).asDiagonal() * U0x_ +
       U0x_.transpose() * (wq_.cwiseProduct(gxy)).asDiagonal() * U0y_ +
       U0y_.transpose() * (wq_.cwiseProduct(gyx)).asDiagonal() * U0x_ +
       U0y_.transpose() * (wq_.cwiseProduct(gyy)).asDiagonal() * U0y_;
  D2 = Gxx_.transpose() * (wq_.cwiseProduct(Ux)).asDiagonal() * U0x_ +
       Gxy_.transpose() * (wq_.cwiseProduct(Ux)).asDiagonal() * U0y_ +
       Gyx_.transpose() * (wq_.cwiseProduct(Uy)).asDiagonal() * U0x_ +
       Gyy_.transpose() * (wq_.cwiseProduct(Uy)).asDiagonal() * U0y_;
}

Eigen::MatrixXd LocalForms::conv_phase(const Eigen::VectorXd& u) const {
  const Eigen::VectorXd Ux = U0x_ * u, Uy = U0y_ * u;
  Eigen::MatrixXd K =
      Phi0_.transpose() * (wq_.cwiseProduct(Ux)).asDiagonal() * GP0x_ +
      Phi0_.transpose() * (wq_.cwiseProduct(Uy)).asDiagonal() * GP0y_;
  for (int r = 0; r < g_.nv; ++r) {
    const Eigen::VectorXd un = vel_.un_out[r] * u;
    K += phi0_e_[r].transpose() * (g_.equad[r].w.cwiseProduct(un)).asDiagonal() *
         (ph_.val_edge[r] - phi0_e_[r]);
  }
  return K;
}

Eigen::MatrixXd LocalForms::conv_phase_jac_u(const Eigen::VectorXd& u,
                                             const Eigen::VectorXd& phi) const {
  (void)u;  // the form is linear in u; the derivative depends on phi only
  const Eigen::VectorXd gx = GP0x_ * phi, gy = GP0y_ * phi;
  const Eigen::VectorXd p0 = Phi0_ * phi;
  // Lu1_{im} = ct_h(e_m; phi, e_i)
  Eigen::MatrixXd Lu1 =
      Phi0_.transpose() * (wq_.cwiseProduct(gx)).asDiagonal() * U0x_ +
      Phi0_.transpose() * (wq_.cwiseProduct(gy)).asDiagonal() * U0y_;
  // Lu2_{im} = ct_h(e_m; e_i, phi)
  Eigen::MatrixXd Lu2 =
      GP0x_.transpose() * (wq_.cwiseProduct(p0)).asDiagonal() * U0x_ +
      GP0y_.transpose() * (wq_.cwiseProduct(p0)).asDiagonal() * U0y_;
  for (int r = 0; r < g_.nv; ++r) {
    const Eigen::VectorXd jump = (ph_.val_edge[r] - phi0_e_[r]) * phi;
    const Eigen::VectorXd p0e = phi0_e_[r] * phi;
    Lu1 += phi0_e_[r].transpose() * (g_.equad[r].w.cwiseProduct(jump)).asDiagonal() *
           vel_.un_out[r];
    Lu2 += (ph_.val_edge[r] - phi0_e_[r]).transpose() *
           (g_.equad[r].w.cwiseProduct(p0e)).asDiagonal() * vel_.un_out[r];
  }
  return 0.5 * (Lu1 - Lu2);
}

Eigen::VectorXd LocalForms::stress_vec(const Eigen::VectorXd& phi) const {
  const Eigen::VectorXd lap = Lapq_ * phi;
  const Eigen::VectorXd gx = Gpx_ * phi, gy = Gpy_ * phi;
  return U0x_.transpose() * wq_.cwiseProduct(lap).cwiseProduct(gx) +
         U0y_.transpose() * wq_.cwiseProduct(lap).cwiseProduct(gy);
}

Eigen::MatrixXd LocalForms::stress_jac(const Eigen::VectorXd& phi) const {
  const Eigen::VectorXd lap = Lapq_ * phi;
  const Eigen::VectorXd gx = Gpx_ * phi, gy = Gpy_ * phi;
  return U0x_.transpose() * ((wq_.cwiseProduct(gx)).asDiagonal() * Lapq_ +
                             (wq_.cwiseProduct(lap)).asDiagonal() * Gpx_) +
         U0y_.transpose() * ((wq_.cwiseProduct(gy)).asDiagonal() * Lapq_ +
                             (wq_.cwiseProduct(lap)).asDiagonal() * Gpy_);
}

Eigen::VectorXd LocalForms::dwell_vec(const Eigen::VectorXd& phi) const {
  const Eigen::VectorXd p0 = Phi0_ * phi;
  const Eigen::VectorXd fp = 3.0 * p0.array().square() - 1.0;
  const Eigen::VectorXd gx = Gpx_ * phi, gy = Gpy_ * phi;
  return Gpx_.transpose() * wq_.cwiseProduct(fp).cwiseProduct(gx) +
         Gpy_.transpose() * wq_.cwiseProduct(fp).cwiseProduct(gy);
}

Eigen::MatrixXd LocalForms::dwell_jac(const Eigen::VectorXd& phi) const {
  const Eigen::VectorXd p0 = Phi0_ * phi;
  const Eigen::VectorXd fp = 3.0 * p0.array().square() - 1.0;
  const Eigen::VectorXd fpp = 6.0 * p0;
  const Eigen::VectorXd gx = Gpx_ * phi, gy = Gpy_ * phi;
  return Gpx_.transpose() *
             ((wq_.cwiseProduct(fpp).cwiseProduct(gx)).asDiagonal() * Phi0_ +
              (wq_.cwiseProduct(fp)).asDiagonal() * Gpx_) +
         Gpy_.transpose() *
             ((wq_.cwiseProduct(fpp).cwiseProduct(gy)).asDiagonal() * Phi0_ +
              (wq_.cwiseProduct(fp)).asDiagonal() * Gpy_);
}

Eigen::VectorXd LocalForms::load_flow(
    const std::function<Vec2(const Vec2&)>& gfun) const {
  const int nq = g_.quad.size();
  Eigen::VectorXd fx(nq), fy(nq);
  for (int q = 0; q < nq; ++q) {
    const Vec2 v = gfun(g_.quad.pts.row(q).transpose());
    fx(q) = v.x();
    fy(q) = v.y();
  }
  return U0x_.transpose() * wq_.cwiseProduct(fx) +
         U0y_.transpose() * wq_.cwiseProduct(fy);
}

Eigen::VectorXd LocalForms::load_phase(
    const std::function<double(const Vec2&)>& qfun) const {
  const int nq = g_.quad.size();
  Eigen::VectorXd fv(nq);
  for (int q = 0; q < nq; ++q) fv(q) = qfun(g_.quad.pts.row(q).transpose());
  return Phi0_.transpose() * wq_.cwiseProduct(fv);
}

Eigen::VectorXd LocalForms::transport_flux_correction(
    const std::function<Vec2(const Vec2&)>& W) const {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(ph_.ndof);
  for (int r = 0; r < g_.nv; ++r) {
    if (!bside_[r]) continue;
    const Vec2 nout = g_.edge_sign[r] * g_.edge_n[r];
    const EdgeRule& er = g_.equad[r];
    for (int q = 0; q < er.size(); ++q) {
      const Vec2 x = er.pts.row(q).transpose();
      const double wn = 0.5 * er.w(q) * W(x).dot(nout);
      b += wn * ph_.val_edge[r].row(q).transpose();
    }
  }
  return b;
}

double LocalForms::mass(const Eigen::VectorXd& phi) const {
  return ph_.momphi.row(0).dot(phi);
}

double LocalForms::kinetic(const Eigen::VectorXd& u) const {
  return 0.5 * u.dot(Mcons_u_ * u);
}

double LocalForms::grad_energy(const Eigen::VectorXd& phi) const {
  return 0.5 * phi.dot(Agrad_phi_ * phi);
}

double LocalForms::well_energy(const Eigen::VectorXd& phi) const {
  const Eigen::ArrayXd p0 = (Phi0_ * phi).array();
  return 0.25 * (wq_.array() * (p0.square() - 1.0).square()).sum();
}

double LocalForms::div_norm(const Eigen::VectorXd& u) const {
  const Eigen::VectorXd c = vel_.iota * u;
  const auto Hk1 = vel_.H.topLeftCorner(vel_.npk1, vel_.npk1);
  return std::sqrt(std::max(0.0, c.dot(Hk1 * c)));
}

double LocalForms::chem_potential_sq(const Eigen::VectorXd& phi, double eps) const {
  const Eigen::ArrayXd lap = (Lapq_ * phi).array();
  const Eigen::ArrayXd p0 = (Phi0_ * phi).array();
  const Eigen::ArrayXd w = -lap + (p0.cube() - p0) / (eps * eps);
  return (wq_.array() * w.square()).sum();
}

}  // namespace vemnsch
