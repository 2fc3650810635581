#include "vemnsch/phase_element.hpp"

#include <algorithm>
#include <stdexcept>

#include "vemnsch/poly1d.hpp"
#include "vemnsch/poly_decomp.hpp"

namespace vemnsch {

namespace {

double prod_integral(const Eigen::VectorXd& im, const MIndex& a, const MIndex& b) {
  return im[mono_position({a.a1 + b.a1, a.a2 + b.a2})];
}

void stored_endpoints(const CellGeometry& g, int r, Vec2& A, Vec2& B, int& lvA, int& lvB) {
  const int r1 = (r + 1) % g.nv;
  if (g.edge_sign[r] > 0) {
    lvA = r;
    lvB = r1;
  } else {
    lvA = r1;
    lvB = r;
  }
  A = g.verts[lvA];
  B = g.verts[lvB];
}

}  // namespace

int phase_ndof(int l, int nv) {
  const int lhat = std::max(l, 3);
  return 3 * nv + nv * ((l - 2) + (lhat - 3)) + np(l - 4);
}

PhaseElement build_phase_element(const CellGeometry& g, int l) {
  if (l < 2) throw std::invalid_argument("phase element: order must be >= 2");
  PhaseElement el;
  el.l = l;
  el.lhat = std::max(l, 3);
  el.nv = g.nv;
  el.npl = np(l);
  el.npl1 = np(l - 1);
  el.npl2 = np(l - 2);
  el.n_edge_n = l - 2;
  el.n_edge_v = el.lhat - 3;
  const int epb = el.n_edge_n + el.n_edge_v;
  el.off_edge = 3 * g.nv;
  el.off_mom = el.off_edge + g.nv * epb;
  el.ndof = el.off_mom + np(l - 4);
  const int N = el.ndof;
  const int npl = el.npl, npl1 = el.npl1, npl2 = el.npl2;
  const int npl3 = np(l - 3), npl4 = np(l - 4);
  const MonomialFrame& f = g.frame;

  el.dnodes = (l >= 3) ? gauss_lobatto_01(l).segment(1, l - 2).eval()
                       : Eigen::VectorXd(0);
  el.vnodes = (el.lhat >= 4)
                  ? gauss_lobatto_01(el.lhat - 1).segment(1, el.lhat - 3).eval()
                  : Eigen::VectorXd(0);

  el.H = mass_matrix(f, l, g.quad);
  const Eigen::LLT<Eigen::MatrixXd> Hl_llt(el.H);
  const Eigen::LLT<Eigen::MatrixXd> Hl1_llt(el.H.topLeftCorner(npl1, npl1));
  const Eigen::LLT<Eigen::MatrixXd> Hl2_llt(el.H.topLeftCorner(npl2, npl2));

  // derivative coefficient maps
  const Eigen::MatrixXd Dx = mono_dx(f, l), Dy = mono_dy(f, l);
  const Eigen::MatrixXd Dx1 = mono_dx(f, l - 1), Dy1 = mono_dy(f, l - 1);
  const Eigen::MatrixXd Dxx = Dx1 * Dx, Dxy = Dy1 * Dx, Dyy = Dy1 * Dy;  // npl2 x npl
  const Eigen::MatrixXd lap = Dxx + Dyy;                                 // npl2 x npl
  Eigen::MatrixXd lap2;  // coefficients of the bilaplacians, npl4 x npl
  if (npl4 > 0) {
    const Eigen::MatrixXd Dx3 = mono_dx(f, l - 3), Dy3 = mono_dy(f, l - 3);
    const Eigen::MatrixXd Dx2 = mono_dx(f, l - 2), Dy2 = mono_dy(f, l - 2);
    lap2 = (Dx3 * Dx2 + Dy3 * Dy2) * lap;
  }

  // --- edge traces ----------------------------------------------------------
  // Value trace: Hermite-type system in s-powers; normal trace: Lagrange.
  Eigen::MatrixXd Aval(el.lhat + 1, el.lhat + 1);
  {
    Eigen::VectorXd sv(el.lhat + 1);
    sv(0) = 0.0;
    for (int i = 0; i < el.lhat - 3; ++i) sv(1 + i) = el.vnodes(i);
    sv(el.lhat - 2) = 1.0;
    const Eigen::MatrixXd P = power_matrix(sv, el.lhat);
    const Eigen::MatrixXd dP = dpower_matrix(sv, el.lhat);
    Aval.row(0) = P.row(0);                 // p(0)
    Aval.row(1) = dP.row(0);                // p'(0)
    for (int i = 0; i < el.lhat - 3; ++i)   // p(s_i)
      Aval.row(2 + i) = P.row(1 + i);
    Aval.row(el.lhat - 1) = P.row(el.lhat - 2);   // p(1)
    Aval.row(el.lhat) = dP.row(el.lhat - 2);      // p'(1)
  }
  const Eigen::MatrixXd AvalInv = Aval.fullPivLu().inverse();
  Eigen::VectorXd nparams(l);
  nparams(0) = 0.0;
  nparams(l - 1) = 1.0;
  for (int i = 0; i < l - 2; ++i) nparams(1 + i) = el.dnodes(i);
  const Eigen::MatrixXd CnInv = nodal_to_coeff(nparams);  // l x l

  el.coefV.resize(g.nv);
  el.coefN.resize(g.nv);
  el.val_edge.resize(g.nv);
  el.gx_edge.resize(g.nv);
  el.gy_edge.resize(g.nv);
  el.vmono_edge.resize(g.nv);
  for (int r = 0; r < g.nv; ++r) {
    Vec2 A, B;
    int lvA, lvB;
    stored_endpoints(g, r, A, B, lvA, lvB);
    const Vec2 t = g.edge_t[r], n = g.edge_n[r];
    const double he = g.edge_len[r];
    const double hA = g.vert_h[lvA], hB = g.vert_h[lvB];

    Eigen::MatrixXd RV = Eigen::MatrixXd::Zero(el.lhat + 1, N);
    RV(0, 3 * lvA) = 1.0;                       // p(0) = phi(A)
    RV(1, 3 * lvA + 1) = (he / hA) * t.x();     // p'(0) = h_e dphi/dt(A)
    RV(1, 3 * lvA + 2) = (he / hA) * t.y();
    for (int i = 0; i < el.lhat - 3; ++i)
      RV(2 + i, el.off_edge + r * epb + (l - 2) + i) = 1.0;
    RV(el.lhat - 1, 3 * lvB) = 1.0;
    RV(el.lhat, 3 * lvB + 1) = (he / hB) * t.x();
    RV(el.lhat, 3 * lvB + 2) = (he / hB) * t.y();
    el.coefV[r] = AvalInv * RV;

    Eigen::MatrixXd RN = Eigen::MatrixXd::Zero(l, N);
    RN(0, 3 * lvA + 1) = n.x() / hA;            // q(0) = dphi/dn(A)
    RN(0, 3 * lvA + 2) = n.y() / hA;
    for (int i = 0; i < l - 2; ++i)
      RN(1 + i, el.off_edge + r * epb + i) = 1.0 / he;
    RN(l - 1, 3 * lvB + 1) = n.x() / hB;
    RN(l - 1, 3 * lvB + 2) = n.y() / hB;
    el.coefN[r] = CnInv * RN;

    const Eigen::MatrixXd Pv = power_matrix(g.equad[r].s, el.lhat);
    const Eigen::MatrixXd dPv = dpower_matrix(g.equad[r].s, el.lhat);
    const Eigen::MatrixXd Pn = power_matrix(g.equad[r].s, l - 1);
    el.val_edge[r] = Pv * el.coefV[r];
    const Eigen::MatrixXd dtang = (dPv * el.coefV[r]) / he;  // dphi/dt values
    const Eigen::MatrixXd dnorm = Pn * el.coefN[r];          // dphi/dn_e values
    el.gx_edge[r] = n.x() * dnorm + t.x() * dtang;
    el.gy_edge[r] = n.y() * dnorm + t.y() * dtang;
    el.vmono_edge[r] = mono_values(f, l, g.equad[r].pts);
  }

  // --- H2-seminorm projector ------------------------------------------------
  Eigen::MatrixXd GD = Dxx.transpose() * el.H.topLeftCorner(npl2, npl2) * Dxx +
                       Dyy.transpose() * el.H.topLeftCorner(npl2, npl2) * Dyy +
                       2.0 * Dxy.transpose() * el.H.topLeftCorner(npl2, npl2) * Dxy;
  Eigen::MatrixXd BD = Eigen::MatrixXd::Zero(npl, N);
  for (int i = 0; i < npl; ++i) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(N);
    // interior part: (phi, Lap^2 m_i) from interior moments
    if (npl4 > 0) {
      for (int a = 0; a < npl4; ++a)
        row(el.off_mom + a) += g.area * lap2(a, i);
    }
    // boundary parts
    for (int r = 0; r < g.nv; ++r) {
      const Vec2 nout = g.edge_sign[r] * g.edge_n[r];
      const Eigen::MatrixXd Vm2 = el.vmono_edge[r].leftCols(npl2);
      const Eigen::VectorXd hxx = Vm2 * Dxx.col(i);
      const Eigen::VectorXd hxy = Vm2 * Dxy.col(i);
      const Eigen::VectorXd hyy = Vm2 * Dyy.col(i);
      // (D^2 m_i n_out) . grad phi
      const Eigen::VectorXd w = g.equad[r].w;
      row += ((hxx * nout.x() + hxy * nout.y()).cwiseProduct(w)).transpose() *
             el.gx_edge[r];
      row += ((hxy * nout.x() + hyy * nout.y()).cwiseProduct(w)).transpose() *
             el.gy_edge[r];
      // - phi d(Lap m_i)/dn_out
      if (npl3 > 0) {
        const Eigen::MatrixXd Vm3 = el.vmono_edge[r].leftCols(npl3);
        const Eigen::VectorXd gx = Vm3 * (mono_dx(f, l - 2) * lap.col(i));
        const Eigen::VectorXd gy = Vm3 * (mono_dy(f, l - 2) * lap.col(i));
        row -= ((gx * nout.x() + gy * nout.y()).cwiseProduct(w)).transpose() *
               el.val_edge[r];
      }
    }
    BD.row(i) = row;
  }
  // rank completion: tests against affine functions become boundary averages
  // of the value and of the gradient.
  for (int i = 0; i < 3; ++i) {
    GD.row(i).setZero();
    BD.row(i).setZero();
  }
  for (int r = 0; r < g.nv; ++r) {
    const Eigen::VectorXd& w = g.equad[r].w;
    GD.row(0) += w.transpose() * el.vmono_edge[r];
    GD.row(1) += w.transpose() * (el.vmono_edge[r].leftCols(npl1) * Dx);
    GD.row(2) += w.transpose() * (el.vmono_edge[r].leftCols(npl1) * Dy);
    BD.row(0) += w.transpose() * el.val_edge[r];
    BD.row(1) += w.transpose() * el.gx_edge[r];
    BD.row(2) += w.transpose() * el.gy_edge[r];
  }
  el.piD = GD.fullPivLu().solve(BD);

  // --- moments and L2 projector ---------------------------------------------
  el.momphi.resize(npl, N);
  const Eigen::MatrixXd HpiD = el.H * el.piD;
  for (int a = 0; a < npl; ++a) {
    if (a < npl4) {
      el.momphi.row(a).setZero();
      el.momphi(a, el.off_mom + a) = g.area;
    } else {
      el.momphi.row(a) = HpiD.row(a);  // enhancement: (phi, m_a) = (PiD phi, m_a)
    }
  }
  el.pi0 = Hl_llt.solve(el.momphi);

  // --- gradient projection ----------------------------------------------------
  el.pi_grad.resize(2 * npl1, N);
  for (int c = 0; c < 2; ++c) {
    const Eigen::MatrixXd& D1 = (c == 0) ? Dx1 : Dy1;  // npl2 x npl1
    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(npl1, N);
    for (int j = 0; j < npl1; ++j) {
      if (npl2 > 0)
        rows.row(j) -= D1.col(j).transpose() * el.momphi.topRows(npl2);
      for (int r = 0; r < g.nv; ++r) {
        const Vec2 nout = g.edge_sign[r] * g.edge_n[r];
        const double nc = (c == 0) ? nout.x() : nout.y();
        rows.row(j) +=
            (g.equad[r].w.cwiseProduct(el.vmono_edge[r].col(j)) * nc).transpose() *
            el.val_edge[r];
      }
    }
    el.pi_grad.middleRows(c * npl1, npl1) = Hl1_llt.solve(rows);
  }

  // --- Hessian and Laplacian projections --------------------------------------
  el.pi_hess.resize(4 * npl2, N);
  const Eigen::MatrixXd Dc2k[2] = {mono_dx(f, l - 2), mono_dy(f, l - 2)};
  for (int c1 = 0; c1 < 2; ++c1) {
    for (int c2 = 0; c2 < 2; ++c2) {
      Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(npl2, N);
      // coefficient map used for the interior term (phi, d_{c2} d_{c1} m_j)
      Eigen::MatrixXd D12;
      if (npl4 > 0) D12 = ((c2 == 0) ? mono_dx(f, l - 3) : mono_dy(f, l - 3));
      for (int j = 0; j < npl2; ++j) {
        if (npl4 > 0) {
          const Eigen::VectorXd cc =
              D12 * (((c1 == 0) ? mono_dx(f, l - 2) : mono_dy(f, l - 2)).col(j));
          rows.row(j) += cc.transpose() * el.momphi.topRows(npl4);
        }
        for (int r = 0; r < g.nv; ++r) {
          const Vec2 nout = g.edge_sign[r] * g.edge_n[r];
          const double n1 = (c1 == 0) ? nout.x() : nout.y();
          const double n2 = (c2 == 0) ? nout.x() : nout.y();
          const Eigen::VectorXd& w = g.equad[r].w;
          const Eigen::MatrixXd& gc2 = (c2 == 0) ? el.gx_edge[r] : el.gy_edge[r];
          // + (d_{c2} phi) m_j n_{c1}
          rows.row(j) +=
              (w.cwiseProduct(el.vmono_edge[r].col(j)) * n1).transpose() * gc2;
          // - phi (d_{c1} m_j) n_{c2}
          if (npl3 > 0) {
            const Eigen::VectorXd dvals =
                el.vmono_edge[r].leftCols(npl3) * Dc2k[c1].col(j);
            rows.row(j) -= (w.cwiseProduct(dvals) * n2).transpose() * el.val_edge[r];
          }
        }
      }
      el.pi_hess.middleRows((c1 * 2 + c2) * npl2, npl2) = Hl2_llt.solve(rows);
    }
  }
  el.pi_lap = el.pi_hess.topRows(npl2) + el.pi_hess.bottomRows(npl2);

  // --- dof matrix of the monomials --------------------------------------------
  el.dofmat = Eigen::MatrixXd::Zero(N, npl);
  {
    Eigen::Matrix<double, Eigen::Dynamic, 2> vpts(g.nv, 2);
    for (int i = 0; i < g.nv; ++i) vpts.row(i) = g.verts[i].transpose();
    const Eigen::MatrixXd Vv = mono_values(f, l, vpts);
    const Eigen::MatrixXd Gx = Vv.leftCols(npl1) * Dx;  // dm_j/dx at vertices
    const Eigen::MatrixXd Gy = Vv.leftCols(npl1) * Dy;
    for (int i = 0; i < g.nv; ++i) {
      el.dofmat.row(3 * i) = Vv.row(i);
      el.dofmat.row(3 * i + 1) = g.vert_h[i] * Gx.row(i);
      el.dofmat.row(3 * i + 2) = g.vert_h[i] * Gy.row(i);
    }
  }
  for (int r = 0; r < g.nv; ++r) {
    Vec2 A, B;
    int lvA, lvB;
    stored_endpoints(g, r, A, B, lvA, lvB);
    const Vec2 n = g.edge_n[r];
    const double he = g.edge_len[r];
    for (int i = 0; i < l - 2; ++i) {
      const Vec2 p = A + el.dnodes(i) * (B - A);
      Eigen::Matrix<double, 1, 2> prow;
      prow << p.x(), p.y();
      const Eigen::MatrixXd mv = mono_values(f, l, prow);
      const Eigen::RowVectorXd gx = mv.leftCols(npl1) * Dx;
      const Eigen::RowVectorXd gy = mv.leftCols(npl1) * Dy;
      el.dofmat.row(el.off_edge + r * epb + i) = he * (n.x() * gx + n.y() * gy);
    }
    for (int i = 0; i < el.lhat - 3; ++i) {
      const Vec2 p = A + el.vnodes(i) * (B - A);
      Eigen::Matrix<double, 1, 2> prow;
      prow << p.x(), p.y();
      el.dofmat.row(el.off_edge + r * epb + (l - 2) + i) = mono_values(f, l, prow);
    }
  }
  if (npl4 > 0) {
    const Eigen::VectorXd im = mono_integrals(f, 2 * l - 4, g.quad);
    const auto& exps_l = mono_exponents(l);
    const auto& exps_l4 = mono_exponents(l - 4);
    for (int a = 0; a < npl4; ++a)
      for (int j = 0; j < npl; ++j)
        el.dofmat(el.off_mom + a, j) =
            prod_integral(im, exps_l[j], exps_l4[a]) / g.area;
  }

  // --- stabilizations and assembled local forms --------------------------------
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
  const Eigen::MatrixXd R0 = I - el.dofmat * el.pi0;
  const Eigen::MatrixXd RD = I - el.dofmat * el.piD;
  el.S0 = R0.transpose() * R0;
  el.SD = RD.transpose() * RD;
  el.M = el.pi0.transpose() * el.H * el.pi0 + g.h * g.h * el.S0;
  el.AD = el.SD / (g.h * g.h);
  for (int b = 0; b < 4; ++b) {
    const auto blk = el.pi_hess.middleRows(b * npl2, npl2);
    el.AD += blk.transpose() * el.H.topLeftCorner(npl2, npl2) * blk;
  }
  return el;
}

Eigen::VectorXd interpolate_phase(const CellGeometry& g, int l,
                                  const std::function<double(const Vec2&)>& phi,
                                  const std::function<Vec2(const Vec2&)>& grad_phi) {
  const int lhat = std::max(l, 3);
  const int epb = (l - 2) + (lhat - 3);
  const int off_edge = 3 * g.nv;
  const int off_mom = off_edge + g.nv * epb;
  const int N = off_mom + np(l - 4);
  Eigen::VectorXd d = Eigen::VectorXd::Zero(N);
  const MonomialFrame& f = g.frame;

  for (int i = 0; i < g.nv; ++i) {
    d(3 * i) = phi(g.verts[i]);
    const Vec2 gr = grad_phi(g.verts[i]);
    d(3 * i + 1) = g.vert_h[i] * gr.x();
    d(3 * i + 2) = g.vert_h[i] * gr.y();
  }
  const Eigen::VectorXd dn =
      (l >= 3) ? gauss_lobatto_01(l).segment(1, l - 2).eval() : Eigen::VectorXd(0);
  const Eigen::VectorXd vn = (lhat >= 4)
                                 ? gauss_lobatto_01(lhat - 1).segment(1, lhat - 3).eval()
                                 : Eigen::VectorXd(0);
  for (int r = 0; r < g.nv; ++r) {
    Vec2 A, B;
    int lvA, lvB;
    stored_endpoints(g, r, A, B, lvA, lvB);
    for (int i = 0; i < l - 2; ++i) {
      const Vec2 p = A + dn(i) * (B - A);
      d(off_edge + r * epb + i) = g.edge_len[r] * grad_phi(p).dot(g.edge_n[r]);
    }
    for (int i = 0; i < lhat - 3; ++i)
      d(off_edge + r * epb + (l - 2) + i) = phi(A + vn(i) * (B - A));
  }
  for (int a = 0; a < np(l - 4); ++a) {
    const MIndex ea = mono_exponents(l - 4)[a];
    double s = 0;
    for (int q = 0; q < g.quad.size(); ++q) {
      const Vec2 p = g.quad.pts.row(q).transpose();
      s += g.quad.w(q) * phi(p) * mono_eval(f, ea, p);
    }
    d(off_mom + a) = s / g.area;
  }
  return d;
}

}  // namespace vemnsch
