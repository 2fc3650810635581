#include "vemnsch/velocity_element.hpp"

#include <algorithm>
#include <stdexcept>

#include "vemnsch/poly1d.hpp"
#include "vemnsch/poly_decomp.hpp"

namespace vemnsch {

namespace {

// integral over E of m_a * m_b read off a plain monomial-integral table
double prod_integral(const Eigen::VectorXd& im, const MIndex& a, const MIndex& b) {
  return im[mono_position({a.a1 + b.a1, a.a2 + b.a2})];
}

// stored-edge endpoints of side r (A -> B is the stored direction)
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

int velocity_ndof(int k, int nv) {
  const int khat = std::max(k, 2);
  return 2 * nv + nv * ((k - 1) + (khat - 1)) + np(k - 3) + np(k - 1) - 1;
}

VelocityElement build_velocity_element(const CellGeometry& g, int k) {
  if (k < 1) throw std::invalid_argument("velocity element: order must be >= 1");
  VelocityElement el;
  el.k = k;
  el.khat = std::max(k, 2);
  el.nv = g.nv;
  el.npk = np(k);
  el.npk1 = np(k - 1);
  el.n_edge_t = k - 1;
  el.n_edge_n = el.khat - 1;
  const int epb = el.n_edge_t + el.n_edge_n;  // edge dof block per side
  el.off_edge = 2 * g.nv;
  el.off_rot = el.off_edge + g.nv * epb;
  el.off_div = el.off_rot + np(k - 3);
  el.ndof = el.off_div + np(k - 1) - 1;
  const int N = el.ndof;
  const int npk = el.npk, npk1 = el.npk1;
  const int npk2 = np(k - 2);
  const int npkp1 = np(k + 1);
  const MonomialFrame& f = g.frame;

  el.tnodes = (k >= 2) ? gauss_lobatto_01(k + 1).segment(1, k - 1).eval()
                       : Eigen::VectorXd(0);
  el.nnodes = gauss_lobatto_01(el.khat + 1).segment(1, el.khat - 1).eval();

  el.H = mass_matrix(f, k + 1, g.quad);
  const auto Hk = el.H.topLeftCorner(npk, npk);
  const auto Hk1 = el.H.topLeftCorner(npk1, npk1);
  const Eigen::LLT<Eigen::MatrixXd> Hk_llt(Hk);
  const Eigen::LLT<Eigen::MatrixXd> Hk1_llt(Hk1);

  // --- edge traces --------------------------------------------------------
  // Tangential trace is the P_k Lagrange polynomial through both endpoint
  // values of u.t_e and the k-1 internal nodes; normal trace the P_khat one.
  Eigen::VectorXd tparams(k + 1), nparams(el.khat + 1);
  tparams(0) = 0.0;
  tparams(k) = 1.0;
  if (k >= 2) tparams.segment(1, k - 1) = el.tnodes;
  nparams(0) = 0.0;
  nparams(el.khat) = 1.0;
  nparams.segment(1, el.khat - 1) = el.nnodes;
  const Eigen::MatrixXd Ct = nodal_to_coeff(tparams);
  const Eigen::MatrixXd Cn = nodal_to_coeff(nparams);

  el.un_out.resize(g.nv);
  el.ux_edge.resize(g.nv);
  el.uy_edge.resize(g.nv);
  std::vector<Eigen::MatrixXd> Vedge(g.nv);  // monomials (deg <= k+1) at edge points
  for (int r = 0; r < g.nv; ++r) {
    Vec2 A, B;
    int lvA, lvB;
    stored_endpoints(g, r, A, B, lvA, lvB);
    const Vec2 t = g.edge_t[r], n = g.edge_n[r];

    Eigen::MatrixXd Nt = Eigen::MatrixXd::Zero(k + 1, N);
    Nt(0, 2 * lvA) = t.x();
    Nt(0, 2 * lvA + 1) = t.y();
    Nt(k, 2 * lvB) = t.x();
    Nt(k, 2 * lvB + 1) = t.y();
    for (int i = 1; i <= k - 1; ++i) Nt(i, el.off_edge + r * epb + (i - 1)) = 1.0;

    Eigen::MatrixXd Nn = Eigen::MatrixXd::Zero(el.khat + 1, N);
    Nn(0, 2 * lvA) = n.x();
    Nn(0, 2 * lvA + 1) = n.y();
    Nn(el.khat, 2 * lvB) = n.x();
    Nn(el.khat, 2 * lvB + 1) = n.y();
    for (int i = 1; i <= el.khat - 1; ++i)
      Nn(i, el.off_edge + r * epb + (k - 1) + (i - 1)) = 1.0;

    const Eigen::MatrixXd coefT = Ct * Nt;  // s-power coefficients x dofs
    const Eigen::MatrixXd coefN = Cn * Nn;
    const Eigen::MatrixXd valT = power_matrix(g.equad[r].s, k) * coefT;
    const Eigen::MatrixXd valN = power_matrix(g.equad[r].s, el.khat) * coefN;
    el.ux_edge[r] = t.x() * valT + n.x() * valN;
    el.uy_edge[r] = t.y() * valT + n.y() * valN;
    el.un_out[r] = g.edge_sign[r] * valN;
    Vedge[r] = mono_values(f, k + 1, g.equad[r].pts);
  }

  // --- polynomial divergence ----------------------------------------------
  // (div u, m_0) = boundary flux; higher moments are direct dofs.
  Eigen::MatrixXd Mdiv = Eigen::MatrixXd::Zero(npk1, N);
  for (int r = 0; r < g.nv; ++r)
    Mdiv.row(0) += (el.un_out[r].transpose() * g.equad[r].w).transpose();
  for (int j = 1; j < npk1; ++j) Mdiv(j, el.off_div + j - 1) = g.h;
  el.iota = Hk1_llt.solve(Mdiv);

  // --- gradient moments ----------------------------------------------------
  // (u, grad m_b) = -(iota(u), m_b) + bnd(u.n_out m_b), valid up to b of
  // degree k+1 because div u is a polynomial.
  Eigen::MatrixXd mom_grad = Eigen::MatrixXd::Zero(npkp1 - 1, N);
  for (int j = 1; j < npkp1; ++j)
    mom_grad.row(j - 1) = -(el.H.block(0, j, npk1, 1).transpose() * el.iota);
  for (int r = 0; r < g.nv; ++r) {
    // contribution of side r to every gradient moment at once
    const Eigen::MatrixXd wV =
        g.equad[r].w.asDiagonal() * Vedge[r].rightCols(npkp1 - 1);
    mom_grad += (el.un_out[r].transpose() * wV).transpose();
  }

  // --- moments against low-degree vector polynomials ----------------------
  // Split [P_{k-2}]^2 into gradients + rotated part; both slices are known
  // before any projector exists.
  Eigen::MatrixXd mom_low(2 * npk2, N);
  if (npk2 > 0) {
    const VectorPolyDecomposition dec = vector_poly_decomposition(f, k - 2);
    Eigen::MatrixXd F(dec.n_grad + dec.n_rot, N);
    F.topRows(dec.n_grad) = mom_grad.topRows(dec.n_grad);
    F.bottomRows(dec.n_rot).setZero();
    for (int a = 0; a < dec.n_rot; ++a)
      F(dec.n_grad + a, el.off_rot + a) = g.area;
    mom_low = dec.X.transpose().fullPivLu().solve(F);
  } else {
    mom_low.resize(0, N);
  }

  // --- H1 projector --------------------------------------------------------
  const Eigen::MatrixXd Dx = mono_dx(f, k);
  const Eigen::MatrixXd Dy = mono_dy(f, k);
  const Eigen::MatrixXd K =
      Dx.transpose() * Hk1 * Dx + Dy.transpose() * Hk1 * Dy;
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * npk, 2 * npk);
  G.topLeftCorner(npk, npk) = K;
  G.bottomRightCorner(npk, npk) = K;
  Eigen::MatrixXd Bn = Eigen::MatrixXd::Zero(2 * npk, N);
  Eigen::MatrixXd lap;  // coefficients of Laplacians of the degree-k basis
  if (npk2 > 0)
    lap = mono_dx(f, k - 1) * Dx + mono_dy(f, k - 1) * Dy;  // npk2 x npk
  for (int j = 0; j < npk; ++j) {
    Eigen::RowVectorXd interior = Eigen::RowVectorXd::Zero(N);
    if (npk2 > 0) interior = -(lap.col(j).transpose() * mom_low.topRows(npk2));
    Eigen::RowVectorXd interior_y = Eigen::RowVectorXd::Zero(N);
    if (npk2 > 0)
      interior_y = -(lap.col(j).transpose() * mom_low.bottomRows(npk2));
    Eigen::RowVectorXd bx = Eigen::RowVectorXd::Zero(N);
    Eigen::RowVectorXd by = Eigen::RowVectorXd::Zero(N);
    for (int r = 0; r < g.nv; ++r) {
      const Vec2 nout = g.edge_sign[r] * g.edge_n[r];
      const Eigen::VectorXd gx = Vedge[r].leftCols(npk1) * Dx.col(j);
      const Eigen::VectorXd gy = Vedge[r].leftCols(npk1) * Dy.col(j);
      const Eigen::VectorXd gn =
          (gx * nout.x() + gy * nout.y()).cwiseProduct(g.equad[r].w);
      bx += gn.transpose() * el.ux_edge[r];
      by += gn.transpose() * el.uy_edge[r];
    }
    Bn.row(j) = interior + bx;
    Bn.row(npk + j) = interior_y + by;
  }
  // rank completion: rows testing against constants become boundary averages
  G.row(0).setZero();
  G.row(npk).setZero();
  Bn.row(0).setZero();
  Bn.row(npk).setZero();
  for (int r = 0; r < g.nv; ++r) {
    G.row(0).segment(0, npk) +=
        (g.equad[r].w.transpose() * Vedge[r].leftCols(npk));
    G.row(npk).segment(npk, npk) +=
        (g.equad[r].w.transpose() * Vedge[r].leftCols(npk));
    Bn.row(0) += g.equad[r].w.transpose() * el.ux_edge[r];
    Bn.row(npk) += g.equad[r].w.transpose() * el.uy_edge[r];
  }
  el.pi_nabla = G.fullPivLu().solve(Bn);

  // --- rotated moments (direct dofs + enhancement slice) -------------------
  Eigen::MatrixXd HvPi(2 * npk, N);
  HvPi.topRows(npk) = Hk * el.pi_nabla.topRows(npk);
  HvPi.bottomRows(npk) = Hk * el.pi_nabla.bottomRows(npk);
  Eigen::MatrixXd rotmom = Eigen::MatrixXd::Zero(npk1, N);
  const auto& exps_k1 = mono_exponents(k - 1);
  for (int a = 0; a < npk1; ++a) {
    if (a < np(k - 3)) {
      rotmom(a, el.off_rot + a) = g.area;
    } else {
      // (u, mperp m_a) = (Pi_nabla u, mperp m_a) on the enhanced space
      const MIndex e = exps_k1[a];
      Eigen::RowVectorXd gamma = Eigen::RowVectorXd::Zero(2 * npk);
      gamma(mono_position({e.a1, e.a2 + 1})) = 1.0;
      gamma(npk + mono_position({e.a1 + 1, e.a2})) = -1.0;
      rotmom.row(a) = gamma * HvPi;
    }
  }

  // --- full moment matrix and L2 projector ---------------------------------
  {
    const VectorPolyDecomposition dec = vector_poly_decomposition(f, k);
    Eigen::MatrixXd F(dec.n_grad + dec.n_rot, N);
    F.topRows(dec.n_grad) = mom_grad;
    F.bottomRows(dec.n_rot) = rotmom;
    el.mom = dec.X.transpose().fullPivLu().solve(F);
  }
  el.pi0.resize(2 * npk, N);
  el.pi0.topRows(npk) = Hk_llt.solve(el.mom.topRows(npk));
  el.pi0.bottomRows(npk) = Hk_llt.solve(el.mom.bottomRows(npk));

  // --- L2 projection of the gradient ---------------------------------------
  // Row block (c1, c2) holds the coefficients of the (c1,c2) entry of the
  // projected gradient, i.e. of d(u_{c1})/d(x_{c2}).
  el.pi_grad.resize(4 * npk1, N);
  const Eigen::MatrixXd Dxk1 = (k >= 1) ? mono_dx(f, k - 1) : Eigen::MatrixXd();
  const Eigen::MatrixXd Dyk1 = (k >= 1) ? mono_dy(f, k - 1) : Eigen::MatrixXd();
  for (int c1 = 0; c1 < 2; ++c1) {
    for (int c2 = 0; c2 < 2; ++c2) {
      Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(npk1, N);
      const Eigen::MatrixXd& D2 = (c2 == 0) ? Dxk1 : Dyk1;
      for (int j = 0; j < npk1; ++j) {
        if (npk2 > 0)
          rows.row(j) -=
              D2.col(j).transpose() * el.mom.middleRows(c1 * npk, npk2);
        for (int r = 0; r < g.nv; ++r) {
          const Vec2 nout = g.edge_sign[r] * g.edge_n[r];
          const double nc2 = (c2 == 0) ? nout.x() : nout.y();
          const Eigen::VectorXd wm =
              g.equad[r].w.cwiseProduct(Vedge[r].col(j)) * nc2;
          const Eigen::MatrixXd& vals = (c1 == 0) ? el.ux_edge[r] : el.uy_edge[r];
          rows.row(j) += wm.transpose() * vals;
        }
      }
      el.pi_grad.middleRows((c1 * 2 + c2) * npk1, npk1) = Hk1_llt.solve(rows);
    }
  }

  // --- dof matrix of the vector monomial basis -----------------------------
  el.dofmat = Eigen::MatrixXd::Zero(N, 2 * npk);
  Eigen::Matrix<double, Eigen::Dynamic, 2> vpts(g.nv, 2);
  for (int i = 0; i < g.nv; ++i) vpts.row(i) = g.verts[i].transpose();
  const Eigen::MatrixXd Vv = mono_values(f, k, vpts);
  for (int i = 0; i < g.nv; ++i) {
    el.dofmat.row(2 * i).segment(0, npk) = Vv.row(i);
    el.dofmat.row(2 * i + 1).segment(npk, npk) = Vv.row(i);
  }
  for (int r = 0; r < g.nv; ++r) {
    Vec2 A, B;
    int lvA, lvB;
    stored_endpoints(g, r, A, B, lvA, lvB);
    const Vec2 t = g.edge_t[r], n = g.edge_n[r];
    for (int i = 0; i < k - 1; ++i) {
      const Vec2 p = A + el.tnodes(i) * (B - A);
      Eigen::Matrix<double, 1, 2> prow;
      prow << p.x(), p.y();
      const Eigen::MatrixXd mv = mono_values(f, k, prow);
      el.dofmat.row(el.off_edge + r * epb + i).segment(0, npk) = t.x() * mv.row(0);
      el.dofmat.row(el.off_edge + r * epb + i).segment(npk, npk) = t.y() * mv.row(0);
    }
    for (int i = 0; i < el.khat - 1; ++i) {
      const Vec2 p = A + el.nnodes(i) * (B - A);
      Eigen::Matrix<double, 1, 2> prow;
      prow << p.x(), p.y();
      const Eigen::MatrixXd mv = mono_values(f, k, prow);
      el.dofmat.row(el.off_edge + r * epb + (k - 1) + i).segment(0, npk) =
          n.x() * mv.row(0);
      el.dofmat.row(el.off_edge + r * epb + (k - 1) + i).segment(npk, npk) =
          n.y() * mv.row(0);
    }
  }
  if (k >= 2) {
    const Eigen::VectorXd im = mono_integrals(f, 2 * k, g.quad);
    const auto& exps_k = mono_exponents(k);
    for (int a = 0; a < np(k - 3); ++a) {
      const MIndex ea = mono_exponents(k - 3)[a];
      for (int j = 0; j < npk; ++j) {
        el.dofmat(el.off_rot + a, j) =
            prod_integral(im, exps_k[j], {ea.a1, ea.a2 + 1}) / g.area;
        el.dofmat(el.off_rot + a, npk + j) =
            -prod_integral(im, exps_k[j], {ea.a1 + 1, ea.a2}) / g.area;
      }
    }
    for (int a = 1; a < npk1; ++a) {
      const MIndex ea = exps_k1[a];
      for (int j = 0; j < npk; ++j) {
        double sx = 0, sy = 0;
        for (int q = 0; q < npk1; ++q) {
          if (Dx(q, j) != 0.0) sx += Dx(q, j) * prod_integral(im, exps_k1[q], ea);
          if (Dy(q, j) != 0.0) sy += Dy(q, j) * prod_integral(im, exps_k1[q], ea);
        }
        el.dofmat(el.off_div + a - 1, j) = sx / g.h;
        el.dofmat(el.off_div + a - 1, npk + j) = sy / g.h;
      }
    }
  }

  // --- stabilizations and assembled local forms ----------------------------
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
  const Eigen::MatrixXd R0 = I - el.dofmat * el.pi0;
  const Eigen::MatrixXd Rn = I - el.dofmat * el.pi_nabla;
  el.S0 = R0.transpose() * R0;
  el.Snab = Rn.transpose() * Rn;

  el.MF = el.pi0.topRows(npk).transpose() * Hk * el.pi0.topRows(npk) +
          el.pi0.bottomRows(npk).transpose() * Hk * el.pi0.bottomRows(npk) +
          g.h * g.h * el.S0;
  el.Anab = el.Snab;
  for (int b = 0; b < 4; ++b) {
    const auto blk = el.pi_grad.middleRows(b * npk1, npk1);
    el.Anab += blk.transpose() * Hk1 * blk;
  }

  el.Bp = Hk1 * el.iota;
  el.pvol = Hk1.row(0).transpose();
  return el;
}

Eigen::VectorXd interpolate_velocity(const CellGeometry& g, int k,
                                     const std::function<Vec2(const Vec2&)>& u) {
  const int khat = std::max(k, 2);
  const int epb = (k - 1) + (khat - 1);
  const int off_edge = 2 * g.nv;
  const int off_rot = off_edge + g.nv * epb;
  const int off_div = off_rot + np(k - 3);
  const int N = off_div + np(k - 1) - 1;
  Eigen::VectorXd d = Eigen::VectorXd::Zero(N);
  const MonomialFrame& f = g.frame;

  for (int i = 0; i < g.nv; ++i) {
    const Vec2 v = u(g.verts[i]);
    d(2 * i) = v.x();
    d(2 * i + 1) = v.y();
  }
  const Eigen::VectorXd tn =
      (k >= 2) ? gauss_lobatto_01(k + 1).segment(1, k - 1).eval() : Eigen::VectorXd(0);
  const Eigen::VectorXd nn = gauss_lobatto_01(khat + 1).segment(1, khat - 1).eval();
  for (int r = 0; r < g.nv; ++r) {
    Vec2 A, B;
    int lvA, lvB;
    stored_endpoints(g, r, A, B, lvA, lvB);
    for (int i = 0; i < k - 1; ++i)
      d(off_edge + r * epb + i) = u(A + tn(i) * (B - A)).dot(g.edge_t[r]);
    for (int i = 0; i < khat - 1; ++i)
      d(off_edge + r * epb + (k - 1) + i) = u(A + nn(i) * (B - A)).dot(g.edge_n[r]);
  }
  if (k >= 2) {
    for (int a = 0; a < np(k - 3); ++a) {
      const MIndex ea = mono_exponents(k - 3)[a];
      double s = 0;
      for (int q = 0; q < g.quad.size(); ++q) {
        const Vec2 p = g.quad.pts.row(q).transpose();
        const Vec2 mperp((p.y() - f.center.y()) / f.h, -(p.x() - f.center.x()) / f.h);
        s += g.quad.w(q) * u(p).dot(mperp) * mono_eval(f, ea, p);
      }
      d(off_rot + a) = s / g.area;
    }
    const auto& exps_k1 = mono_exponents(k - 1);
    for (int a = 1; a < np(k - 1); ++a) {
      const MIndex ea = exps_k1[a];
      double s = 0;
      for (int r = 0; r < g.nv; ++r) {
        const Vec2 nout = g.edge_sign[r] * g.edge_n[r];
        for (int q = 0; q < g.equad[r].size(); ++q) {
          const Vec2 p = g.equad[r].pts.row(q).transpose();
          s += g.equad[r].w(q) * mono_eval(f, ea, p) * u(p).dot(nout);
        }
      }
      for (int q = 0; q < g.quad.size(); ++q) {
        const Vec2 p = g.quad.pts.row(q).transpose();
        s -= g.quad.w(q) * u(p).dot(mono_grad(f, ea, p));
      }
      d(off_div + a - 1) = s / g.h;
    }
  }
  return d;
}

}  // namespace vemnsch
