#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "fixtures.hpp"

#include "vemnsch/poly_decomp.hpp"

using namespace vemnsch;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

double rel_err(const MatrixXd& got, const MatrixXd& ref) {
  return (got - ref).cwiseAbs().maxCoeff() / (1.0 + ref.cwiseAbs().maxCoeff());
}

double poly_eval_s(const VectorXd& c, double s) {
  double v = 0, p = 1;
  for (int i = 0; i < c.size(); ++i, p *= s) v += c(i) * p;
  return v;
}

void check_element(const PolygonalMesh& m, int l) {
  CAPTURE(l);
  const CellGeometry g = vemtest::cell_geo(m, 0, 2, l);
  const PhaseElement el = build_phase_element(g, l);
  const int nl = el.npl, nl1 = el.npl1, nl2 = el.npl2;
  REQUIRE(el.ndof == phase_ndof(l, g.nv));
  REQUIRE(el.ndof == 3 * g.nv + g.nv * (l - 2 + el.lhat - 3) + np(l - 4));

  const MatrixXd D = el.dofmat;
  const MatrixXd I = MatrixXd::Identity(nl, nl);
  CHECK(rel_err(el.piD * D, I) < 1e-11);
  CHECK(rel_err(el.pi0 * D, I) < 1e-11);

  const MatrixXd Dx = mono_dx(g.frame, l), Dy = mono_dy(g.frame, l);
  MatrixXd refg(2 * nl1, nl);
  refg << Dx, Dy;
  CHECK(rel_err(el.pi_grad * D, refg) < 1e-11);

  const MatrixXd Dxx = mono_dx(g.frame, l - 1) * Dx;
  const MatrixXd Dxy = mono_dy(g.frame, l - 1) * Dx;
  const MatrixXd Dyy = mono_dy(g.frame, l - 1) * Dy;
  MatrixXd refh(4 * nl2, nl);
  refh << Dxx, Dxy, Dxy, Dyy;
  CHECK(rel_err(el.pi_hess * D, refh) < 1e-11);
  CHECK(rel_err(el.pi_lap * D, Dxx + Dyy) < 1e-11);

  // Moments of monomials are the mass matrix; discrete forms are exact on
  // polynomials because the stabilizations vanish there.
  const MatrixXd Hl = el.H.topLeftCorner(nl, nl);
  CHECK(rel_err(el.momphi * D, Hl) < 1e-11);
  CHECK((el.S0 * D).cwiseAbs().maxCoeff() < 1e-10 * (1 + D.cwiseAbs().maxCoeff()));
  CHECK((el.SD * D).cwiseAbs().maxCoeff() <
        1e-10 * (1 + D.cwiseAbs().maxCoeff()));
  CHECK(rel_err(D.transpose() * el.M * D, Hl) < 1e-11);
  const MatrixXd Hl2 = el.H.topLeftCorner(nl2, nl2);
  MatrixXd H4 = MatrixXd::Zero(4 * nl2, 4 * nl2);
  for (int b = 0; b < 4; ++b) H4.block(b * nl2, b * nl2, nl2, nl2) = Hl2;
  CHECK(rel_err(D.transpose() * el.AD * D, refh.transpose() * H4 * refh) < 1e-11);

  // Interpolating a monomial returns its DoF column; edge evaluations and
  // the trace coefficient maps reproduce the monomial and its gradient.
  const auto exps = mono_exponents(l);
  for (int j = 0; j < nl; ++j) {
    const MIndex a = exps[j];
    auto f = [&](const Vec2& x) { return mono_eval(g.frame, a, x); };
    auto df = [&](const Vec2& x) { return mono_grad(g.frame, a, x); };
    const VectorXd dj = interpolate_phase(g, l, f, df);
    CHECK((dj - D.col(j)).cwiseAbs().maxCoeff() <
          1e-11 * (1 + D.col(j).cwiseAbs().maxCoeff()));

    for (int r = 0; r < g.nv; ++r) {
      const VectorXd val = el.val_edge[r] * D.col(j);
      const VectorXd gx = el.gx_edge[r] * D.col(j);
      const VectorXd gy = el.gy_edge[r] * D.col(j);
      const VectorXd cv = el.coefV[r] * D.col(j);
      const VectorXd cn = el.coefN[r] * D.col(j);
      for (int q = 0; q < g.equad[r].size(); ++q) {
        const Vec2 x(g.equad[r].pts(q, 0), g.equad[r].pts(q, 1));
        const double s = g.equad[r].s(q);
        CHECK(std::abs(val(q) - f(x)) < 1e-11);
        CHECK(std::abs(gx(q) - df(x).x()) < 1e-11);
        CHECK(std::abs(gy(q) - df(x).y()) < 1e-11);
        CHECK(std::abs(poly_eval_s(cv, s) - f(x)) < 1e-11);
        CHECK(std::abs(poly_eval_s(cn, s) - df(x).dot(g.edge_n[r])) < 1e-11);
      }
    }
  }
}

}  // namespace

TEST_CASE("phase element reproduces polynomials") {
  for (int l = 2; l <= 4; ++l) {
    check_element(vemtest::triangle_mesh(), l);
    check_element(vemtest::quad_mesh(), l);
    check_element(vemtest::pentagon_mesh(), l);
  }
}

TEST_CASE("projected Laplacian obeys the divergence theorem") {
  // (Pi lap phi, 1)_E must equal the boundary integral of the normal
  // derivative trace for every DoF vector, by construction of the projector.
  for (int l = 2; l <= 4; ++l) {
    const PolygonalMesh m = vemtest::pentagon_mesh();
    const CellGeometry g = vemtest::cell_geo(m, 0, 2, l);
    const PhaseElement el = build_phase_element(g, l);
    const VectorXd mi = mono_integrals(g.frame, l - 2, g.quad);
    for (int t = 0; t < 5; ++t) {
      const VectorXd v = vemtest::random_vec(el.ndof);
      const double lhs = mi.dot(el.pi_lap * v);
      double rhs = 0;
      for (int r = 0; r < g.nv; ++r) {
        const VectorXd cn = el.coefN[r] * v;
        double int01 = 0;
        for (int p = 0; p < cn.size(); ++p) int01 += cn(p) / (p + 1);
        rhs += g.edge_sign[r] * g.edge_len[r] * int01;
      }
      CHECK(std::abs(lhs - rhs) < 1e-11 * (1 + std::abs(lhs)));
    }
  }
}

TEST_CASE("traces are single-valued across an interior edge") {
  // Two cells sharing the diagonal of the unit square: both local trace maps
  // must produce the same value and normal-derivative polynomials when fed
  // the interpolant of one smooth function, which is what makes the global
  // space C1-conforming.
  const PolygonalMesh m = vemtest::two_triangle_mesh();
  int shared = -1;
  for (int e = 0; e < m.n_edges(); ++e)
    if (!m.boundary_edge[e]) shared = e;
  REQUIRE(shared >= 0);

  auto f = [](const Vec2& x) {
    return std::sin(1.3 * x.x()) * std::exp(0.7 * x.y());
  };
  auto df = [](const Vec2& x) {
    return Vec2(1.3 * std::cos(1.3 * x.x()) * std::exp(0.7 * x.y()),
                0.7 * std::sin(1.3 * x.x()) * std::exp(0.7 * x.y()));
  };

  for (int l = 2; l <= 4; ++l) {
    std::vector<VectorXd> cv, cn;
    for (int c = 0; c < 2; ++c) {
      const CellGeometry g = vemtest::cell_geo(m, c, 2, l);
      const PhaseElement el = build_phase_element(g, l);
      const VectorXd d = interpolate_phase(g, l, f, df);
      int side = -1;
      for (int r = 0; r < g.nv; ++r)
        if (g.edge_ids[r] == shared) side = r;
      REQUIRE(side >= 0);
      cv.push_back(el.coefV[side] * d);
      cn.push_back(el.coefN[side] * d);
    }
    CHECK((cv[0] - cv[1]).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((cn[0] - cn[1]).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("interpolation DoF semantics") {
  const PolygonalMesh m = vemtest::quad_mesh();
  const int l = 4;
  const CellGeometry g = vemtest::cell_geo(m, 0, 2, l);
  const PhaseElement el = build_phase_element(g, l);
  auto f = [](const Vec2& x) { return std::cos(x.x() + 2 * x.y()); };
  auto df = [](const Vec2& x) {
    const double s = -std::sin(x.x() + 2 * x.y());
    return Vec2(s, 2 * s);
  };
  const VectorXd d = interpolate_phase(g, l, f, df);
  for (int i = 0; i < g.nv; ++i) {
    CHECK(d(3 * i) == doctest::Approx(f(g.verts[i])).epsilon(1e-13));
    CHECK(d(3 * i + 1) ==
          doctest::Approx(g.vert_h[i] * df(g.verts[i]).x()).epsilon(1e-13));
    CHECK(d(3 * i + 2) ==
          doctest::Approx(g.vert_h[i] * df(g.verts[i]).y()).epsilon(1e-13));
  }
  int slot = el.off_edge;
  for (int r = 0; r < g.nv; ++r) {
    const Vec2 a = g.verts[r], b = g.verts[(r + 1) % g.nv];
    for (int q = 0; q < el.n_edge_n; ++q) {
      const Vec2 x = a + el.dnodes(q) * (b - a);
      CHECK(d(slot++) == doctest::Approx(g.edge_len[r] *
                                         df(x).dot(g.edge_n[r])).epsilon(1e-13));
    }
    for (int q = 0; q < el.n_edge_v; ++q) {
      const Vec2 x = a + el.vnodes(q) * (b - a);
      CHECK(d(slot++) == doctest::Approx(f(x)).epsilon(1e-13));
    }
  }
  CHECK(slot == el.off_mom);
  // Interior moments: |E|^-1 (m_a, f)_E by the cell rule.
  for (int a = 0; a < np(l - 4); ++a) {
    double mo = 0;
    for (int q = 0; q < g.quad.size(); ++q) {
      const Vec2 x(g.quad.pts(q, 0), g.quad.pts(q, 1));
      mo += g.quad.w(q) * mono_eval(g.frame, mono_exponents(l - 4)[a], x) * f(x);
    }
    CHECK(d(el.off_mom + a) == doctest::Approx(mo / g.area).epsilon(1e-12));
  }
}
