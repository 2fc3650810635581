#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "fixtures.hpp"
#include "vemnsch/poly_decomp.hpp"
#include "vemnsch/quadrature.hpp"

using namespace vemnsch;
using vemtest::pentagon_mesh;
using vemtest::random_vec;
using vemtest::urand;

TEST_CASE("dimension counts and basis order") {
  CHECK(np(-2) == 0);
  CHECK(np(-1) == 0);
  CHECK(np(0) == 1);
  CHECK(np(1) == 3);
  CHECK(np(2) == 6);
  CHECK(np(5) == 21);
  const auto& e2 = mono_exponents(2);
  REQUIRE(e2.size() == 6);
  const int a1[6] = {0, 1, 0, 2, 1, 0};
  const int a2[6] = {0, 0, 1, 0, 1, 2};
  for (int j = 0; j < 6; ++j) {
    CHECK(e2[j].a1 == a1[j]);
    CHECK(e2[j].a2 == a2[j]);
    CHECK(mono_position(e2[j]) == j);
  }
  CHECK_THROWS(mono_exponents(-1));
}

TEST_CASE("values match direct evaluation") {
  const MonomialFrame f{{0.3, -0.2}, 1.7};
  Eigen::Matrix<double, Eigen::Dynamic, 2> pts(4, 2);
  for (int i = 0; i < 4; ++i) pts.row(i) << urand(), urand();
  const Eigen::MatrixXd V = mono_values(f, 3, pts);
  REQUIRE(V.rows() == 4);
  REQUIRE(V.cols() == np(3));
  const auto& exps = mono_exponents(3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < np(3); ++j) {
      const double sx = (pts(i, 0) - f.center.x()) / f.h;
      const double sy = (pts(i, 1) - f.center.y()) / f.h;
      const double ref = std::pow(sx, exps[j].a1) * std::pow(sy, exps[j].a2);
      CHECK(V(i, j) == doctest::Approx(ref).epsilon(1e-13));
      CHECK(mono_eval(f, exps[j], Vec2(pts(i, 0), pts(i, 1))) ==
            doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("derivative matrices differentiate coefficient vectors") {
  const MonomialFrame f{{-0.1, 0.4}, 0.9};
  const int n = 4;
  const Eigen::MatrixXd Dx = mono_dx(f, n), Dy = mono_dy(f, n);
  REQUIRE(Dx.rows() == np(n - 1));
  REQUIRE(Dx.cols() == np(n));
  const Eigen::VectorXd c = random_vec(np(n));
  const Eigen::VectorXd cx = Dx * c, cy = Dy * c;
  for (int t = 0; t < 5; ++t) {
    const Vec2 x(urand(), urand());
    const Vec2 g = vemtest::poly_grad(f, c, n, x);
    CHECK(vemtest::poly_eval(f, cx, n - 1, x) ==
          doctest::Approx(g.x()).epsilon(1e-12));
    CHECK(vemtest::poly_eval(f, cy, n - 1, x) ==
          doctest::Approx(g.y()).epsilon(1e-12));
  }
}

TEST_CASE("gradient evaluator against finite differences") {
  const MonomialFrame f{{0.2, 0.1}, 1.3};
  const double h = 1e-6;
  for (const MIndex& a : mono_exponents(3)) {
    const Vec2 x(0.37, -0.21);
    const Vec2 g = mono_grad(f, a, x);
    const double gx = (mono_eval(f, a, x + Vec2(h, 0)) -
                       mono_eval(f, a, x - Vec2(h, 0))) /
                      (2 * h);
    const double gy = (mono_eval(f, a, x + Vec2(0, h)) -
                       mono_eval(f, a, x - Vec2(0, h))) /
                      (2 * h);
    CHECK(g.x() == doctest::Approx(gx).epsilon(1e-8));
    CHECK(g.y() == doctest::Approx(gy).epsilon(1e-8));
  }
}

TEST_CASE("mass matrix on the unit square") {
  PolygonalMesh m = build_mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}});
  const CellGeometry g = cell_geometry(m, 0, 8, 8);
  const Eigen::MatrixXd H = mass_matrix(g.frame, 1, g.quad);
  // Frame: center (1/2,1/2), h = sqrt(2); int ((x-1/2)/h)^2 = (1/12)/2 = 1/24.
  CHECK(H(0, 0) == doctest::Approx(1.0));
  CHECK(H(1, 1) == doctest::Approx(1.0 / 24));
  CHECK(H(2, 2) == doctest::Approx(1.0 / 24));
  CHECK(std::abs(H(0, 1)) < 1e-14);
  CHECK(std::abs(H(1, 2)) < 1e-14);
  // SPD on an irregular cell as well.
  PolygonalMesh p = pentagon_mesh();
  const CellGeometry gp = cell_geometry(p, 0, 12, 12);
  const Eigen::MatrixXd Hp = mass_matrix(gp.frame, 3, gp.quad);
  Eigen::LLT<Eigen::MatrixXd> llt(Hp);
  CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("monomial integrals agree with quadrature") {
  PolygonalMesh p = pentagon_mesh();
  const CellGeometry g = cell_geometry(p, 0, 12, 12);
  const Eigen::VectorXd mi = mono_integrals(g.frame, 4, g.quad);
  const Eigen::MatrixXd V = mono_values(g.frame, 4, g.quad.pts);
  const Eigen::VectorXd ref = V.transpose() * g.quad.w;
  CHECK((mi - ref).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(mi(0) == doctest::Approx(g.area));
}

TEST_CASE("vector polynomial decomposition spans and splits") {
  const MonomialFrame f{{0.25, 0.55}, 1.1};
  for (int n = 0; n <= 3; ++n) {
    const VectorPolyDecomposition d = vector_poly_decomposition(f, n);
    CHECK(d.n_grad == np(n + 1) - 1);
    CHECK(d.n_rot == np(n - 1));
    REQUIRE(d.X.rows() == 2 * np(n));
    REQUIRE(d.X.cols() == d.n_grad + d.n_rot);
    REQUIRE(d.X.rows() == d.X.cols());
    Eigen::FullPivLU<Eigen::MatrixXd> lu(d.X);
    CHECK(lu.isInvertible());

    // Expanding a random vector polynomial in the split basis reproduces its
    // point values: sum_j y_j grad m_j + sum_j y_j mperp m_j.
    const Eigen::VectorXd c = random_vec(2 * np(n));
    const Eigen::VectorXd y = lu.solve(c);
    const auto& exps1 = mono_exponents(n + 1);
    for (int t = 0; t < 4; ++t) {
      const Vec2 x(urand(), urand());
      Vec2 val(0, 0);
      for (int j = 0; j < d.n_grad; ++j)
        val += y(j) * mono_grad(f, exps1[j + 1], x);
      const Vec2 mperp((x.y() - f.center.y()) / f.h,
                       -(x.x() - f.center.x()) / f.h);
      for (int j = 0; j < d.n_rot; ++j)
        val += y(d.n_grad + j) * mperp * mono_eval(f, mono_exponents(n - 1)[j], x);
      const Vec2 ref(vemtest::poly_eval(f, c.head(np(n)), n, x),
                     vemtest::poly_eval(f, c.tail(np(n)), n, x));
      CHECK(val.x() == doctest::Approx(ref.x()).epsilon(1e-11));
      CHECK(val.y() == doctest::Approx(ref.y()).epsilon(1e-11));
    }
  }
}
