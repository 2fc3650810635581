#include "vemnsch/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "vemnsch/monomials.hpp"

namespace vemnsch {

namespace {

// Value and derivative of the Legendre polynomial P_n at t (on [-1,1]).
void legendre(int n, double t, double& p, double& dp) {
  double p0 = 1.0, p1 = t;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (t * p1 - p0) / (t * t - 1.0);
}

Quad1d gauss_legendre_m11(int n) {
  Quad1d q;
  q.x.resize(n);
  q.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(n, t, p, dp);
      const double dt = -p / dp;
      t += dt;
      if (std::abs(dt) < 1e-15) break;
    }
    legendre(n, t, p, dp);
    q.x[i] = t;
    q.w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return q;
}

const Quad1d& cached_gl01(int n) {
  static std::mutex mtx;
  static std::vector<Quad1d> cache;
  std::lock_guard<std::mutex> lock(mtx);
  while (static_cast<int>(cache.size()) <= n) {
    const int m = static_cast<int>(cache.size());
    Quad1d q;
    if (m > 0) {
      q = gauss_legendre_m11(m);
      q.x = (q.x.array() + 1.0) / 2.0;
      q.w /= 2.0;
    }
    cache.push_back(std::move(q));
  }
  return cache[n];
}

}  // namespace

Quad1d gauss_legendre_01(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: need n >= 1");
  return cached_gl01(n);
}

Eigen::VectorXd gauss_lobatto_01(int n) {
  if (n < 2) throw std::invalid_argument("gauss_lobatto_01: need n >= 2");
  Eigen::VectorXd x(n);
  x[0] = -1.0;
  x[n - 1] = 1.0;
  // Interior nodes are the roots of P'_{n-1}; Newton from Chebyshev-like
  // starting points, with P'' from the Legendre ODE.
  const int m = n - 1;
  for (int i = 1; i < n - 1; ++i) {
    double t = std::cos(M_PI * i / m);
    for (int it = 0; it < 100; ++it) {
      double p, dp;
      legendre(m, t, p, dp);
      const double ddp = (2.0 * t * dp - m * (m + 1) * p) / (1.0 - t * t);
      const double dt = -dp / ddp;
      t += dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[n - 1 - i] = t;
  }
  return (x.array() + 1.0) / 2.0;
}

EdgeRule edge_rule(const Vec2& a, const Vec2& b, int degree) {
  const int n = std::max(1, (degree + 2) / 2);  // 2n-1 >= degree
  const Quad1d& g = gauss_legendre_01(n);
  EdgeRule r;
  r.degree = 2 * n - 1;
  r.s = g.x;
  r.pts.resize(n, 2);
  for (int i = 0; i < n; ++i) r.pts.row(i) = a + g.x[i] * (b - a);
  r.w = g.w * (b - a).norm();
  return r;
}

QuadRule triangle_rule(const Vec2& a, const Vec2& b, const Vec2& c, int degree) {
  // Duffy collapse of the unit square: (xi, eta) -> (xi, eta (1 - xi)) with
  // Jacobian (1 - xi); a degree-d integrand needs xi-degree d+1, eta-degree d.
  const int nxi = std::max(1, (degree + 3) / 2);
  const int neta = std::max(1, (degree + 2) / 2);
  const Quad1d& gx = gauss_legendre_01(nxi);
  const Quad1d& ge = gauss_legendre_01(neta);

  const double jac = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
  QuadRule r;
  r.degree = degree;
  r.pts.resize(nxi * neta, 2);
  r.w.resize(nxi * neta);
  int q = 0;
  for (int i = 0; i < nxi; ++i)
    for (int j = 0; j < neta; ++j, ++q) {
      const double u = gx.x[i];
      const double v = ge.x[j] * (1.0 - gx.x[i]);
      r.pts.row(q) = a + u * (b - a) + v * (c - a);
      r.w[q] = gx.w[i] * ge.w[j] * (1.0 - gx.x[i]) * jac;
    }
  return r;
}

namespace {

// Analytic integral of the scaled monomial m_a over the polygon through the
// divergence theorem: int_E m_a = sum_edges int_e A n_x ds with the
// x-antiderivative A = h/(a1+1) m_{a1+1,a2}.  Exact edge integrals by 1D
// Gauss; independent of the sub-triangulation being verified.
double mono_integral_green(const MonomialFrame& f, const MIndex& a,
                           const std::vector<Vec2>& poly) {
  const int deg = a.total() + 1;
  const int n1 = std::max(1, (deg + 2) / 2);
  const Quad1d& g = gauss_legendre_01(n1);
  const int m = static_cast<int>(poly.size());
  double total = 0.0;
  for (int e = 0; e < m; ++e) {
    const Vec2& p0 = poly[e];
    const Vec2& p1 = poly[(e + 1) % m];
    const Vec2 t = p1 - p0;
    const double len = t.norm();
    const double nx = t.y() / len;  // outward normal (CCW polygon), x-component
    double acc = 0.0;
    for (int q = 0; q < n1; ++q)
      acc += g.w[q] * mono_eval(f, {a.a1 + 1, a.a2}, p0 + g.x[q] * t);
    total += acc * len * nx * f.h / (a.a1 + 1);
  }
  return total;
}

}  // namespace

QuadRule polygon_rule(const std::vector<Vec2>& poly, int degree) {
  const int m = static_cast<int>(poly.size());
  if (m < 3) throw std::invalid_argument("polygon_rule: fewer than 3 vertices");
  const double area = polygon_signed_area(poly);
  const double h = polygon_diameter(poly);
  if (area <= 0) throw std::runtime_error("polygon_rule: polygon not CCW or degenerate");

  // Pick a fan center that sees all edges; fall back to ear clipping.
  std::vector<std::array<int, 3>> tris;
  Vec2 fan(0, 0);
  bool have_fan = false;
  const double tol = 1e-12 * h * h;
  const Vec2 cent = polygon_centroid(poly);
  if (sees_all_edges(cent, poly, tol)) {
    fan = cent;
    have_fan = true;
  } else {
    const InscribedDisc disc = kernel_chebyshev_disc(poly);
    if (disc.radius > 1e-9 * h && sees_all_edges(disc.center, poly, tol)) {
      fan = disc.center;
      have_fan = true;
    }
  }

  QuadRule rule;
  rule.degree = degree;
  std::vector<QuadRule> parts;
  if (have_fan) {
    for (int i = 0; i < m; ++i)
      parts.push_back(triangle_rule(fan, poly[i], poly[(i + 1) % m], degree));
  } else {
    for (const auto& t : ear_clip(poly))
      parts.push_back(triangle_rule(poly[t[0]], poly[t[1]], poly[t[2]], degree));
  }
  int total = 0;
  for (const auto& p : parts) total += p.size();
  rule.pts.resize(total, 2);
  rule.w.resize(total);
  int at = 0;
  for (const auto& p : parts) {
    rule.pts.middleRows(at, p.size()) = p.pts;
    rule.w.segment(at, p.size()) = p.w;
    at += p.size();
  }

  // Verify the declared exactness monomial by monomial against the analytic
  // edge-integral values.
  const MonomialFrame f{cent, h};
  const Eigen::MatrixXd V = mono_values(f, degree, rule.pts);
  const Eigen::VectorXd quad_ints = V.transpose() * rule.w;
  const auto& exps = mono_exponents(degree);
  for (int j = 0; j < np(degree); ++j) {
    const double exact = mono_integral_green(f, exps[j], poly);
    if (std::abs(quad_ints[j] - exact) > 1e-11 * std::max(area, std::abs(exact)))
      throw std::runtime_error("polygon_rule: exactness verification failed");
  }
  return rule;
}

}  // namespace vemnsch
