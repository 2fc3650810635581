#include "vemnsch/geometry.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vemnsch {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

double polygon_signed_area(const std::vector<Vec2>& p) {
  const int m = static_cast<int>(p.size());
  double a = 0.0;
  for (int i = 0; i < m; ++i) {
    const Vec2& q = p[i];
    const Vec2& r = p[(i + 1) % m];
    a += cross2(q, r);
  }
  return 0.5 * a;
}

Vec2 polygon_centroid(const std::vector<Vec2>& p) {
  const int m = static_cast<int>(p.size());
  double a = 0.0;
  Vec2 c(0, 0);
  for (int i = 0; i < m; ++i) {
    const Vec2& q = p[i];
    const Vec2& r = p[(i + 1) % m];
    const double w = cross2(q, r);
    a += w;
    c += w * (q + r);
  }
  if (std::abs(a) < 10 * std::numeric_limits<double>::min())
    throw std::runtime_error("polygon_centroid: degenerate polygon");
  return c / (3.0 * a);
}

double polygon_diameter(const std::vector<Vec2>& p) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      d2 = std::max(d2, (p[i] - p[j]).squaredNorm());
  return std::sqrt(d2);
}

bool point_in_polygon(const Vec2& x, const std::vector<Vec2>& p) {
  // Crossing-number test with the ray {y = x.y, x' > x.x}.
  const int m = static_cast<int>(p.size());
  bool inside = false;
  for (int i = 0, j = m - 1; i < m; j = i++) {
    const bool straddles = (p[i].y() > x.y()) != (p[j].y() > x.y());
    if (straddles) {
      const double xi =
          p[j].x() + (p[i].x() - p[j].x()) * (x.y() - p[j].y()) / (p[i].y() - p[j].y());
      if (x.x() < xi) inside = !inside;
    }
  }
  return inside;
}

bool sees_all_edges(const Vec2& x, const std::vector<Vec2>& p, double tol) {
  const int m = static_cast<int>(p.size());
  for (int i = 0; i < m; ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % m];
    if (cross2(b - a, x - a) <= tol) return false;
  }
  return true;
}

InscribedDisc kernel_chebyshev_disc(const std::vector<Vec2>& p) {
  // Maximize r subject to  n_i . x + r <= n_i . a_i  for every edge (a_i, b_i)
  // with outward unit normal n_i.  The optimum of this 3-variable LP sits where
  // three constraints are active (or two for symmetric configurations, which a
  // triple still detects); enumerate triples, keep the best feasible point.
  const int m = static_cast<int>(p.size());
  std::vector<Vec2> n(m);
  std::vector<double> d(m);
  for (int i = 0; i < m; ++i) {
    const Vec2 t = p[(i + 1) % m] - p[i];
    const double len = t.norm();
    if (len < 10 * std::numeric_limits<double>::min())
      throw std::runtime_error("kernel_chebyshev_disc: zero-length edge");
    n[i] = Vec2(t.y(), -t.x()) / len;  // outward for CCW loops
    d[i] = n[i].dot(p[i]);
  }

  const double scale = polygon_diameter(p);
  InscribedDisc best;
  best.radius = -scale;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        Eigen::Matrix3d A;
        A << n[i].x(), n[i].y(), 1.0, n[j].x(), n[j].y(), 1.0, n[k].x(), n[k].y(), 1.0;
        Eigen::FullPivLU<Eigen::Matrix3d> lu(A);
        if (!lu.isInvertible()) continue;
        const Eigen::Vector3d s = lu.solve(Eigen::Vector3d(d[i], d[j], d[k]));
        const Vec2 c(s[0], s[1]);
        const double r = s[2];
        if (r <= best.radius) continue;
        bool feasible = true;
        for (int q = 0; q < m && feasible; ++q)
          feasible = n[q].dot(c) + r <= d[q] + 1e-12 * scale;
        if (feasible) {
          best.center = c;
          best.radius = r;
        }
      }
  return best;
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& p) {
  const int m = static_cast<int>(p.size());
  if (m < 3) throw std::runtime_error("ear_clip: fewer than 3 vertices");
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;

  const double area_tol = 1e-14 * polygon_diameter(p) * polygon_diameter(p);
  std::vector<std::array<int, 3>> tris;
  int guard = 0;
  while (idx.size() > 3) {
    if (++guard > 4 * m * m) throw std::runtime_error("ear_clip: no ear found (non-simple polygon?)");
    const int nn = static_cast<int>(idx.size());
    bool clipped = false;
    for (int i = 0; i < nn; ++i) {
      const int ia = idx[(i + nn - 1) % nn], ib = idx[i], ic = idx[(i + 1) % nn];
      const Vec2 &a = p[ia], &b = p[ib], &c = p[ic];
      if (cross2(b - a, c - a) <= area_tol) continue;  // reflex or flat corner
      bool ear = true;
      for (int q : idx) {
        if (q == ia || q == ib || q == ic) continue;
        const Vec2& x = p[q];
        const bool in = cross2(b - a, x - a) > -area_tol && cross2(c - b, x - b) > -area_tol &&
                        cross2(a - c, x - c) > -area_tol;
        if (in) {
          ear = false;
          break;
        }
      }
      if (ear) {
        tris.push_back({ia, ib, ic});
        idx.erase(idx.begin() + i);
        clipped = true;
        break;
      }
    }
    if (!clipped) throw std::runtime_error("ear_clip: stuck (degenerate polygon)");
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

}  // namespace vemnsch
