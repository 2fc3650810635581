#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "vemnsch/mesh.hpp"

namespace vemnsch {

namespace {

PolygonalMesh tensor_grid(int n, const Vec2& lo, const Vec2& hi, bool perturb) {
  const double hx = (hi.x() - lo.x()) / n;
  const double hy = (hi.y() - lo.y()) / n;
  std::vector<Vec2> verts((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      Vec2 p(lo.x() + i * hx, lo.y() + j * hy);
      if (perturb) {
        // Smooth deterministic interior perturbation, zero on the boundary.
        const double s = std::sin(2.0 * M_PI * i / n) * std::sin(2.0 * M_PI * j / n);
        p.x() += 0.1 * hx * s;
        p.y() -= 0.1 * hy * s;
      }
      verts[j * (n + 1) + i] = p;
    }
  std::vector<std::vector<int>> cells;
  cells.reserve(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int v00 = j * (n + 1) + i;
      const int v10 = v00 + 1;
      const int v01 = v00 + (n + 1);
      const int v11 = v01 + 1;
      cells.push_back({v00, v10, v11, v01});
    }
  return build_mesh(std::move(verts), std::move(cells));
}

PolygonalMesh triangular_grid(int n, const Vec2& lo, const Vec2& hi) {
  const double hx = (hi.x() - lo.x()) / n;
  const double hy = (hi.y() - lo.y()) / n;
  std::vector<Vec2> verts((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts[j * (n + 1) + i] = Vec2(lo.x() + i * hx, lo.y() + j * hy);
  std::vector<std::vector<int>> cells;
  cells.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int v00 = j * (n + 1) + i;
      const int v10 = v00 + 1;
      const int v01 = v00 + (n + 1);
      const int v11 = v01 + 1;
      cells.push_back({v00, v10, v11});
      cells.push_back({v00, v11, v01});
    }
  return build_mesh(std::move(verts), std::move(cells));
}

// ------------------------------------------------------------------ voronoi

// Clip a convex polygon against the half-plane (x - mid) . d <= 0.
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& mid, const Vec2& d) {
  std::vector<Vec2> out;
  const int m = static_cast<int>(poly.size());
  out.reserve(m + 2);
  for (int i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    const double fa = (a - mid).dot(d);
    const double fb = (b - mid).dot(d);
    if (fa <= 0) out.push_back(a);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) {
      const double t = fa / (fa - fb);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

struct BoundaryClass {
  bool on_x0 = false, on_x1 = false, on_y0 = false, on_y1 = false;
  int sides() const { return int(on_x0) + int(on_x1) + int(on_y0) + int(on_y1); }
};

BoundaryClass classify(const Vec2& p, const Vec2& lo, const Vec2& hi, double tol) {
  BoundaryClass b;
  b.on_x0 = std::abs(p.x() - lo.x()) < tol;
  b.on_x1 = std::abs(p.x() - hi.x()) < tol;
  b.on_y0 = std::abs(p.y() - lo.y()) < tol;
  b.on_y1 = std::abs(p.y() - hi.y()) < tol;
  return b;
}

PolygonalMesh voronoi_grid_attempt(int n, const Vec2& lo, const Vec2& hi, unsigned seed_base) {
  const double hx = (hi.x() - lo.x()) / n;
  const double hy = (hi.y() - lo.y()) / n;
  const double hl = std::max(hx, hy);

  std::mt19937 rng(seed_base);
  std::uniform_real_distribution<double> jit(-0.25, 0.25);
  std::vector<Vec2> seeds(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      seeds[j * n + i] = Vec2(lo.x() + (i + 0.5 + jit(rng)) * hx, lo.y() + (j + 0.5 + jit(rng)) * hy);

  const std::vector<Vec2> rect = {lo, Vec2(hi.x(), lo.y()), hi, Vec2(lo.x(), hi.y())};
  auto cell_of = [&](int s, const std::vector<Vec2>& pts) {
    std::vector<Vec2> poly = rect;
    const int si = s % n, sj = s / n;
    for (int dj = -3; dj <= 3 && !poly.empty(); ++dj)
      for (int di = -3; di <= 3 && !poly.empty(); ++di) {
        const int i = si + di, j = sj + dj;
        if (i < 0 || i >= n || j < 0 || j >= n || (di == 0 && dj == 0)) continue;
        const int t = j * n + i;
        poly = clip_halfplane(poly, 0.5 * (pts[s] + pts[t]), pts[t] - pts[s]);
      }
    if (poly.size() < 3) throw std::runtime_error("voronoi: clipped cell degenerated");
    return poly;
  };

  for (int sweep = 0; sweep < 20; ++sweep) {
    std::vector<Vec2> next(seeds.size());
    for (std::size_t s = 0; s < seeds.size(); ++s)
      next[s] = polygon_centroid(cell_of(static_cast<int>(s), seeds));
    seeds.swap(next);
  }

  // Final cells; snap boundary-line coordinates exactly.
  const double snap_tol = 1e-9 * hl;
  std::vector<std::vector<Vec2>> polys(seeds.size());
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    polys[s] = cell_of(static_cast<int>(s), seeds);
    for (Vec2& p : polys[s]) {
      if (std::abs(p.x() - lo.x()) < snap_tol) p.x() = lo.x();
      if (std::abs(p.x() - hi.x()) < snap_tol) p.x() = hi.x();
      if (std::abs(p.y() - lo.y()) < snap_tol) p.y() = lo.y();
      if (std::abs(p.y() - hi.y()) < snap_tol) p.y() = hi.y();
    }
  }

  // Weld coincident vertices across cells (sort + sweep clustering).
  struct VRec {
    Vec2 p;
    int cell, slot, id = -1;
  };
  std::vector<VRec> recs;
  for (std::size_t s = 0; s < polys.size(); ++s)
    for (std::size_t q = 0; q < polys[s].size(); ++q)
      recs.push_back({polys[s][q], static_cast<int>(s), static_cast<int>(q)});
  std::vector<int> order(recs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (recs[a].p.x() != recs[b].p.x()) return recs[a].p.x() < recs[b].p.x();
    return recs[a].p.y() < recs[b].p.y();
  });
  const double weld = 1e-9 * hl;
  std::vector<Vec2> uverts;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    VRec& r = recs[order[oi]];
    // search backwards in the x-window for an existing representative
    for (std::size_t ok = oi; ok-- > 0;) {
      const VRec& t = recs[order[ok]];
      if (r.p.x() - t.p.x() > weld) break;
      if (std::abs(r.p.y() - t.p.y()) <= weld) {
        r.id = t.id;
        break;
      }
    }
    if (r.id < 0) {
      r.id = static_cast<int>(uverts.size());
      uverts.push_back(r.p);
    }
  }
  std::vector<std::vector<int>> loops(polys.size());
  for (std::size_t s = 0; s < polys.size(); ++s) loops[s].assign(polys[s].size(), -1);
  for (const VRec& r : recs) loops[r.cell][r.slot] = r.id;
  for (auto& l : loops) {
    std::vector<int> c;
    for (std::size_t q = 0; q < l.size(); ++q)
      if (l[q] != l[(q + 1) % l.size()]) c.push_back(l[q]);
    l = c;
    if (l.size() < 3) throw std::runtime_error("voronoi: cell collapsed during welding");
  }

  // Collapse short edges (near-degenerate Voronoi vertices).  Merged position
  // respects the boundary: corners never move, boundary vertices stay on
  // their side, and collapses across two different sides are skipped.
  const double short_edge = 0.12 * hl;
  const double btol = 1e-9 * hl;
  for (int pass = 0; pass < 6; ++pass) {
    std::vector<int> parent(uverts.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    bool any = false;
    for (const auto& l : loops)
      for (std::size_t q = 0; q < l.size(); ++q) {
        int a = find(l[q]), b = find(l[(q + 1) % l.size()]);
        if (a == b) continue;
        if ((uverts[a] - uverts[b]).norm() >= short_edge) continue;
        const BoundaryClass ca = classify(uverts[a], lo, hi, btol);
        const BoundaryClass cb = classify(uverts[b], lo, hi, btol);
        Vec2 pos;
        if (ca.sides() >= 2 && cb.sides() >= 2) continue;  // two corners
        if (ca.sides() >= 2) pos = uverts[a];
        else if (cb.sides() >= 2) pos = uverts[b];
        else if (ca.sides() == 1 && cb.sides() == 1) {
          const bool same_side = (ca.on_x0 && cb.on_x0) || (ca.on_x1 && cb.on_x1) ||
                                 (ca.on_y0 && cb.on_y0) || (ca.on_y1 && cb.on_y1);
          if (!same_side) continue;
          pos = 0.5 * (uverts[a] + uverts[b]);
        } else if (ca.sides() == 1) pos = uverts[a];
        else if (cb.sides() == 1) pos = uverts[b];
        else pos = 0.5 * (uverts[a] + uverts[b]);
        parent[b] = a;
        uverts[a] = pos;
        any = true;
      }
    if (!any) break;
    for (auto& l : loops) {
      std::vector<int> c;
      for (int v : l) {
        const int r = find(v);
        if (c.empty() || c.back() != r) c.push_back(r);
      }
      while (c.size() > 1 && c.front() == c.back()) c.pop_back();
      l = c;
      if (l.size() < 3) throw std::runtime_error("voronoi: cell collapsed in edge cleanup");
    }
  }

  // Lexicographic renumbering of the used vertices.
  std::vector<char> used(uverts.size(), 0);
  for (const auto& l : loops)
    for (int v : l) used[v] = 1;
  std::vector<int> keep;
  for (std::size_t v = 0; v < uverts.size(); ++v)
    if (used[v]) keep.push_back(static_cast<int>(v));
  std::sort(keep.begin(), keep.end(), [&](int a, int b) {
    if (uverts[a].x() != uverts[b].x()) return uverts[a].x() < uverts[b].x();
    return uverts[a].y() < uverts[b].y();
  });
  std::vector<int> newid(uverts.size(), -1);
  std::vector<Vec2> fverts(keep.size());
  for (std::size_t q = 0; q < keep.size(); ++q) {
    newid[keep[q]] = static_cast<int>(q);
    fverts[q] = uverts[keep[q]];
  }
  for (auto& l : loops)
    for (int& v : l) v = newid[v];

  PolygonalMesh mesh = build_mesh(std::move(fverts), std::move(loops));
  const double want = (hi.x() - lo.x()) * (hi.y() - lo.y());
  if (std::abs(mesh.total_area() - want) > 1e-12 * want)
    throw std::runtime_error("voronoi: cells do not tile the rectangle");
  return mesh;
}

PolygonalMesh voronoi_grid(int n, const Vec2& lo, const Vec2& hi) {
  std::string last = "?";
  for (unsigned attempt = 0; attempt < 8; ++attempt) {
    try {
      PolygonalMesh m = voronoi_grid_attempt(n, lo, hi, 0x5eedu + 977u * attempt + 131u * n);
      if (!validate_mesh(m, 0.05).pass) {
        last = "quality check failed";
        continue;
      }
      return m;
    } catch (const std::exception& e) {
      last = e.what();
    }
  }
  throw std::runtime_error("voronoi generation failed after retries: " + last);
}

}  // namespace

MeshFamily mesh_family_from_string(const std::string& s) {
  if (s == "cartesian") return MeshFamily::cartesian;
  if (s == "triangular") return MeshFamily::triangular;
  if (s == "quadrilateral") return MeshFamily::quadrilateral;
  if (s == "voronoi") return MeshFamily::voronoi;
  throw std::invalid_argument("unknown mesh family: " + s);
}

std::string to_string(MeshFamily f) {
  switch (f) {
    case MeshFamily::cartesian: return "cartesian";
    case MeshFamily::triangular: return "triangular";
    case MeshFamily::quadrilateral: return "quadrilateral";
    case MeshFamily::voronoi: return "voronoi";
  }
  return "?";
}

PolygonalMesh generate_mesh(MeshFamily family, int n, const Vec2& lo, const Vec2& hi) {
  if (n < 1) throw std::invalid_argument("generate_mesh: n >= 1 required");
  if (!(hi.x() > lo.x()) || !(hi.y() > lo.y()))
    throw std::invalid_argument("generate_mesh: degenerate rectangle");
  switch (family) {
    case MeshFamily::cartesian: return tensor_grid(n, lo, hi, false);
    case MeshFamily::quadrilateral: return tensor_grid(n, lo, hi, true);
    case MeshFamily::triangular: return triangular_grid(n, lo, hi);
    case MeshFamily::voronoi: return voronoi_grid(n, lo, hi);
  }
  throw std::logic_error("generate_mesh: unreachable");
}

}  // namespace vemnsch
