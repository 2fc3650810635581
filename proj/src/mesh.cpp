#include "vemnsch/mesh.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace vemnsch {

double PolygonalMesh::mesh_size() const {
  double h = 0;
  for (double d : cell_diameter) h = std::max(h, d);
  return h;
}

double PolygonalMesh::total_area() const {
  double a = 0;
  for (double v : cell_area) a += v;
  return a;
}

PolygonalMesh build_mesh(std::vector<Vec2> vertices, std::vector<std::vector<int>> cells) {
  PolygonalMesh m;
  m.vertices = std::move(vertices);
  m.cells = std::move(cells);
  const int nv = m.n_vertices();
  const int nc = m.n_cells();

  m.cell_area.resize(nc);
  m.cell_diameter.resize(nc);
  m.cell_centroid.resize(nc);
  m.cell_edge_ids.assign(nc, {});
  m.cell_edge_sign.assign(nc, {});

  for (int c = 0; c < nc; ++c) {
    const auto& loop = m.cells[c];
    if (loop.size() < 3) throw std::runtime_error("build_mesh: cell with fewer than 3 vertices");
    std::vector<Vec2> poly(loop.size());
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const int v = loop[i];
      if (v < 0 || v >= nv) throw std::runtime_error("build_mesh: dangling vertex index");
      poly[i] = m.vertices[v];
    }
    for (std::size_t i = 0; i < loop.size(); ++i)
      for (std::size_t j = i + 1; j < loop.size(); ++j)
        if (loop[i] == loop[j]) throw std::runtime_error("build_mesh: repeated vertex in cell");
    const double area = polygon_signed_area(poly);
    if (area <= 0) throw std::runtime_error("build_mesh: cell not counter-clockwise");
    m.cell_area[c] = area;
    m.cell_diameter[c] = polygon_diameter(poly);
    m.cell_centroid[c] = polygon_centroid(poly);
  }

  // Derive edges: first traversal fixes the stored direction (cell_left).
  std::map<std::pair<int, int>, int> edge_of;
  for (int c = 0; c < nc; ++c) {
    const auto& loop = m.cells[c];
    const int s = static_cast<int>(loop.size());
    m.cell_edge_ids[c].resize(s);
    m.cell_edge_sign[c].resize(s);
    for (int i = 0; i < s; ++i) {
      const int a = loop[i], b = loop[(i + 1) % s];
      const auto key = std::minmax(a, b);
      auto it = edge_of.find(key);
      if (it == edge_of.end()) {
        MeshEdge e;
        e.v0 = a;
        e.v1 = b;
        e.cell_left = c;
        m.edges.push_back(e);
        edge_of.emplace(key, m.n_edges() - 1);
        m.cell_edge_ids[c][i] = m.n_edges() - 1;
        m.cell_edge_sign[c][i] = +1;
      } else {
        MeshEdge& e = m.edges[it->second];
        if (e.cell_right != -1)
          throw std::runtime_error("build_mesh: edge shared by more than two cells");
        if (!(e.v0 == b && e.v1 == a))
          throw std::runtime_error("build_mesh: inconsistent edge orientation between cells");
        e.cell_right = c;
        m.cell_edge_ids[c][i] = it->second;
        m.cell_edge_sign[c][i] = -1;
      }
    }
  }

  m.boundary_edge.assign(m.n_edges(), 0);
  m.boundary_vertex.assign(nv, 0);
  for (int e = 0; e < m.n_edges(); ++e) {
    if (m.edges[e].cell_right == -1) {
      m.boundary_edge[e] = 1;
      m.boundary_vertex[m.edges[e].v0] = 1;
      m.boundary_vertex[m.edges[e].v1] = 1;
    }
  }

  // h_a = mean diameter over incident cells.
  m.vertex_h.assign(nv, 0.0);
  std::vector<int> count(nv, 0);
  for (int c = 0; c < nc; ++c)
    for (int v : m.cells[c]) {
      m.vertex_h[v] += m.cell_diameter[c];
      ++count[v];
    }
  for (int v = 0; v < nv; ++v) {
    if (count[v] == 0) throw std::runtime_error("build_mesh: isolated vertex");
    m.vertex_h[v] /= count[v];
  }
  return m;
}

MeshQualityReport validate_mesh(const PolygonalMesh& mesh, double rho) {
  if (!(rho > 0 && rho < 1)) throw std::invalid_argument("validate_mesh: rho must be in (0,1)");
  MeshQualityReport rep;
  const int nc = mesh.n_cells();
  rep.cell_star_ok.assign(nc, 1);
  rep.cell_edges_ok.assign(nc, 1);
  rep.min_disc_ratio = 1e300;
  rep.min_edge_ratio = 1e300;
  for (int c = 0; c < nc; ++c) {
    const auto& loop = mesh.cells[c];
    std::vector<Vec2> poly(loop.size());
    for (std::size_t i = 0; i < loop.size(); ++i) poly[i] = mesh.vertices[loop[i]];
    const double hE = mesh.cell_diameter[c];

    const InscribedDisc disc = kernel_chebyshev_disc(poly);
    const double disc_ratio = disc.radius / hE;
    rep.min_disc_ratio = std::min(rep.min_disc_ratio, disc_ratio);
    if (!(disc_ratio >= rho)) {
      rep.cell_star_ok[c] = 0;
      ++rep.n_star_fail;
    }

    for (std::size_t i = 0; i < loop.size(); ++i) {
      const double he = (mesh.vertices[loop[(i + 1) % loop.size()]] - mesh.vertices[loop[i]]).norm();
      const double r = he / hE;
      rep.min_edge_ratio = std::min(rep.min_edge_ratio, r);
      if (!(r >= rho) && rep.cell_edges_ok[c]) {
        rep.cell_edges_ok[c] = 0;
        ++rep.n_edge_fail;
      }
    }
  }
  rep.pass = rep.n_star_fail == 0 && rep.n_edge_fail == 0;
  return rep;
}

CellGeometry cell_geometry(const PolygonalMesh& mesh, int c, int cell_quad_degree,
                           int edge_quad_degree) {
  CellGeometry g;
  g.cell = c;
  const auto& loop = mesh.cells[c];
  g.nv = static_cast<int>(loop.size());
  g.verts.resize(g.nv);
  g.vert_h.resize(g.nv);
  for (int i = 0; i < g.nv; ++i) {
    g.verts[i] = mesh.vertices[loop[i]];
    g.vert_h[i] = mesh.vertex_h[loop[i]];
  }
  g.area = mesh.cell_area[c];
  g.h = mesh.cell_diameter[c];
  g.centroid = mesh.cell_centroid[c];
  g.frame = MonomialFrame{g.centroid, g.h};
  g.edge_ids.resize(g.nv);
  g.edge_sign.resize(g.nv);
  g.edge_len.resize(g.nv);
  g.edge_t.resize(g.nv);
  g.edge_n.resize(g.nv);
  g.equad.resize(g.nv);
  for (int i = 0; i < g.nv; ++i) {
    const int e = mesh.cell_edge_ids[c][i];
    g.edge_ids[i] = e;
    g.edge_sign[i] = mesh.cell_edge_sign[c][i];
    const Vec2 a = mesh.vertices[mesh.edges[e].v0];
    const Vec2 b = mesh.vertices[mesh.edges[e].v1];
    const double len = (b - a).norm();
    g.edge_len[i] = len;
    g.edge_t[i] = (b - a) / len;
    g.edge_n[i] = Vec2(g.edge_t[i].y(), -g.edge_t[i].x());
    g.equad[i] = edge_rule(a, b, edge_quad_degree);
  }
  g.quad = polygon_rule(g.verts, cell_quad_degree);
  return g;
}

}  // namespace vemnsch
