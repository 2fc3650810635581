#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "fixtures.hpp"

using namespace vemnsch;

namespace {

void check_structure(const PolygonalMesh& m, double area) {
  // Euler formula for a simply connected planar subdivision.
  CHECK(m.n_vertices() - m.n_edges() + m.n_cells() == 1);
  CHECK(m.total_area() == doctest::Approx(area).epsilon(1e-12));
  // Stored-edge conventions: the left cell traverses the edge forward and the
  // oriented normal (t_y, -t_x) times the cell's sign points outward.
  for (int c = 0; c < m.n_cells(); ++c) {
    const Vec2 xc = m.cell_centroid[c];
    for (size_t i = 0; i < m.cell_edge_ids[c].size(); ++i) {
      const MeshEdge& e = m.edges[m.cell_edge_ids[c][i]];
      const double sign = m.cell_edge_sign[c][i];
      CHECK(((sign > 0 && e.cell_left == c) || (sign < 0 && e.cell_right == c)));
      const Vec2 a = m.vertices[e.v0], b = m.vertices[e.v1];
      const Vec2 t = (b - a).normalized();
      const Vec2 n(t.y(), -t.x());
      const Vec2 mid = 0.5 * (a + b);
      CHECK(sign * n.dot(mid - xc) > 0.0);
    }
  }
  // Boundary flags: an edge is boundary iff it has no right cell; its
  // endpoints are boundary vertices.
  for (int e = 0; e < m.n_edges(); ++e) {
    CHECK((m.boundary_edge[e] != 0) == (m.edges[e].cell_right < 0));
    if (m.boundary_edge[e]) {
      CHECK(m.boundary_vertex[m.edges[e].v0] != 0);
      CHECK(m.boundary_vertex[m.edges[e].v1] != 0);
    }
  }
}

}  // namespace

TEST_CASE("build_mesh on hand meshes") {
  PolygonalMesh m = vemtest::two_triangle_mesh();
  CHECK(m.n_cells() == 2);
  CHECK(m.n_edges() == 5);
  check_structure(m, 1.0);
  // The shared diagonal is interior.
  int n_interior = 0;
  for (int e = 0; e < m.n_edges(); ++e)
    if (!m.boundary_edge[e]) ++n_interior;
  CHECK(n_interior == 1);
}

TEST_CASE("build_mesh rejects broken input") {
  // Clockwise cell.
  CHECK_THROWS(build_mesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 2, 1}}));
  // Vertex index out of range.
  CHECK_THROWS(build_mesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 3}}));
  // An edge traversed twice in the same direction (duplicated cell).
  CHECK_THROWS(build_mesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}, {0, 1, 2}}));
}

TEST_CASE("generated families") {
  const Vec2 lo(0, 0), hi(1, 1);
  PolygonalMesh cart = generate_mesh(MeshFamily::cartesian, 4, lo, hi);
  CHECK(cart.n_cells() == 16);
  CHECK(cart.n_vertices() == 25);
  CHECK(cart.n_edges() == 40);
  check_structure(cart, 1.0);

  PolygonalMesh tri = generate_mesh(MeshFamily::triangular, 4, lo, hi);
  CHECK(tri.n_cells() == 32);
  check_structure(tri, 1.0);

  PolygonalMesh quad = generate_mesh(MeshFamily::quadrilateral, 4, lo, hi);
  CHECK(quad.n_cells() == 16);
  check_structure(quad, 1.0);
  // Perturbation is interior-only: corner vertices stay put.
  bool has_corner = false;
  for (const Vec2& v : quad.vertices)
    if (v.norm() < 1e-12) has_corner = true;
  CHECK(has_corner);

  PolygonalMesh vor = generate_mesh(MeshFamily::voronoi, 4, lo, hi);
  CHECK(vor.n_cells() >= 12);
  check_structure(vor, 1.0);

  // Determinism of generation.
  PolygonalMesh vor2 = generate_mesh(MeshFamily::voronoi, 4, lo, hi);
  REQUIRE(vor2.n_vertices() == vor.n_vertices());
  for (int v = 0; v < vor.n_vertices(); ++v)
    CHECK((vor.vertices[v] - vor2.vertices[v]).norm() == 0.0);
}

TEST_CASE("quality validation") {
  const Vec2 lo(0, 0), hi(1, 1);
  CHECK(validate_mesh(generate_mesh(MeshFamily::cartesian, 4, lo, hi), 0.1).pass);
  CHECK(validate_mesh(generate_mesh(MeshFamily::triangular, 4, lo, hi), 0.1).pass);
  CHECK(
      validate_mesh(generate_mesh(MeshFamily::quadrilateral, 8, lo, hi), 0.1).pass);
  CHECK(validate_mesh(generate_mesh(MeshFamily::voronoi, 8, lo, hi), 0.05).pass);

  // A sliver edge must be flagged at rho = 0.1.
  PolygonalMesh bad =
      build_mesh({{0, 0}, {1, 0}, {1.005, 0.005}, {0, 1}}, {{0, 1, 2, 3}});
  const MeshQualityReport rep = validate_mesh(bad, 0.1);
  CHECK_FALSE(rep.pass);
  CHECK(rep.n_edge_fail >= 1);

  // A non-star-shaped cell must be flagged.
  PolygonalMesh ustar = build_mesh(
      {{0, 0}, {3, 0}, {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}},
      {{0, 1, 2, 3, 4, 5, 6, 7}});
  const MeshQualityReport rep2 = validate_mesh(ustar, 0.1);
  CHECK_FALSE(rep2.pass);
  CHECK(rep2.n_star_fail == 1);
}

TEST_CASE("cell geometry consistency") {
  PolygonalMesh m = generate_mesh(MeshFamily::voronoi, 3, {0, 0}, {1, 1});
  for (int c = 0; c < m.n_cells(); ++c) {
    const CellGeometry g = vemtest::cell_geo(m, c, 2, 3);
    CHECK(g.quad.w.sum() == doctest::Approx(g.area).epsilon(1e-12));
    CHECK(g.area == doctest::Approx(m.cell_area[c]));
    CHECK(g.h == doctest::Approx(m.cell_diameter[c]));
    for (int i = 0; i < g.nv; ++i) {
      CHECK(g.equad[i].w.sum() == doctest::Approx(g.edge_len[i]).epsilon(1e-12));
      // Vertex scales are global (shared across incident cells).
      CHECK(g.vert_h[i] == m.vertex_h[m.cells[c][i]]);
      // Outward normal points away from the centroid times the stored sign.
      const Vec2 mid =
          0.5 * (m.vertices[m.edges[g.edge_ids[i]].v0] +
                 m.vertices[m.edges[g.edge_ids[i]].v1]);
      CHECK(g.edge_sign[i] * g.edge_n[i].dot(mid - g.centroid) > 0.0);
    }
  }
}

TEST_CASE("text IO round trip and errors") {
  PolygonalMesh m = generate_mesh(MeshFamily::voronoi, 3, {0, 0}, {1, 1});
  std::stringstream ss;
  write_mesh(m, ss);
  PolygonalMesh r = read_mesh(ss);
  REQUIRE(r.n_vertices() == m.n_vertices());
  REQUIRE(r.n_cells() == m.n_cells());
  REQUIRE(r.n_edges() == m.n_edges());
  for (int v = 0; v < m.n_vertices(); ++v)
    CHECK((r.vertices[v] - m.vertices[v]).norm() == 0.0);
  for (int c = 0; c < m.n_cells(); ++c) CHECK(r.cells[c] == m.cells[c]);

  std::stringstream bad1("wrongmagic 1\n");
  CHECK_THROWS(read_mesh(bad1));
  std::stringstream bad2("polymesh 1\n3 1 3\n0 0 1\n1 0 1\n");  // truncated
  CHECK_THROWS(read_mesh(bad2));
}
