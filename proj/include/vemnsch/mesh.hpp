#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vemnsch/geometry.hpp"
#include "vemnsch/monomials.hpp"
#include "vemnsch/quadrature.hpp"

namespace vemnsch {

// Conforming polygonal mesh of a simply connected planar domain.  Cells are
// CCW vertex loops; edges are derived from the loops.  The stored edge
// direction (v0 -> v1) is the direction in which cell_left traverses it, so
// the edge normal rot(t) = (t_y, -t_x) points from cell_left into cell_right.
struct MeshEdge {
  int v0 = -1, v1 = -1;
  int cell_left = -1, cell_right = -1;  // right = -1 on the boundary
};

struct PolygonalMesh {
  std::vector<Vec2> vertices;
  std::vector<std::vector<int>> cells;
  std::vector<MeshEdge> edges;
  std::vector<char> boundary_vertex;
  std::vector<char> boundary_edge;

  // cached geometry
  std::vector<double> cell_area;
  std::vector<double> cell_diameter;
  std::vector<Vec2> cell_centroid;
  std::vector<std::vector<int>> cell_edge_ids;   // edge id of side i (verts i -> i+1)
  std::vector<std::vector<int>> cell_edge_sign;  // +1 if side runs v0 -> v1
  std::vector<double> vertex_h;                  // mean diameter of incident cells

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  double mesh_size() const;  // max cell diameter
  double total_area() const;
};

// Derives edges, boundary flags and cached geometry from vertex/cell data and
// checks the structural invariants (CCW simple cells, each edge in at most
// two cells with opposite directions).  Throws std::runtime_error on
// violations.
PolygonalMesh build_mesh(std::vector<Vec2> vertices, std::vector<std::vector<int>> cells);

enum class MeshFamily { cartesian, triangular, quadrilateral, voronoi };

MeshFamily mesh_family_from_string(const std::string& s);
std::string to_string(MeshFamily f);

// Structured families on the rectangle [lo, hi]:
//  - cartesian: n x n congruent squares/rectangles;
//  - triangular: each cartesian cell split along its diagonal;
//  - quadrilateral: tensor grid with a smooth deterministic interior
//    perturbation of amplitude 0.1 x cell side, vanishing on the boundary;
//  - voronoi: n^2 seeds on a jittered lattice, clipped against bisectors,
//    relaxed by 20 Lloyd sweeps, welded and short-edge-collapsed.
PolygonalMesh generate_mesh(MeshFamily family, int n, const Vec2& lo, const Vec2& hi);

// Quality report against the shape-regularity constant rho: each cell must be
// star-shaped with respect to a disc of radius >= rho h_E (exact kernel
// computation) and have all edge lengths >= rho h_E.
struct MeshQualityReport {
  bool pass = false;
  int n_star_fail = 0;
  int n_edge_fail = 0;
  double min_disc_ratio = 0.0;  // min over cells of (kernel disc radius)/h_E
  double min_edge_ratio = 0.0;  // min over cells of h_e/h_E
  std::vector<char> cell_star_ok;
  std::vector<char> cell_edges_ok;
};
MeshQualityReport validate_mesh(const PolygonalMesh& mesh, double rho);

// Text serialization.  Format:
//   polymesh 1
//   NV NC NE
//   NV lines: x y boundary_flag
//   NC lines: m i1 ... im        (CCW)
//   NE lines: a b cellL cellR    (cellR = -1 on the boundary)
// Coordinates are written with 17 significant digits.
void write_mesh(const PolygonalMesh& mesh, std::ostream& os);
void write_mesh(const PolygonalMesh& mesh, const std::string& path);
PolygonalMesh read_mesh(std::istream& is);
PolygonalMesh read_mesh(const std::string& path);

// Per-cell geometric data packaged for element construction: the vertex loop,
// the monomial frame, one volume rule and one rule per side.  Edge rules are
// parameterized along the stored (global) edge direction; outward normal for
// this cell on side i is edge_sign[i] * edge_n[i].
struct CellGeometry {
  int cell = -1;
  std::vector<Vec2> verts;
  int nv = 0;
  double area = 0, h = 0;
  Vec2 centroid{0, 0};
  MonomialFrame frame;
  std::vector<int> edge_ids;
  std::vector<double> edge_sign;
  std::vector<double> edge_len;
  std::vector<Vec2> edge_t, edge_n;  // global unit tangent/normal of stored edge
  std::vector<double> vert_h;        // h_a at the loop vertices
  QuadRule quad;
  std::vector<EdgeRule> equad;
};
CellGeometry cell_geometry(const PolygonalMesh& mesh, int c, int cell_quad_degree,
                           int edge_quad_degree);

}  // namespace vemnsch
