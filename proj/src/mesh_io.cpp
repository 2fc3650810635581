#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vemnsch/mesh.hpp"

namespace vemnsch {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw std::runtime_error("mesh parse error at line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_mesh(const PolygonalMesh& mesh, std::ostream& os) {
  char buf[128];
  os << "polymesh 1\n";
  os << mesh.n_vertices() << ' ' << mesh.n_cells() << ' ' << mesh.n_edges() << '\n';
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %d\n", mesh.vertices[v].x(), mesh.vertices[v].y(),
                  int(mesh.boundary_vertex[v]));
    os << buf;
  }
  for (const auto& loop : mesh.cells) {
    os << loop.size();
    for (int v : loop) os << ' ' << v;
    os << '\n';
  }
  for (const auto& e : mesh.edges)
    os << e.v0 << ' ' << e.v1 << ' ' << e.cell_left << ' ' << e.cell_right << '\n';
}

void write_mesh(const PolygonalMesh& mesh, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_mesh(mesh, os);
}

PolygonalMesh read_mesh(std::istream& is) {
  int lineno = 0;
  std::string line;
  auto next_line = [&]() -> std::istringstream {
    while (std::getline(is, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return std::istringstream(line);
    }
    parse_fail(lineno, "unexpected end of file");
  };

  {
    auto ls = next_line();
    std::string magic;
    int ver = 0;
    if (!(ls >> magic >> ver) || magic != "polymesh" || ver != 1)
      parse_fail(lineno, "expected header 'polymesh 1'");
  }
  int nv = 0, nc = 0, ne = 0;
  {
    auto ls = next_line();
    if (!(ls >> nv >> nc >> ne) || nv < 3 || nc < 1 || ne < 3) parse_fail(lineno, "malformed counts");
  }
  std::vector<Vec2> verts(nv);
  std::vector<int> bflag(nv);
  for (int v = 0; v < nv; ++v) {
    auto ls = next_line();
    if (!(ls >> verts[v].x() >> verts[v].y() >> bflag[v])) parse_fail(lineno, "malformed vertex");
  }
  std::vector<std::vector<int>> cells(nc);
  for (int c = 0; c < nc; ++c) {
    auto ls = next_line();
    int m = 0;
    if (!(ls >> m) || m < 3) parse_fail(lineno, "malformed cell size");
    cells[c].resize(m);
    for (int q = 0; q < m; ++q) {
      if (!(ls >> cells[c][q])) parse_fail(lineno, "malformed cell");
      if (cells[c][q] < 0 || cells[c][q] >= nv) parse_fail(lineno, "dangling index");
    }
  }
  struct ERec {
    int v0, v1, cl, cr;
  };
  std::vector<ERec> erecs(ne);
  const int cell_line_base = lineno;
  for (int e = 0; e < ne; ++e) {
    auto ls = next_line();
    if (!(ls >> erecs[e].v0 >> erecs[e].v1 >> erecs[e].cl >> erecs[e].cr))
      parse_fail(lineno, "malformed edge");
    if (erecs[e].v0 < 0 || erecs[e].v0 >= nv || erecs[e].v1 < 0 || erecs[e].v1 >= nv ||
        erecs[e].cl < 0 || erecs[e].cl >= nc || erecs[e].cr < -1 || erecs[e].cr >= nc)
      parse_fail(lineno, "dangling index");
  }

  PolygonalMesh mesh;
  try {
    mesh = build_mesh(std::move(verts), std::move(cells));
  } catch (const std::exception& ex) {
    parse_fail(cell_line_base, ex.what());
  }

  // Cross-check the serialized edge table and boundary flags against the
  // derived connectivity.
  if (mesh.n_edges() != ne) parse_fail(lineno, "edge count does not match cell connectivity");
  for (int e = 0; e < ne; ++e) {
    const MeshEdge& d = mesh.edges[e];
    const ERec& r = erecs[e];
    if (d.v0 != r.v0 || d.v1 != r.v1 || d.cell_left != r.cl || d.cell_right != r.cr)
      parse_fail(lineno, "edge record " + std::to_string(e) + " does not match connectivity");
  }
  for (int v = 0; v < nv; ++v)
    if (int(mesh.boundary_vertex[v]) != bflag[v])
      parse_fail(lineno, "boundary flag mismatch at vertex " + std::to_string(v));
  return mesh;
}

PolygonalMesh read_mesh(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open mesh file: " + path);
  return read_mesh(is);
}

}  // namespace vemnsch
