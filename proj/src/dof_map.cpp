#include "vemnsch/dof_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vemnsch/phase_element.hpp"
#include "vemnsch/poly1d.hpp"
#include "vemnsch/quadrature.hpp"
#include "vemnsch/velocity_element.hpp"

namespace vemnsch {

DofMaps build_dof_maps(const PolygonalMesh& mesh, int k, int l) {
  DofMaps m;
  m.k = k;
  m.l = l;
  const int khat = std::max(k, 2);
  const int lhat = std::max(l, 3);
  const int u_epb = (k - 1) + (khat - 1);
  const int u_cpb = np(k - 3) + np(k - 1) - 1;
  const int p_epb = (l - 2) + (lhat - 3);
  const int p_cpb = np(l - 4);
  const int NV = mesh.n_vertices(), NC = mesh.n_cells(), NE = mesh.n_edges();

  const int u_edge0 = 2 * NV;
  const int u_cell0 = u_edge0 + NE * u_epb;
  m.n_u = u_cell0 + NC * u_cpb;
  m.n_p = 0;
  m.cell_p.resize(NC);
  for (int c = 0; c < NC; ++c) {
    m.cell_p[c] = m.n_p;
    m.n_p += np(k - 1);
  }
  const int f_edge0 = 3 * NV;
  const int f_cell0 = f_edge0 + NE * p_epb;
  m.n_phi = f_cell0 + NC * p_cpb;

  m.off_p = m.n_u;
  m.off_mu = m.n_u + m.n_p;
  m.off_phi = m.off_mu + 1;
  m.n_total = m.off_phi + m.n_phi;

  m.cell_u.resize(NC);
  m.cell_phi.resize(NC);
  for (int c = 0; c < NC; ++c) {
    const auto& loop = mesh.cells[c];
    const int nv = static_cast<int>(loop.size());
    auto& cu = m.cell_u[c];
    cu.resize(velocity_ndof(k, nv));
    for (int i = 0; i < nv; ++i) {
      cu[2 * i] = 2 * loop[i];
      cu[2 * i + 1] = 2 * loop[i] + 1;
    }
    for (int r = 0; r < nv; ++r) {
      const int e = mesh.cell_edge_ids[c][r];
      for (int j = 0; j < u_epb; ++j)
        cu[2 * nv + r * u_epb + j] = u_edge0 + e * u_epb + j;
    }
    const int loc0 = 2 * nv + nv * u_epb;
    for (int j = 0; j < u_cpb; ++j) cu[loc0 + j] = u_cell0 + c * u_cpb + j;

    auto& cf = m.cell_phi[c];
    cf.resize(phase_ndof(l, nv));
    for (int i = 0; i < nv; ++i) {
      cf[3 * i] = 3 * loop[i];
      cf[3 * i + 1] = 3 * loop[i] + 1;
      cf[3 * i + 2] = 3 * loop[i] + 2;
    }
    for (int r = 0; r < nv; ++r) {
      const int e = mesh.cell_edge_ids[c][r];
      for (int j = 0; j < p_epb; ++j)
        cf[3 * nv + r * p_epb + j] = f_edge0 + e * p_epb + j;
    }
    const int floc0 = 3 * nv + nv * p_epb;
    for (int j = 0; j < p_cpb; ++j) cf[floc0 + j] = f_cell0 + c * p_cpb + j;
  }
  return m;
}

ConstraintMap build_constraints(const PolygonalMesh& mesh, const DofMaps& maps) {
  const int k = maps.k, l = maps.l;
  const int khat = std::max(k, 2);
  const int lhat = std::max(l, 3);
  const int u_epb = (k - 1) + (khat - 1);
  const int p_epb = (l - 2) + (lhat - 3);
  const int NV = mesh.n_vertices(), NE = mesh.n_edges();
  const int u_edge0 = 2 * NV;
  const int f_edge0 = 3 * NV;

  // Boundary-vertex classification: tangent of the containing straight
  // segment, or corner when the incident boundary edges are not collinear.
  std::vector<Vec2> vert_tangent(NV, Vec2(0, 0));
  std::vector<char> vert_corner(NV, 0), vert_seen(NV, 0);
  for (int e = 0; e < NE; ++e) {
    if (!mesh.boundary_edge[e]) continue;
    const Vec2 a = mesh.vertices[mesh.edges[e].v0];
    const Vec2 b = mesh.vertices[mesh.edges[e].v1];
    const Vec2 t = (b - a).normalized();
    for (int v : {mesh.edges[e].v0, mesh.edges[e].v1}) {
      if (!vert_seen[v]) {
        vert_seen[v] = 1;
        vert_tangent[v] = t;
      } else if (std::abs(t.x() * vert_tangent[v].y() - t.y() * vert_tangent[v].x()) >
                 1e-12) {
        vert_corner[v] = 1;
      }
    }
  }

  // Mark fully fixed entries; collect the rotated pairs.
  std::vector<char> fixed(maps.n_total, 0);
  ConstraintMap cm;
  for (int v = 0; v < NV; ++v) {
    if (!mesh.boundary_vertex[v]) continue;
    fixed[2 * v] = 1;
    fixed[2 * v + 1] = 1;
    cm.dirichlet_u.push_back(2 * v);
    cm.dirichlet_u.push_back(2 * v + 1);
  }
  for (int e = 0; e < NE; ++e) {
    if (!mesh.boundary_edge[e]) continue;
    for (int j = 0; j < u_epb; ++j) {
      fixed[u_edge0 + e * u_epb + j] = 1;
      cm.dirichlet_u.push_back(u_edge0 + e * u_epb + j);
    }
    for (int j = 0; j < l - 2; ++j)
      fixed[maps.off_phi + f_edge0 + e * p_epb + j] = 1;
  }
  std::vector<char> rotated(NV, 0);
  for (int v = 0; v < NV; ++v) {
    if (!mesh.boundary_vertex[v]) continue;
    const int gx = maps.off_phi + 3 * v + 1;
    if (vert_corner[v]) {
      fixed[gx] = 1;
      fixed[gx + 1] = 1;
    } else {
      rotated[v] = 1;  // handled below: one free tangential component
      fixed[gx] = 1;   // both raw components leave the plain-identity set
      fixed[gx + 1] = 1;
    }
  }

  std::vector<Eigen::Triplet<double>> trips;
  int col = 0;
  for (int i = 0; i < maps.n_total; ++i) {
    // rotated pairs are emitted when their first row is reached
    if (i >= maps.off_phi) {
      const int lv = i - maps.off_phi;
      if (lv < 3 * NV && lv % 3 == 1 && rotated[lv / 3]) {
        const Vec2 t = vert_tangent[lv / 3];
        trips.emplace_back(i, col, t.x());
        trips.emplace_back(i + 1, col, t.y());
        ++col;
        continue;
      }
      if (lv < 3 * NV && lv % 3 == 2 && rotated[lv / 3]) continue;
    }
    if (fixed[i]) continue;
    trips.emplace_back(i, col, 1.0);
    ++col;
  }
  cm.n_free = col;
  cm.P.resize(maps.n_total, col);
  cm.P.setFromTriplets(trips.begin(), trips.end());
  return cm;
}

Eigen::VectorXd boundary_values(const PolygonalMesh& mesh, const DofMaps& maps,
                                const std::function<Vec2(const Vec2&)>& u) {
  const int k = maps.k;
  const int khat = std::max(k, 2);
  const int u_epb = (k - 1) + (khat - 1);
  const int NV = mesh.n_vertices(), NE = mesh.n_edges();
  const int u_edge0 = 2 * NV;
  Eigen::VectorXd vals = Eigen::VectorXd::Zero(maps.n_total);

  const Eigen::VectorXd tn =
      (k >= 2) ? gauss_lobatto_01(k + 1).segment(1, k - 1).eval() : Eigen::VectorXd(0);
  const Eigen::VectorXd lob = gauss_lobatto_01(khat + 1);
  const Eigen::VectorXd nn = lob.segment(1, khat - 1);

  for (int v = 0; v < NV; ++v) {
    if (!mesh.boundary_vertex[v]) continue;
    const Vec2 uv = u(mesh.vertices[v]);
    vals(2 * v) = uv.x();
    vals(2 * v + 1) = uv.y();
  }
  for (int e = 0; e < NE; ++e) {
    if (!mesh.boundary_edge[e]) continue;
    const Vec2 a = mesh.vertices[mesh.edges[e].v0];
    const Vec2 b = mesh.vertices[mesh.edges[e].v1];
    const Vec2 t = (b - a).normalized();
    const Vec2 n(t.y(), -t.x());
    for (int i = 0; i < k - 1; ++i)
      vals(u_edge0 + e * u_epb + i) = u(a + tn(i) * (b - a)).dot(t);
    for (int i = 0; i < khat - 1; ++i)
      vals(u_edge0 + e * u_epb + (k - 1) + i) = u(a + nn(i) * (b - a)).dot(n);
  }

  // Flux compatibility: the P_khat normal trace on each boundary edge is the
  // Lagrange interpolant at the Gauss-Lobatto nodes; its integral is the
  // weighted node sum with weights = integrals of the nodal basis.
  const Eigen::MatrixXd C = nodal_to_coeff(lob);  // coefficients of nodal basis
  Eigen::VectorXd wnode(khat + 1);
  for (int i = 0; i <= khat; ++i) {
    double s = 0;
    for (int p = 0; p <= khat; ++p) s += C(p, i) / (p + 1);
    wnode(i) = s;
  }
  double flux = 0, corr_weight = 0;
  for (int e = 0; e < NE; ++e) {
    if (!mesh.boundary_edge[e]) continue;
    const Vec2 a = mesh.vertices[mesh.edges[e].v0];
    const Vec2 b = mesh.vertices[mesh.edges[e].v1];
    const double he = (b - a).norm();
    const Vec2 t = (b - a).normalized();
    const Vec2 n(t.y(), -t.x());
    double q = wnode(0) * u(a).dot(n) + wnode(khat) * u(b).dot(n);
    double wint = 0;
    for (int i = 0; i < khat - 1; ++i) {
      q += wnode(1 + i) * vals(u_edge0 + e * u_epb + (k - 1) + i);
      wint += wnode(1 + i);
    }
    flux += he * q;
    corr_weight += he * wint;
  }
  if (corr_weight > 0 && std::abs(flux) > 0) {
    const double beta = -flux / corr_weight;
    for (int e = 0; e < NE; ++e) {
      if (!mesh.boundary_edge[e]) continue;
      for (int i = 0; i < khat - 1; ++i)
        vals(u_edge0 + e * u_epb + (k - 1) + i) += beta;
    }
  }
  return vals;
}

}  // namespace vemnsch
