#pragma once

#include <Eigen/Sparse>

#include <functional>
#include <vector>

#include "vemnsch/mesh.hpp"

namespace vemnsch {

// Global numbering.  Velocity block: vertex pairs (2 per vertex), then edge
// blocks ((k-1) tangential + (khat-1) normal values per edge, stored-edge
// order), then per-cell interior blocks (rotated moments, divergence
// moments).  Phase block: vertex triples (value, scaled gradient), then edge
// blocks ((l-2) normal-derivative + (lhat-3) value nodes), then per-cell
// moments.  Pressure block: np(k-1) coefficients per cell.  The full unknown
// vector is laid out as [u | p | mu | phi] with mu the scalar zero-mean
// multiplier.
struct DofMaps {
  int k = 1, l = 2;
  int n_u = 0, n_p = 0, n_phi = 0, n_total = 0;
  int off_p = 0, off_mu = 0, off_phi = 0;  // block offsets in the full vector
  std::vector<std::vector<int>> cell_u;    // per cell: local -> u-block index
  std::vector<std::vector<int>> cell_phi;  // per cell: local -> phi-block index
  std::vector<int> cell_p;                 // per cell: first p-block index
};

DofMaps build_dof_maps(const PolygonalMesh& mesh, int k, int l);

// Linear reduction to unconstrained unknowns: x_full = P x_free + x_fixed.
// P has orthonormal columns, so x_free = P^T x_full and P P^T is the
// projector onto the free subspace.  Constrained DoFs: all velocity DoFs on
// boundary vertices/edges (Dirichlet); phase normal-derivative edge DoFs on
// boundary edges; at boundary vertices the gradient pair is rotated to the
// boundary tangent/normal frame with the normal component fixed (both
// components at corners).
struct ConstraintMap {
  Eigen::SparseMatrix<double> P;  // n_total x n_free
  int n_free = 0;
  std::vector<int> dirichlet_u;   // u-block indices carrying boundary values
};

ConstraintMap build_constraints(const PolygonalMesh& mesh, const DofMaps& maps);

// Full-length vector whose velocity entries on the boundary carry the DoF
// values of the given field, including the flux-compatibility correction: a
// constant is added to the internal normal-node values on boundary edges so
// that the discrete boundary flux of the interpolated data vanishes exactly
// (the perturbation is O(h^{khat+1}) when the field itself has zero total
// flux).  All other entries are zero.
Eigen::VectorXd boundary_values(const PolygonalMesh& mesh, const DofMaps& maps,
                                const std::function<Vec2(const Vec2&)>& u);

}  // namespace vemnsch
