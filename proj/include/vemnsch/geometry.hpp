#pragma once

#include <Eigen/Dense>

#include <vector>

namespace vemnsch {

using Vec2 = Eigen::Vector2d;

// Planar polygons are stored as counter-clockwise vertex loops without
// repetition of the first vertex.

// Signed area (positive for counter-clockwise loops).
double polygon_signed_area(const std::vector<Vec2>& p);

// Area-weighted centroid. Requires a non-degenerate polygon.
Vec2 polygon_centroid(const std::vector<Vec2>& p);

// Largest pairwise vertex distance.
double polygon_diameter(const std::vector<Vec2>& p);

// Strict point-in-polygon test (crossing number); points on the boundary are
// not guaranteed a stable answer and callers must not rely on them.
bool point_in_polygon(const Vec2& x, const std::vector<Vec2>& p);

// True when x sees every edge of the CCW polygon from its interior side; this
// is exactly the condition for the triangle fan rooted at x to partition the
// polygon. `tol` is an absolute slack on the cross products (scaled by the
// caller).
bool sees_all_edges(const Vec2& x, const std::vector<Vec2>& p, double tol = 0.0);

// Largest inscribed disc whose center sees the whole boundary (Chebyshev disc
// of the polygon kernel). Solved exactly by enumerating active constraint
// triples of the small linear program.  radius <= 0 means the kernel is empty
// (the polygon is not star-shaped).
struct InscribedDisc {
  Vec2 center{0, 0};
  double radius = -1.0;
};
InscribedDisc kernel_chebyshev_disc(const std::vector<Vec2>& p);

// Ear-clipping triangulation of a simple polygon; returns index triples into
// the input loop. Used as fallback when no fan center is available.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& p);

}  // namespace vemnsch
