#pragma once

#include <vector>

#include "pfc/exec.hpp"
#include "pfc/geometry.hpp"
#include "pfc/mesh.hpp"

namespace pfc {

/// Piecewise-linear crack path with per-segment unit normal and slip vectors.
struct CrackPolyline {
  std::vector<Vec2> vertices;       // ordered along the sort axis
  std::vector<Vec2> normals;        // per segment, +90 deg rotation of slip
  std::vector<Vec2> slips;          // per segment, normalized direction
  std::vector<double> arc_offsets;  // cumulative length at each vertex

  int n_segments() const { return static_cast<int>(vertices.size()) - 1; }
  Segment segment(int i) const { return {vertices[i], vertices[i + 1]}; }
  double length() const { return arc_offsets.empty() ? 0.0 : arc_offsets.back(); }
};

enum class SortAxis : int { X = 0, Y = 1, Auto = -1 };

/// Nodes with d strictly above the threshold.
std::vector<int> extract_crack_nodes(const Mesh& mesh, const Eigen::VectorXd& nodal_d,
                                     double threshold);

/// Greedy thinning: repeatedly keep the remaining node of largest d (ties by
/// lowest node index) and drop all nodes within distance L of it.
std::vector<int> decimate_nodes(const Mesh& mesh, const std::vector<int>& gamma_tmp,
                                const Eigen::VectorXd& nodal_d, double L);

/// Sorts the nodes along the chosen axis (Auto picks the axis of largest
/// extent) and connects them. Throws for fewer than 2 nodes or a chain that
/// is not monotone along the sort axis.
CrackPolyline build_polyline(const Mesh& mesh, const std::vector<int>& gamma_final,
                             SortAxis axis = SortAxis::Auto);

/// Polyline through the given points in the given order (no sorting).
CrackPolyline polyline_from_points(const std::vector<Vec2>& points);

/// Polyline from declared crack segments; consecutive segments must chain
/// (the next segment starts where the previous one ends).
CrackPolyline polyline_from_segments(const std::vector<Segment>& segments);

/// Unit vectors assigned to a quadrature point from its nearest segment.
struct VectorAssignment {
  bool assigned = false;
  Vec2 n{0.0, 0.0};
  Vec2 m{0.0, 0.0};
  int segment = -1;
  double arc_s = 0.0;  // arc-length coordinate of the nearest point
};

/// Nearest point on the polyline; exact distance ties go to the lower
/// segment index.
struct PolylineProjection {
  int segment = -1;
  double distance = 0.0;
  double arc_s = 0.0;
  Vec2 point{0.0, 0.0};
};

PolylineProjection nearest_on_polyline(const CrackPolyline& polyline, const Vec2& p);

/// Per-quadrature-point (element-major, 4 per element) nearest-segment
/// assignment for points where the interpolated phase field is positive.
std::vector<VectorAssignment> assign_unit_vectors(const Mesh& mesh,
                                                  const CrackPolyline& polyline,
                                                  const Eigen::VectorXd& nodal_d,
                                                  ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace pfc
