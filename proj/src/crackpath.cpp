#include "pfc/crackpath.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pfc {

std::vector<int> extract_crack_nodes(const Mesh& mesh, const Eigen::VectorXd& nodal_d,
                                     double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("extract_crack_nodes: threshold must lie in (0, 1)");
  }
  std::vector<int> out;
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    if (nodal_d[i] > threshold) out.push_back(i);
  }
  return out;
}

std::vector<int> decimate_nodes(const Mesh& mesh, const std::vector<int>& gamma_tmp,
                                const Eigen::VectorXd& nodal_d, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("decimate_nodes: L must be positive");
  // Process in order of decreasing d, ties broken by lowest node index.
  std::vector<int> order = gamma_tmp;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (nodal_d[a] != nodal_d[b]) return nodal_d[a] > nodal_d[b];
    return a < b;
  });
  std::vector<char> removed(order.size(), 0);
  std::vector<int> selected;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (removed[i]) continue;
    selected.push_back(order[i]);
    const Vec2& p = mesh.node(order[i]);
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (!removed[j] && (mesh.node(order[j]) - p).norm() <= L) removed[j] = 1;
    }
  }
  return selected;
}

CrackPolyline polyline_from_points(const std::vector<Vec2>& points) {
  if (points.size() < 2) {
    throw std::runtime_error("polyline_from_points: need at least 2 points");
  }
  CrackPolyline pl;
  pl.vertices = points;
  pl.arc_offsets.push_back(0.0);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const Vec2 dir = points[i + 1] - points[i];
    if (!(dir.norm() > 0.0)) {
      throw std::runtime_error("polyline_from_points: zero-length segment");
    }
    const Vec2 m = dir.normalized();
    pl.slips.push_back(m);
    pl.normals.push_back(rot90(m));
    pl.arc_offsets.push_back(pl.arc_offsets.back() + dir.norm());
  }
  return pl;
}

CrackPolyline polyline_from_segments(const std::vector<Segment>& segments) {
  if (segments.empty()) {
    throw std::runtime_error("polyline_from_segments: no segments");
  }
  std::vector<Vec2> pts;
  pts.push_back(segments.front().a);
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0 && (segments[i].a - segments[i - 1].b).norm() > 1e-12) {
      throw std::runtime_error("polyline_from_segments: segments do not chain");
    }
    pts.push_back(segments[i].b);
  }
  return polyline_from_points(pts);
}

CrackPolyline build_polyline(const Mesh& mesh, const std::vector<int>& gamma_final,
                             SortAxis axis) {
  if (gamma_final.size() < 2) {
    throw std::runtime_error("build_polyline: crack path degenerate (fewer than 2 nodes)");
  }
  int ax = static_cast<int>(axis);
  if (axis == SortAxis::Auto) {
    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi = -lo;
    for (int n : gamma_final) {
      lo = lo.cwiseMin(mesh.node(n));
      hi = hi.cwiseMax(mesh.node(n));
    }
    ax = (hi.x() - lo.x() >= hi.y() - lo.y()) ? 0 : 1;
  }
  std::vector<int> order = gamma_final;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Vec2& pa = mesh.node(a);
    const Vec2& pb = mesh.node(b);
    if (pa[ax] != pb[ax]) return pa[ax] < pb[ax];
    return pa[1 - ax] < pb[1 - ax];
  });

  CrackPolyline pl;
  pl.vertices.reserve(order.size());
  for (int n : order) pl.vertices.push_back(mesh.node(n));
  const double extent =
      std::abs(pl.vertices.back()[ax] - pl.vertices.front()[ax]);
  pl.arc_offsets.push_back(0.0);
  for (int i = 0; i + 1 < static_cast<int>(pl.vertices.size()); ++i) {
    const Vec2 dir = pl.vertices[i + 1] - pl.vertices[i];
    if (std::abs(dir[ax]) <= 1e-12 * std::max(extent, 1e-300)) {
      throw std::runtime_error("build_polyline: crack path not monotone along sort axis");
    }
    const Vec2 m = dir.normalized();
    pl.slips.push_back(m);
    pl.normals.push_back(rot90(m));
    pl.arc_offsets.push_back(pl.arc_offsets.back() + dir.norm());
  }
  return pl;
}

PolylineProjection nearest_on_polyline(const CrackPolyline& polyline, const Vec2& p) {
  PolylineProjection out;
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < polyline.n_segments(); ++s) {
    const Segment seg = polyline.segment(s);
    const auto proj = project_to_segment(p, seg);
    if (proj.distance < best) {  // ties keep the lower segment index
      best = proj.distance;
      out.segment = s;
      out.distance = proj.distance;
      out.point = seg.a + proj.t * (seg.b - seg.a);
      out.arc_s = polyline.arc_offsets[s] + proj.t * seg.length();
    }
  }
  return out;
}

std::vector<VectorAssignment> assign_unit_vectors(const Mesh& mesh,
                                                  const CrackPolyline& polyline,
                                                  const Eigen::VectorXd& nodal_d,
                                                  ExecPolicy policy) {
  if (polyline.n_segments() < 1) {
    throw std::invalid_argument("assign_unit_vectors: polyline has no segments");
  }
  std::vector<VectorAssignment> out(mesh.n_elements() * 4);
  const int nthreads = (policy == ExecPolicy::Parallel) ? max_threads() : 1;
#pragma omp parallel for schedule(static) num_threads(nthreads) if (nthreads > 1)
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto rule = gauss_2x2();
    const auto pts = mesh.quad_points_xy(e);
    const auto& nodes = mesh.element(e).nodes;
    for (int q = 0; q < 4; ++q) {
      const auto se = mesh.shape_eval(e, rule[q].xi);
      double dq = 0.0;
      for (int i = 0; i < 4; ++i) dq += se.values[i] * nodal_d[nodes[i]];
      if (!(dq > 0.0)) continue;
      VectorAssignment& va = out[e * 4 + q];
      const auto proj = nearest_on_polyline(polyline, pts[q]);
      va.assigned = true;
      va.segment = proj.segment;
      va.n = polyline.normals[proj.segment];
      va.m = polyline.slips[proj.segment];
      va.arc_s = proj.arc_s;
    }
  }
  return out;
}

}  // namespace pfc
