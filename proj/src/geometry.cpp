#include "pfc/geometry.hpp"

#include <limits>

namespace pfc {

SegmentProjection project_to_segment(const Vec2& p, const Segment& s) {
  const Vec2 ab = s.b - s.a;
  const double len2 = ab.squaredNorm();
  SegmentProjection out;
  if (len2 == 0.0) {
    out.t = 0.0;
    out.distance = (p - s.a).norm();
    return out;
  }
  out.t = std::min(1.0, std::max(0.0, (p - s.a).dot(ab) / len2));
  out.distance = (p - (s.a + out.t * ab)).norm();
  return out;
}

double distance_to_segments(const Vec2& p, const std::vector<Segment>& segments) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : segments) best = std::min(best, project_to_segment(p, s).distance);
  return best;
}

}  // namespace pfc
