#pragma once

#include <vector>

#include "pfc/tensor.hpp"

namespace pfc {

struct Segment {
  Vec2 a;
  Vec2 b;
  double length() const { return (b - a).norm(); }
};

/// Euclidean distance from p to the segment, and the clamped projection
/// parameter t in [0, 1].
struct SegmentProjection {
  double distance = 0.0;
  double t = 0.0;
};

SegmentProjection project_to_segment(const Vec2& p, const Segment& s);

double distance_to_segments(const Vec2& p, const std::vector<Segment>& segments);

}  // namespace pfc
