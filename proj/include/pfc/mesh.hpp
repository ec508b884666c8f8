#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "pfc/tensor.hpp"

namespace pfc {

/// Axis-aligned rectangle.
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool contains(const Vec2& p) const {
    return p.x() >= x0 && p.x() <= x1 && p.y() >= y0 && p.y() <= y1;
  }
};

enum class BoundaryId : int { Left = 0, Right = 1, Bottom = 2, Top = 3 };

/// Quadtree cell: global cell indices (ix, iy) on the level-`level` grid,
/// which has (nx * 2^level) x (ny * 2^level) cells over the domain.
struct CellKey {
  int level = 0;
  std::int64_t ix = 0;
  std::int64_t iy = 0;
  bool operator==(const CellKey&) const = default;
};

struct Element {
  std::array<int, 4> nodes;  // counterclockwise: (0,0),(1,0),(1,1),(0,1) corners
  CellKey key;
  int region = 0;  // material region index
};

/// Hanging node expressed as the average of its two edge-endpoint parents.
struct HangingConstraint {
  int node = -1;
  std::array<int, 2> parents{-1, -1};
  std::array<double, 2> weights{0.5, 0.5};
};

struct BoundaryEdge {
  int element = -1;
  int side = -1;  // 0 bottom, 1 right, 2 top, 3 left (local)
  BoundaryId marker = BoundaryId::Left;
};

struct ShapeEval {
  std::array<double, 4> values;
  std::array<Vec2, 4> gradients;  // physical-space gradients
  double jacobian_det = 0.0;
};

struct QuadraturePoint {
  Vec2 xi;
  double weight;
};

/// 2x2 Gauss rule on the reference square [-1,1]^2.
std::array<QuadraturePoint, 4> gauss_2x2();

class Mesh {
 public:
  Mesh() = default;

  int n_nodes() const { return static_cast<int>(nodes_.size()); }
  int n_elements() const { return static_cast<int>(elements_.size()); }
  const Vec2& node(int i) const { return nodes_[i]; }
  const Element& element(int e) const { return elements_[e]; }
  const std::vector<Vec2>& nodes() const { return nodes_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<HangingConstraint>& constraints() const { return constraints_; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }
  const Rect& domain() const { return domain_; }
  int base_nx() const { return nx_; }
  int base_ny() const { return ny_; }
  int max_level() const { return max_level_; }

  /// Edge length of element e (elements are squares up to base-cell aspect).
  double element_size(int e) const;
  Rect element_rect(int e) const;

  /// Shape functions, physical gradients and |J| at reference point xi.
  ShapeEval shape_eval(int e, const Vec2& xi) const;

  /// Physical coordinates of the quadrature points of element e.
  std::array<Vec2, 4> quad_points_xy(int e) const;

  /// Element containing p plus its reference coordinates; nullopt outside.
  std::optional<std::pair<int, Vec2>> locate(const Vec2& p) const;

  /// Interpolate a nodal field at a physical point (nullopt outside domain).
  std::optional<double> interpolate(const Eigen::VectorXd& nodal, const Vec2& p) const;

  /// Nodes lying on a tagged boundary side.
  std::vector<int> boundary_nodes(BoundaryId id) const;

  double total_area() const;

  /// Validates positive Jacobians, constraint weight sums, and 1-irregularity.
  void check_invariants() const;

 private:
  friend class MeshBuilder;

  std::vector<Vec2> nodes_;
  std::vector<Element> elements_;
  std::vector<HangingConstraint> constraints_;
  std::vector<BoundaryEdge> boundary_edges_;
  Rect domain_;
  int nx_ = 0, ny_ = 0;
  int max_level_ = 0;
  std::unordered_map<std::uint64_t, int> leaf_of_key_;  // packed key -> element
};

struct RefinementCriterion {
  double phase_threshold = 0.1;  // refine around nodes with d above this
  double target_ratio = 4.0;     // refine until element size <= L / target_ratio
  int max_level = 12;
};

/// Uniform nx x ny quadrilateral mesh over the domain.
Mesh build_structured_mesh(const Rect& domain, int nx, int ny);

struct RefinementResult {
  Mesh mesh;
  Eigen::VectorXd nodal_values;  // input field carried onto the new nodes
};

/// Quadtree refinement around nodes where nodal_d exceeds the threshold,
/// until those elements reach size <= L / target_ratio. The result is
/// 2:1 balanced and nodal_d is interpolated onto the new mesh.
RefinementResult refine_by_phase_field(const Mesh& mesh, const Eigen::VectorXd& nodal_d,
                                       const RefinementCriterion& criterion, double L);

}  // namespace pfc
