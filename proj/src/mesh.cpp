#include "pfc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pfc {

namespace {

constexpr int kMaxPackLevel = 28;

std::uint64_t pack_cell(const CellKey& k) {
  return (static_cast<std::uint64_t>(k.level) << 58) |
         (static_cast<std::uint64_t>(k.ix) << 29) | static_cast<std::uint64_t>(k.iy);
}

std::uint64_t pack_lattice(std::int64_t gx, std::int64_t gy) {
  return (static_cast<std::uint64_t>(gx) << 32) | static_cast<std::uint64_t>(gy);
}

using LeafSet = std::unordered_map<std::uint64_t, CellKey>;

/// Leaf covering the level-`level` cell (ix, iy), searching this level and
/// coarser ones. Returns nullopt when the region is subdivided finer.
std::optional<CellKey> covering_leaf(const LeafSet& leaves, int level, std::int64_t ix,
                                     std::int64_t iy) {
  for (int l = level; l >= 0; --l) {
    CellKey k{l, ix >> (level - l), iy >> (level - l)};
    if (leaves.count(pack_cell(k))) return k;
  }
  return std::nullopt;
}

struct Splitter {
  LeafSet& leaves;
  std::int64_t base_nx;
  std::int64_t base_ny;
  int max_level;

  void split(const CellKey& k) {
    if (k.level >= max_level) {
      throw std::runtime_error("mesh refinement exceeds maximum level " +
                               std::to_string(max_level) + " at cell (" +
                               std::to_string(k.ix) + ", " + std::to_string(k.iy) +
                               "), level " + std::to_string(k.level));
    }
    // 2:1 balance: coarser edge-neighbors are split first.
    const std::int64_t nx_l = base_nx << k.level;
    const std::int64_t ny_l = base_ny << k.level;
    const std::array<std::array<std::int64_t, 2>, 4> nbrs = {
        {{k.ix - 1, k.iy}, {k.ix + 1, k.iy}, {k.ix, k.iy - 1}, {k.ix, k.iy + 1}}};
    for (const auto& nb : nbrs) {
      if (nb[0] < 0 || nb[0] >= nx_l || nb[1] < 0 || nb[1] >= ny_l) continue;
      auto cover = covering_leaf(leaves, k.level, nb[0], nb[1]);
      while (cover && cover->level < k.level) {
        split(*cover);
        cover = covering_leaf(leaves, k.level, nb[0], nb[1]);
      }
    }
    leaves.erase(pack_cell(k));
    for (int cy = 0; cy < 2; ++cy) {
      for (int cx = 0; cx < 2; ++cx) {
        CellKey child{k.level + 1, 2 * k.ix + cx, 2 * k.iy + cy};
        leaves.emplace(pack_cell(child), child);
      }
    }
  }
};

}  // namespace

std::array<QuadraturePoint, 4> gauss_2x2() {
  const double a = 1.0 / std::sqrt(3.0);
  return {{{{-a, -a}, 1.0}, {{a, -a}, 1.0}, {{a, a}, 1.0}, {{-a, a}, 1.0}}};
}

class MeshBuilder {
 public:
  static Mesh build(const Rect& domain, int nx, int ny, LeafSet leaves) {
    Mesh mesh;
    mesh.domain_ = domain;
    mesh.nx_ = nx;
    mesh.ny_ = ny;

    int lmax = 0;
    for (const auto& [key, cell] : leaves) lmax = std::max(lmax, cell.level);
    mesh.max_level_ = lmax;

    // Deterministic ordering: sweep by position on the finest lattice.
    std::vector<CellKey> cells;
    cells.reserve(leaves.size());
    for (const auto& [key, cell] : leaves) cells.push_back(cell);
    auto fine = [lmax](const CellKey& c) {
      return std::pair<std::int64_t, std::int64_t>(c.ix << (lmax - c.level),
                                                   c.iy << (lmax - c.level));
    };
    std::sort(cells.begin(), cells.end(), [&](const CellKey& a, const CellKey& b) {
      auto fa = fine(a), fb = fine(b);
      if (fa.second != fb.second) return fa.second < fb.second;
      if (fa.first != fb.first) return fa.first < fb.first;
      return a.level < b.level;
    });

    const std::int64_t gnx = static_cast<std::int64_t>(nx) << lmax;
    const std::int64_t gny = static_cast<std::int64_t>(ny) << lmax;
    std::unordered_map<std::uint64_t, int> node_of;
    node_of.reserve(cells.size() * 2);

    auto node_at = [&](std::int64_t gx, std::int64_t gy) {
      auto [it, inserted] = node_of.try_emplace(pack_lattice(gx, gy), 0);
      if (inserted) {
        it->second = static_cast<int>(mesh.nodes_.size());
        mesh.nodes_.emplace_back(
            domain.x0 + domain.width() * (static_cast<double>(gx) / static_cast<double>(gnx)),
            domain.y0 + domain.height() * (static_cast<double>(gy) / static_cast<double>(gny)));
      }
      return it->second;
    };

    mesh.elements_.reserve(cells.size());
    for (const auto& c : cells) {
      const std::int64_t s = std::int64_t{1} << (lmax - c.level);
      const std::int64_t gx = c.ix * s, gy = c.iy * s;
      Element el;
      el.nodes = {node_at(gx, gy), node_at(gx + s, gy), node_at(gx + s, gy + s),
                  node_at(gx, gy + s)};
      el.key = c;
      const int e = static_cast<int>(mesh.elements_.size());
      mesh.elements_.push_back(el);
      mesh.leaf_of_key_.emplace(pack_cell(c), e);
    }

    // Hanging nodes: an existing node at the midpoint of a leaf edge was
    // created by a finer neighbor and is constrained by the edge endpoints.
    // Boundary edges while we are at it.
    for (int e = 0; e < mesh.n_elements(); ++e) {
      const auto& c = mesh.elements_[e].key;
      const std::int64_t s = std::int64_t{1} << (lmax - c.level);
      const std::int64_t gx = c.ix * s, gy = c.iy * s;
      const std::array<std::array<std::int64_t, 2>, 4> corners = {
          {{gx, gy}, {gx + s, gy}, {gx + s, gy + s}, {gx, gy + s}}};
      for (int side = 0; side < 4; ++side) {
        const auto& a = corners[side];
        const auto& b = corners[(side + 1) % 4];
        if (s >= 2) {
          const std::int64_t mx = (a[0] + b[0]) / 2, my = (a[1] + b[1]) / 2;
          auto it = node_of.find(pack_lattice(mx, my));
          if (it != node_of.end()) {
            HangingConstraint hc;
            hc.node = it->second;
            hc.parents = {mesh.elements_[e].nodes[side],
                          mesh.elements_[e].nodes[(side + 1) % 4]};
            mesh.constraints_.push_back(hc);
          }
        }
        const bool on_boundary =
            (side == 0 && gy == 0) || (side == 1 && gx + s == gnx) ||
            (side == 2 && gy + s == gny) || (side == 3 && gx == 0);
        if (on_boundary) {
          static constexpr BoundaryId side_marker[4] = {BoundaryId::Bottom, BoundaryId::Right,
                                                        BoundaryId::Top, BoundaryId::Left};
          mesh.boundary_edges_.push_back({e, side, side_marker[side]});
        }
      }
    }
    return mesh;
  }
};

Mesh build_structured_mesh(const Rect& domain, int nx, int ny) {
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0)) {
    throw std::invalid_argument("build_structured_mesh: domain must have positive area");
  }
  if (nx < 1 || ny < 1) {
    throw std::invalid_argument("build_structured_mesh: nx, ny must be >= 1");
  }
  LeafSet leaves;
  leaves.reserve(static_cast<std::size_t>(nx) * ny);
  for (std::int64_t j = 0; j < ny; ++j) {
    for (std::int64_t i = 0; i < nx; ++i) {
      CellKey k{0, i, j};
      leaves.emplace(pack_cell(k), k);
    }
  }
  return MeshBuilder::build(domain, nx, ny, std::move(leaves));
}

double Mesh::element_size(int e) const {
  const auto& k = elements_[e].key;
  const double hx = domain_.width() / (static_cast<double>(nx_) * (std::int64_t{1} << k.level));
  const double hy = domain_.height() / (static_cast<double>(ny_) * (std::int64_t{1} << k.level));
  return std::max(hx, hy);
}

Rect Mesh::element_rect(int e) const {
  const auto& el = elements_[e];
  const Vec2& a = nodes_[el.nodes[0]];
  const Vec2& c = nodes_[el.nodes[2]];
  return {a.x(), a.y(), c.x(), c.y()};
}

ShapeEval Mesh::shape_eval(int e, const Vec2& xi) const {
  static constexpr double sx[4] = {-1.0, 1.0, 1.0, -1.0};
  static constexpr double sy[4] = {-1.0, -1.0, 1.0, 1.0};
  ShapeEval out;
  Eigen::Matrix2d jac = Eigen::Matrix2d::Zero();
  std::array<Vec2, 4> dref;
  for (int i = 0; i < 4; ++i) {
    out.values[i] = 0.25 * (1.0 + sx[i] * xi.x()) * (1.0 + sy[i] * xi.y());
    dref[i] = {0.25 * sx[i] * (1.0 + sy[i] * xi.y()), 0.25 * sy[i] * (1.0 + sx[i] * xi.x())};
    const Vec2& p = nodes_[elements_[e].nodes[i]];
    jac(0, 0) += p.x() * dref[i].x();
    jac(0, 1) += p.x() * dref[i].y();
    jac(1, 0) += p.y() * dref[i].x();
    jac(1, 1) += p.y() * dref[i].y();
  }
  out.jacobian_det = jac.determinant();
  const Eigen::Matrix2d jinv_t = jac.inverse().transpose();
  for (int i = 0; i < 4; ++i) out.gradients[i] = jinv_t * dref[i];
  return out;
}

std::array<Vec2, 4> Mesh::quad_points_xy(int e) const {
  const Rect r = element_rect(e);
  std::array<Vec2, 4> out;
  const auto rule = gauss_2x2();
  for (int q = 0; q < 4; ++q) {
    out[q] = {r.x0 + 0.5 * (rule[q].xi.x() + 1.0) * r.width(),
              r.y0 + 0.5 * (rule[q].xi.y() + 1.0) * r.height()};
  }
  return out;
}

std::optional<std::pair<int, Vec2>> Mesh::locate(const Vec2& p) const {
  if (!domain_.contains(p)) return std::nullopt;
  for (int l = 0; l <= max_level_; ++l) {
    const std::int64_t nx_l = static_cast<std::int64_t>(nx_) << l;
    const std::int64_t ny_l = static_cast<std::int64_t>(ny_) << l;
    auto clamp = [](std::int64_t v, std::int64_t hi) { return std::min(std::max(v, std::int64_t{0}), hi); };
    const std::int64_t ix =
        clamp(static_cast<std::int64_t>((p.x() - domain_.x0) / domain_.width() * nx_l), nx_l - 1);
    const std::int64_t iy =
        clamp(static_cast<std::int64_t>((p.y() - domain_.y0) / domain_.height() * ny_l), ny_l - 1);
    auto it = leaf_of_key_.find(pack_cell({l, ix, iy}));
    if (it != leaf_of_key_.end()) {
      const Rect r = element_rect(it->second);
      Vec2 xi{2.0 * (p.x() - r.x0) / r.width() - 1.0, 2.0 * (p.y() - r.y0) / r.height() - 1.0};
      xi = xi.cwiseMax(-1.0).cwiseMin(1.0);
      return std::make_pair(it->second, xi);
    }
  }
  return std::nullopt;
}

std::optional<double> Mesh::interpolate(const Eigen::VectorXd& nodal, const Vec2& p) const {
  auto loc = locate(p);
  if (!loc) return std::nullopt;
  const auto se = shape_eval(loc->first, loc->second);
  double v = 0.0;
  for (int i = 0; i < 4; ++i) v += se.values[i] * nodal[elements_[loc->first].nodes[i]];
  return v;
}

std::vector<int> Mesh::boundary_nodes(BoundaryId id) const {
  std::vector<char> flag(nodes_.size(), 0);
  for (const auto& be : boundary_edges_) {
    if (be.marker != id) continue;
    const auto& el = elements_[be.element];
    flag[el.nodes[be.side]] = 1;
    flag[el.nodes[(be.side + 1) % 4]] = 1;
  }
  std::vector<int> out;
  for (int i = 0; i < n_nodes(); ++i) {
    if (flag[i]) out.push_back(i);
  }
  return out;
}

double Mesh::total_area() const {
  double area = 0.0;
  const auto rule = gauss_2x2();
  for (int e = 0; e < n_elements(); ++e) {
    for (const auto& qp : rule) area += qp.weight * shape_eval(e, qp.xi).jacobian_det;
  }
  return area;
}

void Mesh::check_invariants() const {
  const auto rule = gauss_2x2();
  for (int e = 0; e < n_elements(); ++e) {
    for (const auto& qp : rule) {
      if (!(shape_eval(e, qp.xi).jacobian_det > 0.0)) {
        throw std::runtime_error("non-positive Jacobian in element " + std::to_string(e));
      }
    }
  }
  std::vector<char> constrained(nodes_.size(), 0);
  for (const auto& hc : constraints_) constrained[hc.node] = 1;
  for (const auto& hc : constraints_) {
    if (std::abs(hc.weights[0] + hc.weights[1] - 1.0) > 1e-14) {
      throw std::runtime_error("constraint weights do not sum to 1");
    }
    if (constrained[hc.parents[0]] || constrained[hc.parents[1]]) {
      throw std::runtime_error("chained hanging-node constraint detected");
    }
  }
  // 1-irregularity: levels of edge-adjacent leaves differ by at most one.
  for (const auto& [key, e] : leaf_of_key_) {
    const CellKey& k = elements_[e].key;
    const std::int64_t nx_l = static_cast<std::int64_t>(nx_) << k.level;
    const std::int64_t ny_l = static_cast<std::int64_t>(ny_) << k.level;
    const std::array<std::array<std::int64_t, 2>, 4> nbrs = {
        {{k.ix - 1, k.iy}, {k.ix + 1, k.iy}, {k.ix, k.iy - 1}, {k.ix, k.iy + 1}}};
    for (const auto& nb : nbrs) {
      if (nb[0] < 0 || nb[0] >= nx_l || nb[1] < 0 || nb[1] >= ny_l) continue;
      bool ok = false;
      for (int l = k.level + 1; l >= std::max(0, k.level - 1) && !ok; --l) {
        if (l > k.level) {
          // any child-level leaf inside the neighbor region counts as level+1
          for (int cy = 0; cy < 2 && !ok; ++cy) {
            for (int cx = 0; cx < 2 && !ok; ++cx) {
              ok = leaf_of_key_.count(pack_cell({l, 2 * nb[0] + cx, 2 * nb[1] + cy})) > 0;
            }
          }
        } else {
          ok = leaf_of_key_.count(pack_cell(
                   {l, nb[0] >> (k.level - l), nb[1] >> (k.level - l)})) > 0;
        }
      }
      if (!ok) throw std::runtime_error("mesh is not 1-irregular");
    }
  }
}

RefinementResult refine_by_phase_field(const Mesh& mesh, const Eigen::VectorXd& nodal_d,
                                       const RefinementCriterion& criterion, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("refine_by_phase_field: L must be positive");
  if (!(criterion.phase_threshold > 0.0 && criterion.phase_threshold < 1.0)) {
    throw std::invalid_argument("refine_by_phase_field: phase_threshold must lie in (0, 1)");
  }
  if (!(criterion.target_ratio >= 1.0)) {
    throw std::invalid_argument("refine_by_phase_field: target_ratio must be >= 1");
  }
  if (nodal_d.size() != mesh.n_nodes()) {
    throw std::invalid_argument("refine_by_phase_field: nodal_d size mismatch");
  }
  if (criterion.max_level > kMaxPackLevel) {
    throw std::invalid_argument("refine_by_phase_field: max_level too large");
  }

  const double target_size = L / criterion.target_ratio;
  Mesh current = mesh;
  Eigen::VectorXd d = nodal_d;

  for (int pass = 0; pass <= criterion.max_level + 1; ++pass) {
    LeafSet leaves;
    leaves.reserve(current.n_elements());
    std::vector<CellKey> marked;
    for (int e = 0; e < current.n_elements(); ++e) {
      const auto& el = current.element(e);
      leaves.emplace(pack_cell(el.key), el.key);
      if (current.element_size(e) <= target_size * (1.0 + 1e-12)) continue;
      for (int i = 0; i < 4; ++i) {
        if (d[el.nodes[i]] > criterion.phase_threshold) {
          marked.push_back(el.key);
          break;
        }
      }
    }
    if (marked.empty()) break;

    Splitter splitter{leaves, current.base_nx(), current.base_ny(), criterion.max_level};
    for (const auto& k : marked) {
      if (leaves.count(pack_cell(k))) splitter.split(k);
    }
    Mesh refined = MeshBuilder::build(current.domain(), current.base_nx(), current.base_ny(),
                                      std::move(leaves));
    Eigen::VectorXd d_new(refined.n_nodes());
    for (int i = 0; i < refined.n_nodes(); ++i) {
      auto v = current.interpolate(d, refined.node(i));
      d_new[i] = v ? *v : 0.0;
    }
    current = std::move(refined);
    d = std::move(d_new);
  }
  return {std::move(current), std::move(d)};
}

}  // namespace pfc
