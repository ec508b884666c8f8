#include "pfc/probes.hpp"

#include <stdexcept>

namespace pfc {

Vec2 sample_displacement(const Mesh& mesh, const Eigen::VectorXd& u, const Vec2& p) {
  auto loc = mesh.locate(p);
  if (!loc) throw std::invalid_argument("sample_displacement: point outside the domain");
  const auto se = mesh.shape_eval(loc->first, loc->second);
  const auto& nodes = mesh.element(loc->first).nodes;
  Vec2 out{0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    out.x() += se.values[i] * u[2 * nodes[i]];
    out.y() += se.values[i] * u[2 * nodes[i] + 1];
  }
  return out;
}

namespace {

/// Least-squares line fit through (x_i, y_i); returns value at x = 0.
double extrapolate_to_zero(const std::vector<double>& xs, const std::vector<double>& ys) {
  const int n = static_cast<int>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  return intercept;
}

}  // namespace

double tangential_jump(const Mesh& mesh, const Eigen::VectorXd& u, const Vec2& center,
                       const Vec2& n, const Vec2& m, double L, double a, double b,
                       int points_per_side) {
  std::vector<double> xs_pos, ys_pos, xs_neg, ys_neg;
  for (int k = 0; k < points_per_side; ++k) {
    const double off = (a + (b - a) * k / (points_per_side - 1)) * L;
    const Vec2 p_pos = center + off * n;
    const Vec2 p_neg = center - off * n;
    xs_pos.push_back(off);
    ys_pos.push_back(sample_displacement(mesh, u, p_pos).dot(m));
    xs_neg.push_back(-off);
    ys_neg.push_back(sample_displacement(mesh, u, p_neg).dot(m));
  }
  return extrapolate_to_zero(xs_pos, ys_pos) - extrapolate_to_zero(xs_neg, ys_neg);
}

double relative_l2_difference(const Mesh& mesh_a, const Eigen::VectorXd& u_a, const Mesh& mesh_b,
                              const Eigen::VectorXd& u_b,
                              const std::function<bool(const Vec2&)>& inside) {
  double num = 0.0, den = 0.0;
  const auto rule = gauss_2x2();
  for (int e = 0; e < mesh_a.n_elements(); ++e) {
    const auto pts = mesh_a.quad_points_xy(e);
    for (int q = 0; q < 4; ++q) {
      if (!inside(pts[q])) continue;
      const auto se = mesh_a.shape_eval(e, rule[q].xi);
      const auto& nodes = mesh_a.element(e).nodes;
      Vec2 ua{0.0, 0.0};
      for (int i = 0; i < 4; ++i) {
        ua.x() += se.values[i] * u_a[2 * nodes[i]];
        ua.y() += se.values[i] * u_a[2 * nodes[i] + 1];
      }
      const Vec2 ub = sample_displacement(mesh_b, u_b, pts[q]);
      const double w = rule[q].weight * se.jacobian_det;
      num += w * (ua - ub).squaredNorm();
      den += w * ua.squaredNorm();
    }
  }
  if (den == 0.0) throw std::runtime_error("relative_l2_difference: zero reference norm");
  return std::sqrt(num / den);
}

}  // namespace pfc
