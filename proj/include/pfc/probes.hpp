#pragma once

#include <functional>

#include "pfc/mesh.hpp"

namespace pfc {

/// Interpolated displacement at a physical point (throws outside the domain).
Vec2 sample_displacement(const Mesh& mesh, const Eigen::VectorXd& u, const Vec2& p);

/// Tangential displacement jump across an interface at `center`: samples the
/// tangential component u·m along the normal line on both sides of the band,
/// fits a line per side over offsets in [a*L, b*L], and extrapolates to the
/// interface. A smooth field yields ~0; a genuine discontinuity yields the
/// jump magnitude.
double tangential_jump(const Mesh& mesh, const Eigen::VectorXd& u, const Vec2& center,
                       const Vec2& n, const Vec2& m, double L, double a = 3.0, double b = 6.0,
                       int points_per_side = 8);

/// Relative L2 difference of two displacement fields over the region where
/// `inside` is true, integrated with mesh_a's quadrature:
/// sqrt(int |u_a - u_b|^2 / int |u_a|^2).
double relative_l2_difference(const Mesh& mesh_a, const Eigen::VectorXd& u_a, const Mesh& mesh_b,
                              const Eigen::VectorXd& u_b,
                              const std::function<bool(const Vec2&)>& inside);

}  // namespace pfc
