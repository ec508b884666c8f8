#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace pfc {

using Vec2 = Eigen::Vector2d;

/// Symmetric 2x2 tensor (plane components of stress/strain).
struct Sym2 {
  double xx = 0.0;
  double yy = 0.0;
  double xy = 0.0;

  static Sym2 zero() { return {}; }
  static Sym2 identity() { return {1.0, 1.0, 0.0}; }

  /// sym(a ⊗ b)
  static Sym2 sym_dyad(const Vec2& a, const Vec2& b) {
    return {a.x() * b.x(), a.y() * b.y(), 0.5 * (a.x() * b.y() + a.y() * b.x())};
  }

  double trace() const { return xx + yy; }

  /// Full double contraction A:B (off-diagonal counted twice).
  double contract(const Sym2& o) const { return xx * o.xx + yy * o.yy + 2.0 * xy * o.xy; }

  /// A:(n ⊗ n) = n · A n
  double nn(const Vec2& n) const {
    return xx * n.x() * n.x() + yy * n.y() * n.y() + 2.0 * xy * n.x() * n.y();
  }

  /// A:(n ⊗ m) = n · A m (equals A:(m ⊗ n) by symmetry)
  double nm(const Vec2& n, const Vec2& m) const {
    return xx * n.x() * m.x() + yy * n.y() * m.y() + xy * (n.x() * m.y() + n.y() * m.x());
  }

  double max_abs() const {
    return std::max(std::abs(xx), std::max(std::abs(yy), std::abs(xy)));
  }

  Sym2 operator+(const Sym2& o) const { return {xx + o.xx, yy + o.yy, xy + o.xy}; }
  Sym2 operator-(const Sym2& o) const { return {xx - o.xx, yy - o.yy, xy - o.xy}; }
  Sym2 operator*(double s) const { return {s * xx, s * yy, s * xy}; }

  /// Voigt form for stress-like tensors: [xx, yy, xy].
  Eigen::Vector3d stress_voigt() const { return {xx, yy, xy}; }
  static Sym2 from_stress_voigt(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }

  /// Voigt form for strain-like tensors (engineering shear): [xx, yy, 2xy].
  Eigen::Vector3d strain_voigt() const { return {xx, yy, 2.0 * xy}; }
  static Sym2 from_strain_voigt(const Eigen::Vector3d& v) { return {v[0], v[1], 0.5 * v[2]}; }
};

inline Sym2 operator*(double s, const Sym2& t) { return t * s; }

/// Minor-symmetric fourth-order tensor in Voigt form. Maps engineering-strain
/// vectors [exx, eyy, 2exy] to stress vectors [sxx, syy, sxy].
using Tangent = Eigen::Matrix3d;

/// Voigt form of A ⊗ B acting on symmetric tensors: (A⊗B):eps = A (B:eps).
inline Tangent dyad_voigt(const Sym2& a, const Sym2& b) {
  return a.stress_voigt() * b.stress_voigt().transpose();
}

/// +90 degree rotation.
inline Vec2 rot90(const Vec2& v) { return {-v.y(), v.x()}; }

}  // namespace pfc
