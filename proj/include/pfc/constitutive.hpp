#pragma once

#include <utility>

#include "pfc/tensor.hpp"

namespace pfc {

/// Isotropic linear elasticity, plane strain.
struct ElasticParams {
  double E = 0.0;       // Young's modulus [Pa]
  double nu = 0.0;      // Poisson's ratio
  double lambda = 0.0;  // first Lame parameter [Pa]
  double G = 0.0;       // shear modulus [Pa]

  static ElasticParams from_engineering(double E, double nu);
};

struct FrictionParams {
  double mu = 0.0;  // friction coefficient, >= 0
};

/// Quadrature-point contact classification.
enum class ContactCondition : int { Bulk = 0, Open = 1, Stick = 2, Slip = 3 };

const char* to_string(ContactCondition c);

/// Result of the quadrature-point stress update.
struct StressState {
  Sym2 sigma;                 // in-plane Cauchy stress [Pa]
  double sigma_zz = 0.0;      // out-of-plane normal stress (plane strain), diagnostics only
  ContactCondition condition = ContactCondition::Bulk;
  double tau_bulk = 0.0;      // trial resolved shear sigma_bulk:(n⊗m) [Pa]
  double sigma_n_bulk = 0.0;  // trial normal stress sigma_bulk:(n⊗n) [Pa]
};

/// lambda = E nu / ((1+nu)(1-2nu)), G = E / (2(1+nu)). Rejects nu outside (-1, 0.5).
std::pair<double, double> lame_from_engineering(double E, double nu);

/// g(d) = (1-d)^2 and g'(d) = -2(1-d). Rejects d outside [0, 1].
std::pair<double, double> degradation(double d);

/// sigma_bulk = lambda tr(eps) 1 + 2G eps (in-plane block, plane strain).
Sym2 bulk_stress(const Sym2& eps, const ElasticParams& mat);

/// Elastic tangent C^e in Voigt form.
Tangent elastic_tangent(const ElasticParams& mat);

/// Contact-condition-dependent stress update at a quadrature point.
/// For d > 0, (n, m) must be orthonormal; the slip correction uses the
/// contact pressure p_N = -sigma_bulk:(n⊗n) and opposes the trial shear.
StressState update_stress(const Sym2& eps, double d, const Vec2& n, const Vec2& m,
                          const ElasticParams& mat, const FrictionParams& fric);

/// Consistent stress-strain tangent for the given contact condition.
/// For Slip, m must be oriented so that the trial shear tau_bulk >= 0
/// (the caller flips m as needed); the returned tangent is the exact
/// derivative of the slip-branch stress and is not major-symmetric.
Tangent tangent(ContactCondition condition, double d, const Vec2& n, const Vec2& m,
                const ElasticParams& mat, const FrictionParams& fric);

/// Volumetric-deviatoric split of Amor et al.: only the positive volumetric
/// and the deviatoric parts are degraded. 2D plane-strain bulk modulus
/// K = lambda + G.
Sym2 amor_stress(const Sym2& eps, double d, const ElasticParams& mat);

/// Tangent of amor_stress (branch chosen by sign of tr eps).
Tangent amor_tangent(const Sym2& eps, double d, const ElasticParams& mat);

}  // namespace pfc
