#include "pfc/constitutive.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pfc {

namespace {

constexpr double kOrthoTol = 1e-8;

void check_unit_pair(const Vec2& n, const Vec2& m) {
  if (std::abs(n.norm() - 1.0) > kOrthoTol || std::abs(m.norm() - 1.0) > kOrthoTol ||
      std::abs(n.dot(m)) > kOrthoTol) {
    throw std::invalid_argument("update_stress: (n, m) must be an orthonormal pair");
  }
}

void check_phase(double d) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw std::invalid_argument("phase-field value outside [0, 1]: d = " + std::to_string(d));
  }
}

}  // namespace

const char* to_string(ContactCondition c) {
  switch (c) {
    case ContactCondition::Bulk: return "bulk";
    case ContactCondition::Open: return "open";
    case ContactCondition::Stick: return "stick";
    case ContactCondition::Slip: return "slip";
  }
  return "?";
}

std::pair<double, double> lame_from_engineering(double E, double nu) {
  if (!(E > 0.0)) throw std::invalid_argument("E must be positive");
  if (!(nu > -1.0 && nu < 0.5)) {
    throw std::invalid_argument("nu must lie in (-1, 0.5), got " + std::to_string(nu));
  }
  const double lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  const double G = E / (2.0 * (1.0 + nu));
  return {lambda, G};
}

ElasticParams ElasticParams::from_engineering(double E, double nu) {
  auto [lambda, G] = lame_from_engineering(E, nu);
  return {E, nu, lambda, G};
}

std::pair<double, double> degradation(double d) {
  check_phase(d);
  const double one_md = 1.0 - d;
  return {one_md * one_md, -2.0 * one_md};
}

Sym2 bulk_stress(const Sym2& eps, const ElasticParams& mat) {
  const double lt = mat.lambda * eps.trace();
  return {lt + 2.0 * mat.G * eps.xx, lt + 2.0 * mat.G * eps.yy, 2.0 * mat.G * eps.xy};
}

Tangent elastic_tangent(const ElasticParams& mat) {
  Tangent c = Tangent::Zero();
  c(0, 0) = c(1, 1) = mat.lambda + 2.0 * mat.G;
  c(0, 1) = c(1, 0) = mat.lambda;
  c(2, 2) = mat.G;
  return c;
}

StressState update_stress(const Sym2& eps, double d, const Vec2& n, const Vec2& m,
                          const ElasticParams& mat, const FrictionParams& fric) {
  check_phase(d);
  StressState st;
  st.sigma_zz = mat.lambda * eps.trace();

  if (d == 0.0) {
    st.sigma = bulk_stress(eps, mat);
    st.condition = ContactCondition::Bulk;
    return st;
  }

  check_unit_pair(n, m);
  const Sym2 sig_bulk = bulk_stress(eps, mat);
  const auto [g, gp] = degradation(d);
  (void)gp;
  st.tau_bulk = sig_bulk.nm(n, m);
  st.sigma_n_bulk = sig_bulk.nn(n);

  const double eps_n = eps.nn(n);
  if (eps_n > 0.0) {
    // Gap between the surfaces: the interface system is stress-free.
    st.sigma = g * sig_bulk;
    st.sigma_zz *= g;
    st.condition = ContactCondition::Open;
    return st;
  }

  // In contact. Yield check from the trial (bulk) stress with the
  // compressive contact pressure p_N = -sigma_N.
  const double p_n = -st.sigma_n_bulk;
  const double f = std::abs(st.tau_bulk) - fric.mu * p_n;
  if (f < 0.0) {
    st.sigma = sig_bulk;
    st.condition = ContactCondition::Stick;
    return st;
  }

  const double sgn = (st.tau_bulk < 0.0) ? -1.0 : 1.0;
  const Sym2 nm_sym = Sym2::sym_dyad(n, m) * 2.0;  // n⊗m + m⊗n
  st.sigma = sig_bulk + (1.0 - g) * (fric.mu * p_n - std::abs(st.tau_bulk)) * sgn * nm_sym;
  st.condition = ContactCondition::Slip;
  return st;
}

Tangent tangent(ContactCondition condition, double d, const Vec2& n, const Vec2& m,
                const ElasticParams& mat, const FrictionParams& fric) {
  check_phase(d);
  const Tangent ce = elastic_tangent(mat);
  switch (condition) {
    case ContactCondition::Bulk:
      return ce;
    case ContactCondition::Open: {
      const auto [g, gp] = degradation(d);
      (void)gp;
      return g * ce;
    }
    case ContactCondition::Stick:
      return ce;
    case ContactCondition::Slip: {
      check_unit_pair(n, m);
      const auto [g, gp] = degradation(d);
      (void)gp;
      const Sym2 nm_sym = Sym2::sym_dyad(n, m) * 2.0;  // n⊗m + m⊗n
      const Sym2 nn = Sym2::sym_dyad(n, n);
      // C_f = mu [lambda (n⊗m + m⊗n)⊗1 + 2G (n⊗m + m⊗n)⊗(n⊗n)]
      const Tangent c_f = fric.mu * (mat.lambda * dyad_voigt(nm_sym, Sym2::identity()) +
                                     2.0 * mat.G * dyad_voigt(nm_sym, nn));
      // C_tau = G (n⊗m + m⊗n)⊗(n⊗m + m⊗n)
      const Tangent c_tau = mat.G * dyad_voigt(nm_sym, nm_sym);
      // Derivative of the slip-branch stress for the tau_bulk >= 0 orientation.
      return ce - (1.0 - g) * (c_f + c_tau);
    }
  }
  throw std::invalid_argument("tangent: unknown contact condition");
}

Sym2 amor_stress(const Sym2& eps, double d, const ElasticParams& mat) {
  check_phase(d);
  const auto [g, gp] = degradation(d);
  (void)gp;
  const double K = mat.lambda + mat.G;  // 2D plane-strain bulk modulus
  const double tr = eps.trace();
  const double tr_pos = std::max(tr, 0.0);
  const double tr_neg = std::min(tr, 0.0);
  const Sym2 dev = eps - (0.5 * tr) * Sym2::identity();
  return g * (K * tr_pos * Sym2::identity() + 2.0 * mat.G * dev) +
         K * tr_neg * Sym2::identity();
}

Tangent amor_tangent(const Sym2& eps, double d, const ElasticParams& mat) {
  check_phase(d);
  const auto [g, gp] = degradation(d);
  (void)gp;
  const double K = mat.lambda + mat.G;
  Tangent vol = dyad_voigt(Sym2::identity(), Sym2::identity());
  Tangent dev = Tangent::Zero();
  dev.diagonal() << 1.0, 1.0, 0.5;  // fourth-order symmetric identity
  dev -= 0.5 * vol;
  const double k_fac = (eps.trace() >= 0.0) ? g : 1.0;
  return k_fac * K * vol + g * 2.0 * mat.G * dev;
}

}  // namespace pfc
