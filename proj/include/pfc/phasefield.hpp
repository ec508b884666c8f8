#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "pfc/constitutive.hpp"
#include "pfc/exec.hpp"
#include "pfc/geometry.hpp"
#include "pfc/mesh.hpp"

namespace pfc {

struct PhaseFieldParams {
  double L = 0.0;               // regularization length [m]
  double Gc = 1.0;              // critical fracture energy [J/m^2]
  double init_magnitude = 1e3;  // multiplier on Gc/L for crack initialization
};

/// Per-quadrature-point crack driving force record, monotone in time.
struct HistoryField {
  Eigen::VectorXd values;  // n_elements * 4, ordered (element, quad point)
};

/// Crack surface density gamma(d, grad d) = (d^2/L + L |grad d|^2) / 2.
double surface_density(double d, const Vec2& grad_d, double L);

struct PhaseFieldSystem {
  Eigen::SparseMatrix<double> matrix;  // full-size, constraints not applied
  Eigen::VectorXd rhs;
};

/// Galerkin system for the phase-field equation with g'(d) = -2(1-d):
/// nodal-quadrature (lumped) reaction terms, consistent gradient term.
PhaseFieldSystem assemble_phasefield_system(const Mesh& mesh, const HistoryField& H,
                                            const PhaseFieldParams& pf,
                                            ExecPolicy policy = ExecPolicy::Parallel);

/// Solves the phase-field system with hanging-node constraints applied and
/// optional pinned nodes (d = 1 there).
Eigen::VectorXd solve_phase_field(const Mesh& mesh, const HistoryField& H,
                                  const PhaseFieldParams& pf,
                                  const std::vector<int>& pinned_nodes = {},
                                  ExecPolicy policy = ExecPolicy::Parallel);

/// Borden-style initialization: H = M Gc/L (1 - dist/(L/2)) within L/2 of
/// the crack segments, zero beyond.
HistoryField init_history_for_crack(const Mesh& mesh, const std::vector<Segment>& segments,
                                    const PhaseFieldParams& pf);

/// Deviatoric strain energy psi = G (eps_dev : eps_dev), with the deviator
/// taken from the 3D tensor under plane strain (eps_zz = 0).
double crack_driving_force(const Sym2& eps, const ElasticParams& mat);

/// Pointwise running maximum; field sizes must match.
HistoryField update_history(const HistoryField& H, const Eigen::VectorXd& psi,
                            ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace pfc
