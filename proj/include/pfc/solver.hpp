#pragma once

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Sparse>

#include "pfc/constitutive.hpp"
#include "pfc/constraints.hpp"
#include "pfc/crackpath.hpp"
#include "pfc/exec.hpp"
#include "pfc/mesh.hpp"

namespace pfc {

enum class BcKind { Displacement, Traction };

/// Per-component load schedule: value prescribed at step k (1-based) is
/// values[k-1]; inactive components are free.
struct ComponentSchedule {
  bool active = false;
  std::vector<double> values;
};

struct BoundaryCondition {
  BcKind kind = BcKind::Displacement;
  BoundaryId boundary = BoundaryId::Top;
  std::optional<Vec2> at;  // pin the node nearest this point instead of a boundary
  ComponentSchedule x;
  ComponentSchedule y;
};

struct SolverConfig {
  double newton_tol_rel = 1e-9;
  double newton_tol_abs = 0.0;
  int max_iter = 25;
  ContactCondition initial_contact_guess = ContactCondition::Slip;
};

/// Friction coefficient as a function of arc length along the crack polyline.
struct FrictionInterval {
  double s0 = 0.0;
  double s1 = 0.0;
  double mu = 0.0;
};

struct FrictionMap {
  double default_mu = 0.0;
  std::vector<FrictionInterval> intervals;
  double at(double s) const {
    for (const auto& iv : intervals) {
      if (s >= iv.s0 && s <= iv.s1) return iv.mu;
    }
    return default_mu;
  }
};

struct QuadPointState {
  double d = 0.0;
  bool has_vectors = false;
  Vec2 n{0.0, 0.0};
  Vec2 m{0.0, 0.0};
  double mu = 0.0;
  double arc_s = 0.0;
  ContactCondition condition = ContactCondition::Bulk;
};

enum class StressModel { Contact, Amor };

struct LoadStepResult {
  int step = 0;  // 1-based
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_norms;  // [0] initial, [k] after k-th update
  std::vector<int> condition_changes;  // per update, quad points reclassified
  double prescribed = 0.0;
  double reaction = 0.0;
};

/// Momentum balance on a fixed mesh: contact-dependent stress update at the
/// quadrature points, Newton iteration with a direct sparse solve, and
/// hanging-node/Dirichlet elimination.
class FemProblem {
 public:
  FemProblem(const Mesh& mesh, StressModel model);

  void set_material(const ElasticParams& mat);
  void set_element_materials(std::vector<ElasticParams> mats);
  void set_boundary_conditions(std::vector<BoundaryCondition> bcs, int n_steps);
  void set_config(const SolverConfig& cfg) { config_ = cfg; }
  void set_reaction_probe(BoundaryId boundary, int component);

  /// Nodal phase field -> quadrature-point values (clamped to [0, 1]).
  void set_phase(const Eigen::VectorXd& nodal_d);
  void set_vectors(const std::vector<VectorAssignment>& va, const FrictionMap& fric);

  const Mesh& mesh() const { return mesh_; }
  const std::vector<QuadPointState>& states() const { return states_; }
  const Eigen::VectorXd& displacement() const { return u_full_; }
  const SolverConfig& config() const { return config_; }
  const ElasticParams& element_material(int e) const { return mats_[e]; }

  /// External force vector for a load step (tractions only).
  Eigen::VectorXd external_force(int step) const;

  /// Residual r = F_ext - F_int with classification from the current strain;
  /// updates the stored per-point contact conditions. A contact override
  /// forces the given condition on all contacting interface points (used to
  /// seed the first iteration of the first step).
  Eigen::VectorXd assemble_residual(const Eigen::VectorXd& u_full, int step, ExecPolicy policy,
                                    std::optional<ContactCondition> contact_override = {});

  /// Derivative of the residual, J = dr/dU = -K. Same classification rule as
  /// assemble_residual but leaves the stored conditions untouched.
  Eigen::SparseMatrix<double> assemble_jacobian(
      const Eigen::VectorXd& u_full, ExecPolicy policy,
      std::optional<ContactCondition> contact_override = {}) const;

  /// Stress states at all quadrature points for the given displacement.
  std::vector<StressState> evaluate_stresses(const Eigen::VectorXd& u_full,
                                             ExecPolicy policy = ExecPolicy::Parallel) const;

  LoadStepResult newton_solve(int step, ExecPolicy policy = ExecPolicy::Parallel);

  /// Constraint set for a given load step's Dirichlet values.
  ConstraintSet step_constraints(int step) const;

  int n_dofs() const { return 2 * mesh_.n_nodes(); }

 private:
  struct PointEval {
    Sym2 sigma;
    Tangent tangent;
    ContactCondition condition;
  };
  PointEval evaluate_point(const Sym2& eps, const QuadPointState& qp, const ElasticParams& mat,
                           std::optional<ContactCondition> contact_override,
                           bool want_tangent) const;

  const Mesh& mesh_;
  StressModel model_;
  std::vector<ElasticParams> mats_;
  std::vector<QuadPointState> states_;
  std::vector<BoundaryCondition> bcs_;
  int n_steps_ = 0;
  SolverConfig config_;
  BoundaryId reaction_boundary_ = BoundaryId::Top;
  int reaction_component_ = 1;
  Eigen::VectorXd u_full_;
  bool pattern_analyzed_ = false;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
};

}  // namespace pfc
