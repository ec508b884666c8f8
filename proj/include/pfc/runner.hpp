#pragma once

#include <memory>
#include <vector>

#include "pfc/phasefield.hpp"
#include "pfc/scenario.hpp"
#include "pfc/solver.hpp"

namespace pfc {

/// Mesh, phase field and interface data prepared for a run: refined mesh,
/// initialized phase field, crack polyline and per-point unit vectors.
struct Prepared {
  Mesh mesh;
  Eigen::VectorXd nodal_d;
  HistoryField history;
  CrackPolyline polyline;           // extracted ridge path
  CrackPolyline analytic_polyline;  // declared geometry (stationary frames)
  bool has_polyline = false;
  std::vector<VectorAssignment> vectors;
  std::vector<ElasticParams> materials;  // per element
};

Prepared prepare_run(const Scenario& scenario, ExecPolicy policy = ExecPolicy::Parallel);

/// Fields captured for file output at selected steps.
struct StepSnapshot {
  int step = 0;
  Eigen::VectorXd u;
  Eigen::VectorXd d;
  std::vector<int> cell_condition;
  std::vector<double> cell_sigma_n;
  std::vector<double> cell_tau;
  std::vector<double> cell_mean_stress;
  std::vector<double> cell_von_mises;
};

struct RunResult {
  Scenario scenario;
  Mesh mesh;
  Eigen::VectorXd nodal_d;  // final
  Eigen::VectorXd u;        // final full displacement
  std::vector<LoadStepResult> steps;
  std::vector<StepSnapshot> snapshots;
  CrackPolyline polyline;  // final
  bool has_polyline = false;
  std::vector<QuadPointState> states;    // final
  std::vector<StressState> stresses;     // final, at quadrature points
  bool all_converged = true;
};

RunResult run_stationary(const Scenario& scenario, ExecPolicy policy = ExecPolicy::Parallel);
RunResult run_propagation(const Scenario& scenario, ExecPolicy policy = ExecPolicy::Parallel);

/// Dispatches on scenario.mode.
RunResult run_scenario(const Scenario& scenario, ExecPolicy policy = ExecPolicy::Parallel);

/// Per-element material assignment (region lookup by element centroid).
std::vector<ElasticParams> assign_materials(const Mesh& mesh, const Scenario& scenario);

/// Deviatoric strain energy per quadrature point for the current displacement.
Eigen::VectorXd driving_force_field(const Mesh& mesh, const std::vector<ElasticParams>& mats,
                                    const Eigen::VectorXd& u,
                                    ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace pfc
