#include "pfc/runner.hpp"

#include <cmath>
#include <stdexcept>

namespace pfc {

namespace {

std::vector<Segment> refinement_segments(const Scenario& s) {
  std::vector<Segment> segs = s.crack_segments;
  segs.insert(segs.end(), s.refine_extra_segments.begin(), s.refine_extra_segments.end());
  return segs;
}

/// Analytic stand-in for the phase field used to drive the initial mesh
/// refinement. Slightly boosted so the band of the solved field (which is
/// wider than exp(-dist/L)) stays inside the refined region.
Eigen::VectorXd synthetic_phase(const Mesh& mesh, const std::vector<Segment>& segs, double L) {
  Eigen::VectorXd d(mesh.n_nodes());
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    const double dist = distance_to_segments(mesh.node(i), segs);
    d[i] = std::min(1.0, 1.5 * std::exp(-dist / L));
  }
  return d;
}

void capture_snapshot(RunResult& result, const FemProblem& problem, int step,
                      const Eigen::VectorXd& d, ExecPolicy policy) {
  StepSnapshot snap;
  snap.step = step;
  snap.u = problem.displacement();
  snap.d = d;
  const auto stresses = problem.evaluate_stresses(problem.displacement(), policy);
  const auto& states = problem.states();
  const int ne = problem.mesh().n_elements();
  snap.cell_condition.resize(ne);
  snap.cell_sigma_n.assign(ne, 0.0);
  snap.cell_tau.assign(ne, 0.0);
  snap.cell_mean_stress.assign(ne, 0.0);
  snap.cell_von_mises.assign(ne, 0.0);
  for (int e = 0; e < ne; ++e) {
    int code = 0;
    double sn = 0.0, tau = 0.0, mean = 0.0, vm = 0.0;
    int n_interface = 0;
    for (int q = 0; q < 4; ++q) {
      const auto& st = stresses[e * 4 + q];
      const auto& qp = states[e * 4 + q];
      code = std::max(code, static_cast<int>(st.condition));
      mean += (st.sigma.xx + st.sigma.yy + st.sigma_zz) / 3.0;
      const double sxx = st.sigma.xx, syy = st.sigma.yy, szz = st.sigma_zz, sxy = st.sigma.xy;
      vm += std::sqrt(0.5 * ((sxx - syy) * (sxx - syy) + (syy - szz) * (syy - szz) +
                             (szz - sxx) * (szz - sxx)) +
                      3.0 * sxy * sxy);
      if (qp.has_vectors && qp.d > 0.0) {
        sn += st.sigma.nn(qp.n);
        tau += st.sigma.nm(qp.n, qp.m);
        ++n_interface;
      }
    }
    snap.cell_condition[e] = code;
    snap.cell_mean_stress[e] = mean / 4.0;
    snap.cell_von_mises[e] = vm / 4.0;
    if (n_interface > 0) {
      snap.cell_sigma_n[e] = sn / n_interface;
      snap.cell_tau[e] = tau / n_interface;
    }
  }
  result.snapshots.push_back(std::move(snap));
}

}  // namespace

std::vector<ElasticParams> assign_materials(const Mesh& mesh, const Scenario& scenario) {
  const ElasticParams base = ElasticParams::from_engineering(scenario.E, scenario.nu);
  std::vector<ElasticParams> mats(mesh.n_elements(), base);
  if (scenario.material_regions.empty()) return mats;
  std::vector<ElasticParams> region_mats;
  region_mats.reserve(scenario.material_regions.size());
  for (const auto& mr : scenario.material_regions) {
    region_mats.push_back(ElasticParams::from_engineering(mr.E, mr.nu));
  }
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Rect r = mesh.element_rect(e);
    const Vec2 c{0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1)};
    for (std::size_t i = 0; i < scenario.material_regions.size(); ++i) {
      if (scenario.material_regions[i].rect.contains(c)) {
        mats[e] = region_mats[i];
        break;
      }
    }
  }
  return mats;
}

Eigen::VectorXd driving_force_field(const Mesh& mesh, const std::vector<ElasticParams>& mats,
                                    const Eigen::VectorXd& u, ExecPolicy policy) {
  Eigen::VectorXd psi(mesh.n_elements() * 4);
  const int nthreads = (policy == ExecPolicy::Parallel) ? max_threads() : 1;
  const auto rule = gauss_2x2();
#pragma omp parallel for schedule(static) num_threads(nthreads) if (nthreads > 1)
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto& nodes = mesh.element(e).nodes;
    for (int q = 0; q < 4; ++q) {
      const auto se = mesh.shape_eval(e, rule[q].xi);
      Sym2 eps;
      for (int i = 0; i < 4; ++i) {
        const Vec2 ui{u[2 * nodes[i]], u[2 * nodes[i] + 1]};
        eps.xx += se.gradients[i].x() * ui.x();
        eps.yy += se.gradients[i].y() * ui.y();
        eps.xy += 0.5 * (se.gradients[i].y() * ui.x() + se.gradients[i].x() * ui.y());
      }
      psi[e * 4 + q] = crack_driving_force(eps, mats[e]);
    }
  }
  return psi;
}

Prepared prepare_run(const Scenario& scenario, ExecPolicy policy) {
  Prepared prep;
  if (scenario.crack_segments.empty()) {
    throw std::invalid_argument("scenario declares no crack segments");
  }
  const auto ref_segs = refinement_segments(scenario);
  const double L = scenario.phasefield.L;

  Mesh mesh = build_structured_mesh(scenario.domain, scenario.base_nx, scenario.base_ny);
  // Pre-refine along the declared segments using the analytic band shape.
  for (int pass = 0; pass < scenario.refinement.max_level + 2; ++pass) {
    const Eigen::VectorXd d_syn = synthetic_phase(mesh, ref_segs, L);
    auto res = refine_by_phase_field(mesh, d_syn, scenario.refinement, L);
    const bool changed = res.mesh.n_elements() != mesh.n_elements();
    mesh = std::move(res.mesh);
    if (!changed) break;
  }

  // Initialize the phase field, then make sure the solved band is resolved.
  HistoryField H = init_history_for_crack(mesh, scenario.crack_segments, scenario.phasefield);
  Eigen::VectorXd d = solve_phase_field(mesh, H, scenario.phasefield, {}, policy);
  for (int pass = 0; pass < scenario.refinement.max_level + 2; ++pass) {
    auto res = refine_by_phase_field(mesh, d, scenario.refinement, L);
    if (res.mesh.n_elements() == mesh.n_elements()) break;
    mesh = std::move(res.mesh);
    H = init_history_for_crack(mesh, scenario.crack_segments, scenario.phasefield);
    d = solve_phase_field(mesh, H, scenario.phasefield, {}, policy);
  }

  prep.materials = assign_materials(mesh, scenario);
  if (scenario.model == StressModel::Contact) {
    const auto gamma_tmp = extract_crack_nodes(mesh, d, 0.98);
    const auto gamma = decimate_nodes(mesh, gamma_tmp, d, L);
    prep.polyline = build_polyline(mesh, gamma, scenario.sort_axis);
    prep.has_polyline = true;
    // Stationary interfaces use the declared geometry for the unit vectors
    // (the ridge-node reconstruction is kept for evolving cracks and for
    // the exported path).
    const CrackPolyline& frames = scenario.use_analytic_vectors()
                                      ? (prep.analytic_polyline =
                                             polyline_from_segments(scenario.crack_segments))
                                      : prep.polyline;
    prep.vectors = assign_unit_vectors(mesh, frames, d, policy);
  }
  prep.mesh = std::move(mesh);
  prep.nodal_d = std::move(d);
  prep.history = std::move(H);
  return prep;
}

namespace {

RunResult run_impl(const Scenario& scenario, ExecPolicy policy) {
  RunResult result;
  result.scenario = scenario;

  Prepared prep = prepare_run(scenario, policy);
  result.mesh = std::move(prep.mesh);
  const Mesh& mesh = result.mesh;

  FemProblem problem(mesh, scenario.model);
  problem.set_element_materials(prep.materials);
  SolverConfig cfg = scenario.solver;
  if (cfg.newton_tol_abs <= 0.0) {
    cfg.newton_tol_abs = 1e-12 * scenario.E * scenario.domain.area();
  }
  problem.set_config(cfg);
  problem.set_boundary_conditions(scenario.expand_bcs(), scenario.steps);
  problem.set_reaction_probe(
      [&] {
        const std::string& b = scenario.output.reaction_boundary;
        if (b == "left") return BoundaryId::Left;
        if (b == "right") return BoundaryId::Right;
        if (b == "bottom") return BoundaryId::Bottom;
        return BoundaryId::Top;
      }(),
      scenario.output.reaction_component);

  Eigen::VectorXd d = prep.nodal_d;
  HistoryField H = std::move(prep.history);
  CrackPolyline polyline = std::move(prep.polyline);
  bool has_polyline = prep.has_polyline;
  std::vector<VectorAssignment> vectors = std::move(prep.vectors);

  problem.set_phase(d);
  if (has_polyline) problem.set_vectors(vectors, scenario.friction);

  const bool propagation = scenario.mode == RunMode::Propagation;
  for (int step = 1; step <= scenario.steps; ++step) {
    if (propagation) {
      const Eigen::VectorXd psi =
          driving_force_field(mesh, prep.materials, problem.displacement(), policy);
      H = update_history(H, psi, policy);
      d = solve_phase_field(mesh, H, scenario.phasefield, {}, policy);
      if (scenario.model == StressModel::Contact) {
        const auto gamma = decimate_nodes(mesh, extract_crack_nodes(mesh, d, 0.98), d,
                                          scenario.phasefield.L);
        polyline = build_polyline(mesh, gamma, scenario.sort_axis);
        has_polyline = true;
        const CrackPolyline& frames =
            scenario.use_analytic_vectors() ? prep.analytic_polyline : polyline;
        vectors = assign_unit_vectors(mesh, frames, d, policy);
        problem.set_vectors(vectors, scenario.friction);
      }
      problem.set_phase(d);
    }
    LoadStepResult res = problem.newton_solve(step, policy);
    result.steps.push_back(res);
    if (!res.converged) {
      result.all_converged = false;
      capture_snapshot(result, problem, step, d, policy);
      break;
    }
    const bool last = step == scenario.steps;
    const bool capture =
        last || (scenario.output.vtk_every > 0 && step % scenario.output.vtk_every == 0);
    if (capture) capture_snapshot(result, problem, step, d, policy);
  }

  result.nodal_d = d;
  result.u = problem.displacement();
  result.polyline = std::move(polyline);
  result.has_polyline = has_polyline;
  result.states = problem.states();
  result.stresses = problem.evaluate_stresses(result.u, policy);
  return result;
}

}  // namespace

RunResult run_stationary(const Scenario& scenario, ExecPolicy policy) {
  if (scenario.mode != RunMode::Stationary) {
    throw std::invalid_argument("run_stationary: scenario mode is not stationary");
  }
  return run_impl(scenario, policy);
}

RunResult run_propagation(const Scenario& scenario, ExecPolicy policy) {
  if (scenario.mode != RunMode::Propagation) {
    throw std::invalid_argument("run_propagation: scenario mode is not propagation");
  }
  return run_impl(scenario, policy);
}

RunResult run_scenario(const Scenario& scenario, ExecPolicy policy) {
  return scenario.mode == RunMode::Stationary ? run_stationary(scenario, policy)
                                              : run_propagation(scenario, policy);
}

}  // namespace pfc
