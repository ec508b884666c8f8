#include "pfc/solver.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pfc {

namespace {

using Mat38 = Eigen::Matrix<double, 3, 8>;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat88 = Eigen::Matrix<double, 8, 8>;

Mat38 b_matrix(const ShapeEval& se) {
  Mat38 b = Mat38::Zero();
  for (int i = 0; i < 4; ++i) {
    b(0, 2 * i) = se.gradients[i].x();
    b(1, 2 * i + 1) = se.gradients[i].y();
    b(2, 2 * i) = se.gradients[i].y();
    b(2, 2 * i + 1) = se.gradients[i].x();
  }
  return b;
}

Vec8 gather(const Eigen::VectorXd& u, const std::array<int, 4>& nodes) {
  Vec8 ue;
  for (int i = 0; i < 4; ++i) {
    ue[2 * i] = u[2 * nodes[i]];
    ue[2 * i + 1] = u[2 * nodes[i] + 1];
  }
  return ue;
}

}  // namespace

FemProblem::FemProblem(const Mesh& mesh, StressModel model)
    : mesh_(mesh), model_(model), states_(mesh.n_elements() * 4) {
  mats_.assign(mesh.n_elements(), ElasticParams::from_engineering(1.0, 0.0));
  u_full_ = Eigen::VectorXd::Zero(n_dofs());
}

void FemProblem::set_material(const ElasticParams& mat) {
  mats_.assign(mesh_.n_elements(), mat);
}

void FemProblem::set_element_materials(std::vector<ElasticParams> mats) {
  if (static_cast<int>(mats.size()) != mesh_.n_elements()) {
    throw std::invalid_argument("per-element material list size mismatch");
  }
  mats_ = std::move(mats);
}

void FemProblem::set_boundary_conditions(std::vector<BoundaryCondition> bcs, int n_steps) {
  for (const auto& bc : bcs) {
    for (const ComponentSchedule* cs : {&bc.x, &bc.y}) {
      if (cs->active && static_cast<int>(cs->values.size()) < n_steps) {
        throw std::invalid_argument("boundary condition schedule shorter than load steps");
      }
    }
  }
  bcs_ = std::move(bcs);
  n_steps_ = n_steps;
}

void FemProblem::set_reaction_probe(BoundaryId boundary, int component) {
  reaction_boundary_ = boundary;
  reaction_component_ = component;
}

void FemProblem::set_phase(const Eigen::VectorXd& nodal_d) {
  if (nodal_d.size() != mesh_.n_nodes()) {
    throw std::invalid_argument("set_phase: nodal field size mismatch");
  }
  const auto rule = gauss_2x2();
  for (int e = 0; e < mesh_.n_elements(); ++e) {
    const auto& nodes = mesh_.element(e).nodes;
    for (int q = 0; q < 4; ++q) {
      const auto se = mesh_.shape_eval(e, rule[q].xi);
      double dq = 0.0;
      for (int i = 0; i < 4; ++i) dq += se.values[i] * nodal_d[nodes[i]];
      states_[e * 4 + q].d = std::min(1.0, std::max(0.0, dq));
    }
  }
}

void FemProblem::set_vectors(const std::vector<VectorAssignment>& va, const FrictionMap& fric) {
  if (va.size() != states_.size()) {
    throw std::invalid_argument("set_vectors: assignment size mismatch");
  }
  for (std::size_t i = 0; i < va.size(); ++i) {
    states_[i].has_vectors = va[i].assigned;
    if (va[i].assigned) {
      states_[i].n = va[i].n;
      states_[i].m = va[i].m;
      states_[i].arc_s = va[i].arc_s;
      states_[i].mu = fric.at(va[i].arc_s);
    }
  }
}

FemProblem::PointEval FemProblem::evaluate_point(const Sym2& eps, const QuadPointState& qp,
                                                 const ElasticParams& mat,
                                                 std::optional<ContactCondition> contact_override,
                                                 bool want_tangent) const {
  PointEval out;
  if (model_ == StressModel::Amor) {
    out.sigma = amor_stress(eps, qp.d, mat);
    if (want_tangent) out.tangent = amor_tangent(eps, qp.d, mat);
    out.condition = ContactCondition::Bulk;
    return out;
  }
  if (qp.d <= 0.0 || !qp.has_vectors) {
    out.sigma = bulk_stress(eps, mat);
    if (want_tangent) out.tangent = elastic_tangent(mat);
    out.condition = ContactCondition::Bulk;
    return out;
  }
  const FrictionParams fric{qp.mu};
  if (contact_override && eps.nn(qp.n) <= 0.0) {
    // Assumed contact condition for the first iteration of the first step.
    const Sym2 sig_bulk = bulk_stress(eps, mat);
    const double tau = sig_bulk.nm(qp.n, qp.m);
    out.condition = *contact_override;
    if (*contact_override == ContactCondition::Stick) {
      out.sigma = sig_bulk;
      if (want_tangent) out.tangent = tangent(out.condition, qp.d, qp.n, qp.m, mat, fric);
    } else {
      const double p_n = -sig_bulk.nn(qp.n);
      // The assumed slip direction at the virgin (tau = 0) state: sliding of
      // the +n side along -m, the direction these compressive setups take.
      const double sgn = (tau > 0.0) ? 1.0 : -1.0;
      const auto [g, gp] = degradation(qp.d);
      (void)gp;
      const Sym2 nm_sym = Sym2::sym_dyad(qp.n, qp.m) * 2.0;
      out.sigma = sig_bulk + (1.0 - g) * (fric.mu * p_n - std::abs(tau)) * sgn * nm_sym;
      if (want_tangent) {
        const Vec2 m_or = (tau > 0.0) ? qp.m : Vec2(-qp.m);
        out.tangent = tangent(ContactCondition::Slip, qp.d, qp.n, m_or, mat, fric);
      }
    }
    return out;
  }
  const StressState st = update_stress(eps, qp.d, qp.n, qp.m, mat, fric);
  out.sigma = st.sigma;
  out.condition = st.condition;
  if (want_tangent) {
    const Vec2 m_or = (st.tau_bulk < 0.0) ? Vec2(-qp.m) : qp.m;
    out.tangent = tangent(st.condition, qp.d, qp.n, m_or, mat, fric);
  }
  return out;
}

Eigen::VectorXd FemProblem::external_force(int step) const {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n_dofs());
  for (const auto& bc : bcs_) {
    if (bc.kind != BcKind::Traction) continue;
    const double tx = bc.x.active ? bc.x.values[step - 1] : 0.0;
    const double ty = bc.y.active ? bc.y.values[step - 1] : 0.0;
    if (tx == 0.0 && ty == 0.0) continue;
    for (const auto& be : mesh_.boundary_edges()) {
      if (be.marker != bc.boundary) continue;
      const auto& el = mesh_.element(be.element);
      const int a = el.nodes[be.side];
      const int b = el.nodes[(be.side + 1) % 4];
      const double half_len = 0.5 * (mesh_.node(b) - mesh_.node(a)).norm();
      if (bc.x.active) {
        f[2 * a] += tx * half_len;
        f[2 * b] += tx * half_len;
      }
      if (bc.y.active) {
        f[2 * a + 1] += ty * half_len;
        f[2 * b + 1] += ty * half_len;
      }
    }
  }
  return f;
}

Eigen::VectorXd FemProblem::assemble_residual(const Eigen::VectorXd& u_full, int step,
                                              ExecPolicy policy,
                                              std::optional<ContactCondition> contact_override) {
  if (u_full.size() != n_dofs()) throw std::invalid_argument("residual: displacement size");
  const int ne = mesh_.n_elements();
  const int nthreads = (policy == ExecPolicy::Parallel) ? max_threads() : 1;
  std::vector<Eigen::VectorXd> acc(nthreads, Eigen::VectorXd::Zero(n_dofs()));
  std::atomic<int> bad_element{-1};
  const auto rule = gauss_2x2();

#pragma omp parallel for schedule(static) num_threads(nthreads) if (nthreads > 1)
  for (int e = 0; e < ne; ++e) {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    const auto& el = mesh_.element(e);
    const Vec8 ue = gather(u_full, el.nodes);
    Vec8 fint = Vec8::Zero();
    for (int q = 0; q < 4; ++q) {
      const auto se = mesh_.shape_eval(e, rule[q].xi);
      const Mat38 b = b_matrix(se);
      const Sym2 eps = Sym2::from_strain_voigt(b * ue);
      auto pe = evaluate_point(eps, states_[e * 4 + q], mats_[e], contact_override, false);
      states_[e * 4 + q].condition = pe.condition;
      if (!std::isfinite(pe.sigma.xx) || !std::isfinite(pe.sigma.yy) ||
          !std::isfinite(pe.sigma.xy)) {
        bad_element.store(e);
      }
      fint += rule[q].weight * se.jacobian_det * (b.transpose() * pe.sigma.stress_voigt());
    }
    auto& f = acc[tid];
    for (int i = 0; i < 4; ++i) {
      f[2 * el.nodes[i]] += fint[2 * i];
      f[2 * el.nodes[i] + 1] += fint[2 * i + 1];
    }
  }
  if (bad_element.load() >= 0) {
    throw std::runtime_error("non-finite stress during assembly in element " +
                             std::to_string(bad_element.load()));
  }
  Eigen::VectorXd r = external_force(step);
  for (const auto& f : acc) r -= f;
  return r;
}

Eigen::SparseMatrix<double> FemProblem::assemble_jacobian(
    const Eigen::VectorXd& u_full, ExecPolicy policy,
    std::optional<ContactCondition> contact_override) const {
  if (u_full.size() != n_dofs()) throw std::invalid_argument("jacobian: displacement size");
  const int ne = mesh_.n_elements();
  const int nthreads = (policy == ExecPolicy::Parallel) ? max_threads() : 1;
  std::vector<std::vector<Eigen::Triplet<double>>> trips(nthreads);
  for (auto& t : trips) t.reserve((ne / nthreads + 1) * 64);
  const auto rule = gauss_2x2();

#pragma omp parallel for schedule(static) num_threads(nthreads) if (nthreads > 1)
  for (int e = 0; e < ne; ++e) {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    const auto& el = mesh_.element(e);
    const Vec8 ue = gather(u_full, el.nodes);
    Mat88 ke = Mat88::Zero();
    for (int q = 0; q < 4; ++q) {
      const auto se = mesh_.shape_eval(e, rule[q].xi);
      const Mat38 b = b_matrix(se);
      const Sym2 eps = Sym2::from_strain_voigt(b * ue);
      auto pe = evaluate_point(eps, states_[e * 4 + q], mats_[e], contact_override, true);
      ke += rule[q].weight * se.jacobian_det * (b.transpose() * pe.tangent * b);
    }
    std::array<int, 8> dofs;
    for (int i = 0; i < 4; ++i) {
      dofs[2 * i] = 2 * el.nodes[i];
      dofs[2 * i + 1] = 2 * el.nodes[i] + 1;
    }
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        // J = dr/dU = -K
        trips[tid].emplace_back(dofs[i], dofs[j], -ke(i, j));
      }
    }
  }
  std::vector<Eigen::Triplet<double>> all;
  std::size_t total = 0;
  for (const auto& t : trips) total += t.size();
  all.reserve(total);
  for (const auto& t : trips) all.insert(all.end(), t.begin(), t.end());
  Eigen::SparseMatrix<double> jac(n_dofs(), n_dofs());
  jac.setFromTriplets(all.begin(), all.end());
  return jac;
}

std::vector<StressState> FemProblem::evaluate_stresses(const Eigen::VectorXd& u_full,
                                                       ExecPolicy policy) const {
  std::vector<StressState> out(states_.size());
  const int ne = mesh_.n_elements();
  const int nthreads = (policy == ExecPolicy::Parallel) ? max_threads() : 1;
  const auto rule = gauss_2x2();
#pragma omp parallel for schedule(static) num_threads(nthreads) if (nthreads > 1)
  for (int e = 0; e < ne; ++e) {
    const auto& el = mesh_.element(e);
    const Vec8 ue = gather(u_full, el.nodes);
    for (int q = 0; q < 4; ++q) {
      const auto se = mesh_.shape_eval(e, rule[q].xi);
      const Sym2 eps = Sym2::from_strain_voigt(b_matrix(se) * ue);
      const auto& qp = states_[e * 4 + q];
      if (model_ == StressModel::Amor) {
        StressState st;
        st.sigma = amor_stress(eps, qp.d, mats_[e]);
        st.sigma_zz = mats_[e].lambda * eps.trace();
        st.condition = ContactCondition::Bulk;
        out[e * 4 + q] = st;
      } else if (qp.d <= 0.0 || !qp.has_vectors) {
        StressState st;
        st.sigma = bulk_stress(eps, mats_[e]);
        st.sigma_zz = mats_[e].lambda * eps.trace();
        st.condition = ContactCondition::Bulk;
        out[e * 4 + q] = st;
      } else {
        out[e * 4 + q] = update_stress(eps, qp.d, qp.n, qp.m, mats_[e], FrictionParams{qp.mu});
      }
    }
  }
  return out;
}

ConstraintSet FemProblem::step_constraints(int step) const {
  std::map<int, double> dirichlet;
  for (const auto& bc : bcs_) {
    if (bc.kind != BcKind::Displacement) continue;
    std::vector<int> nodes;
    if (bc.at) {
      int best = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (int i = 0; i < mesh_.n_nodes(); ++i) {
        const double dd = (mesh_.node(i) - *bc.at).squaredNorm();
        if (dd < best_dist) {
          best_dist = dd;
          best = i;
        }
      }
      nodes.push_back(best);
    } else {
      nodes = mesh_.boundary_nodes(bc.boundary);
    }
    for (int c = 0; c < 2; ++c) {
      const ComponentSchedule& sched = (c == 0) ? bc.x : bc.y;
      if (!sched.active) continue;
      const double value = sched.values[step - 1];
      for (int n : nodes) {
        auto [it, inserted] = dirichlet.try_emplace(2 * n + c, value);
        if (!inserted && it->second != value) {
          throw std::runtime_error("conflicting Dirichlet values at node " + std::to_string(n));
        }
      }
    }
  }
  return make_constraints(mesh_.n_nodes(), 2, mesh_.constraints(), dirichlet);
}

LoadStepResult FemProblem::newton_solve(int step, ExecPolicy policy) {
  if (step < 1 || step > n_steps_) throw std::invalid_argument("newton_solve: step out of range");
  LoadStepResult res;
  res.step = step;

  const ConstraintSet cs = step_constraints(step);
  Eigen::VectorXd um(cs.n_master());
  for (int dof = 0; dof < cs.n_full; ++dof) {
    if (cs.master_of[dof] >= 0) um[cs.master_of[dof]] = u_full_[dof];
  }
  Eigen::VectorXd u = cs.expand(um);

  std::optional<ContactCondition> override_cond;
  if (step == 1 && model_ == StressModel::Contact) override_cond = config_.initial_contact_guess;

  Eigen::VectorXd r_full = assemble_residual(u, step, policy, override_cond);
  double norm = cs.reduce(r_full).norm();
  res.residual_norms.push_back(norm);
  const double tol = std::max(config_.newton_tol_abs, config_.newton_tol_rel * norm);
  res.converged = norm <= tol;

  std::vector<ContactCondition> prev_conds(states_.size());

  while (!res.converged && res.iterations < config_.max_iter) {
    const auto j_full =
        assemble_jacobian(u, policy, (res.iterations == 0) ? override_cond : std::nullopt);
    const Eigen::SparseMatrix<double> a = cs.reduce_matrix(j_full);
    if (!pattern_analyzed_) {
      lu_.analyzePattern(a);
      pattern_analyzed_ = true;
    }
    lu_.factorize(a);
    if (lu_.info() != Eigen::Success) {
      throw std::runtime_error(
          "Jacobian factorization failed (singular after boundary conditions; "
          "check for unconstrained rigid-body modes)");
    }
    const Eigen::VectorXd rhs = -cs.reduce(r_full);
    const Eigen::VectorXd delta = lu_.solve(rhs);
    um += delta;
    u = cs.expand(um);

    for (std::size_t i = 0; i < states_.size(); ++i) prev_conds[i] = states_[i].condition;
    r_full = assemble_residual(u, step, policy, std::nullopt);
    int changes = 0;
    for (std::size_t i = 0; i < states_.size(); ++i) {
      if (states_[i].condition != prev_conds[i]) ++changes;
    }
    norm = cs.reduce(r_full).norm();
    ++res.iterations;
    res.residual_norms.push_back(norm);
    res.condition_changes.push_back(changes);
    res.converged = norm <= tol;
  }

  u_full_ = u;

  // Reaction on the probed boundary from the unconstrained residual rows.
  double reaction = 0.0;
  for (int n : mesh_.boundary_nodes(reaction_boundary_)) {
    const int dof = 2 * n + reaction_component_;
    if (cs.is_dirichlet[dof]) reaction -= r_full[dof];
  }
  res.reaction = reaction;
  for (const auto& bc : bcs_) {
    if (bc.kind != BcKind::Displacement || bc.boundary != reaction_boundary_) continue;
    const ComponentSchedule& sched = (reaction_component_ == 0) ? bc.x : bc.y;
    if (sched.active) res.prescribed = sched.values[step - 1];
  }
  return res;
}

}  // namespace pfc
