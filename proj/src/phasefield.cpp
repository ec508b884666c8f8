#include "pfc/phasefield.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pfc/constraints.hpp"

namespace pfc {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

double surface_density(double d, const Vec2& grad_d, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("surface_density: L must be positive");
  return 0.5 * (d * d / L + L * grad_d.squaredNorm());
}

namespace {

struct ElementContribution {
  std::array<int, 4> nodes;
  Eigen::Matrix4d a;
  Eigen::Vector4d b;
};

ElementContribution phasefield_element(const Mesh& mesh, const HistoryField& H,
                                       const PhaseFieldParams& pf, int e) {
  ElementContribution out;
  out.nodes = mesh.element(e).nodes;
  out.a.setZero();
  out.b.setZero();
  const auto rule = gauss_2x2();
  for (int q = 0; q < 4; ++q) {
    const auto se = mesh.shape_eval(e, rule[q].xi);
    const double w = rule[q].weight * se.jacobian_det;
    const double Hq = H.values[e * 4 + q];
    // Reaction terms by nodal quadrature: Gauss point q lies in corner q's
    // quadrant, so its H value feeds that corner. Keeps d within [0, 1].
    out.a(q, q) += w * (2.0 * Hq + pf.Gc / pf.L);
    out.b(q) += w * 2.0 * Hq;
    // Gradient term, consistent.
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        out.a(i, j) += w * pf.Gc * pf.L * se.gradients[i].dot(se.gradients[j]);
      }
    }
  }
  return out;
}

}  // namespace

PhaseFieldSystem assemble_phasefield_system(const Mesh& mesh, const HistoryField& H,
                                            const PhaseFieldParams& pf, ExecPolicy policy) {
  if (!(pf.L > 0.0) || !(pf.Gc > 0.0)) {
    throw std::invalid_argument("phase-field parameters must be positive");
  }
  if (H.values.size() != mesh.n_elements() * 4) {
    throw std::invalid_argument("history field size does not match mesh quadrature points");
  }
  const int n = mesh.n_nodes();
  PhaseFieldSystem sys;
  sys.rhs = Eigen::VectorXd::Zero(n);

  const int nthreads = (policy == ExecPolicy::Parallel) ? max_threads() : 1;
  std::vector<std::vector<Eigen::Triplet<double>>> trips(nthreads);
  std::vector<Eigen::VectorXd> rhs_acc(nthreads, Eigen::VectorXd::Zero(n));

#pragma omp parallel for schedule(static) num_threads(nthreads) if (nthreads > 1)
  for (int e = 0; e < mesh.n_elements(); ++e) {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    const auto ec = phasefield_element(mesh, H, pf, e);
    for (int i = 0; i < 4; ++i) {
      rhs_acc[tid][ec.nodes[i]] += ec.b(i);
      for (int j = 0; j < 4; ++j) {
        if (ec.a(i, j) != 0.0) trips[tid].emplace_back(ec.nodes[i], ec.nodes[j], ec.a(i, j));
      }
    }
  }
  std::vector<Eigen::Triplet<double>> all;
  std::size_t total = 0;
  for (const auto& t : trips) total += t.size();
  all.reserve(total);
  for (const auto& t : trips) all.insert(all.end(), t.begin(), t.end());
  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(all.begin(), all.end());
  for (const auto& r : rhs_acc) sys.rhs += r;
  return sys;
}

Eigen::VectorXd solve_phase_field(const Mesh& mesh, const HistoryField& H,
                                  const PhaseFieldParams& pf,
                                  const std::vector<int>& pinned_nodes, ExecPolicy policy) {
  const auto sys = assemble_phasefield_system(mesh, H, pf, policy);
  std::map<int, double> dirichlet;
  for (int n : pinned_nodes) dirichlet[n] = 1.0;
  const auto cs = make_constraints(mesh.n_nodes(), 1, mesh.constraints(), dirichlet);
  const Eigen::SparseMatrix<double> a = cs.reduce_matrix(sys.matrix);
  const Eigen::VectorXd b = cs.reduce_rhs(sys.matrix, sys.rhs);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("phase-field system factorization failed (singular system?)");
  }
  const Eigen::VectorXd dm = solver.solve(b);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("phase-field system solve failed");
  }
  return cs.expand(dm);
}

HistoryField init_history_for_crack(const Mesh& mesh, const std::vector<Segment>& segments,
                                    const PhaseFieldParams& pf) {
  HistoryField H;
  H.values = Eigen::VectorXd::Zero(mesh.n_elements() * 4);
  if (segments.empty()) return H;
  const double hmax = pf.init_magnitude * pf.Gc / pf.L;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto pts = mesh.quad_points_xy(e);
    for (int q = 0; q < 4; ++q) {
      const double dist = distance_to_segments(pts[q], segments);
      H.values[e * 4 + q] = hmax * std::max(0.0, 1.0 - dist / (0.5 * pf.L));
    }
  }
  return H;
}

double crack_driving_force(const Sym2& eps, const ElasticParams& mat) {
  const double tr3 = eps.trace();  // eps_zz = 0 under plane strain
  const double m = tr3 / 3.0;
  const double dxx = eps.xx - m;
  const double dyy = eps.yy - m;
  const double dzz = -m;
  return mat.G * (dxx * dxx + dyy * dyy + dzz * dzz + 2.0 * eps.xy * eps.xy);
}

HistoryField update_history(const HistoryField& H, const Eigen::VectorXd& psi,
                            ExecPolicy policy) {
  if (H.values.size() != psi.size()) {
    throw std::invalid_argument("update_history: mismatched quadrature point sets");
  }
  HistoryField out;
  out.values.resize(H.values.size());
  const int n = static_cast<int>(H.values.size());
  const int nthreads = (policy == ExecPolicy::Parallel) ? max_threads() : 1;
#pragma omp parallel for schedule(static) num_threads(nthreads) if (nthreads > 1)
  for (int i = 0; i < n; ++i) out.values[i] = std::max(H.values[i], psi[i]);
  return out;
}

}  // namespace pfc
