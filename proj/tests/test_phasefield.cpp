#include <doctest.h>

#include <cmath>

#include "pfc/phasefield.hpp"

using namespace pfc;

TEST_CASE("surface density formula") {
  CHECK(surface_density(0.0, {0.0, 0.0}, 0.01) == 0.0);
  CHECK(surface_density(1.0, {0.0, 0.0}, 0.01) == doctest::Approx(50.0));
  CHECK(surface_density(0.5, {3.0, 4.0}, 0.1) ==
        doctest::Approx(0.5 * (0.25 / 0.1 + 0.1 * 25.0)));
  CHECK_THROWS(surface_density(0.5, {0.0, 0.0}, 0.0));
}

TEST_CASE("surface density integrates the exponential profile to one") {
  // Simpson quadrature of gamma(d, d') with d = exp(-|x|/L) over x in
  // [-20L, 20L]; the analytic value of the full-line integral is 1.
  const double L = 0.013;
  const int n = 20000;
  const double x0 = -20.0 * L, x1 = 20.0 * L;
  const double h = (x1 - x0) / n;
  auto gamma = [L](double x) {
    const double d = std::exp(-std::abs(x) / L);
    const double dp = -std::copysign(1.0, x) * d / L;
    return surface_density(d, {dp, 0.0}, L);
  };
  double integral = gamma(x0) + gamma(x1);
  for (int i = 1; i < n; ++i) integral += (i % 2 ? 4.0 : 2.0) * gamma(x0 + i * h);
  integral *= h / 3.0;
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
}

namespace {

Mesh strip_mesh(double L, int lh, double half_width, int* center_nodes_out = nullptr) {
  const double h = L / lh;
  const int nx = static_cast<int>(std::round(2.0 * half_width / h));
  (void)center_nodes_out;
  return build_structured_mesh({-half_width, 0.0, half_width, h}, nx, 1);
}

}  // namespace

TEST_CASE("phase-field system: zero history gives zero field") {
  const Mesh mesh = strip_mesh(1.0, 8, 4.0);
  HistoryField H;
  H.values = Eigen::VectorXd::Zero(mesh.n_elements() * 4);
  const Eigen::VectorXd d = solve_phase_field(mesh, H, {1.0, 1.0, 1e3});
  CHECK(d.cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("uniform history gives the algebraic limit") {
  const Mesh mesh = strip_mesh(1.0, 8, 4.0);
  const double L = 0.5, Gc = 2.0, Hval = 3.0;
  HistoryField H;
  H.values = Eigen::VectorXd::Constant(mesh.n_elements() * 4, Hval);
  const Eigen::VectorXd d = solve_phase_field(mesh, H, {L, Gc, 1e3});
  const double expected = 2.0 * Hval * L / (2.0 * Hval * L + Gc);
  for (int i = 0; i < d.size(); ++i) CHECK(d[i] == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("large history saturates the phase field") {
  const Mesh mesh = strip_mesh(1.0, 4, 2.0);
  HistoryField H;
  H.values = Eigen::VectorXd::Zero(mesh.n_elements() * 4);
  // Saturate all quadrature points of elements touching the node nearest 0.
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Rect r = mesh.element_rect(e);
    if (std::abs(0.5 * (r.x0 + r.x1)) < 0.3) {
      for (int q = 0; q < 4; ++q) H.values[e * 4 + q] = 1e8;
    }
  }
  const Eigen::VectorXd d = solve_phase_field(mesh, H, {0.5, 1.0, 1e3});
  CHECK(d.maxCoeff() >= 0.99);
  CHECK(d.maxCoeff() <= 1.0 + 1e-9);
}

TEST_CASE("crack initialization: ramp support and magnitude") {
  const Mesh mesh = build_structured_mesh({0, 0, 1, 1}, 16, 16);
  const PhaseFieldParams pf{0.05, 2.5, 1000.0};
  const std::vector<Segment> segs = {{{0.2, 0.5}, {0.8, 0.5}}};
  const HistoryField H = init_history_for_crack(mesh, segs, pf);
  const double hmax = pf.init_magnitude * pf.Gc / pf.L;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto pts = mesh.quad_points_xy(e);
    for (int q = 0; q < 4; ++q) {
      const double dist = distance_to_segments(pts[q], segs);
      const double expect = hmax * std::max(0.0, 1.0 - dist / (0.5 * pf.L));
      CHECK(H.values[e * 4 + q] == doctest::Approx(expect).epsilon(1e-12));
    }
  }
  // Support edge and beyond.
  CHECK(hmax * std::max(0.0, 1.0 - (pf.L / 2) / (0.5 * pf.L)) == 0.0);
  const HistoryField empty = init_history_for_crack(mesh, {}, pf);
  CHECK(empty.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("solved field stays in [0,1] and is monotone in the history") {
  const double L = 0.08;
  const Mesh base = build_structured_mesh({0, 0, 1, 1}, 8, 8);
  Eigen::VectorXd d0(base.n_nodes());
  const std::vector<Segment> segs = {{{0.25, 0.5}, {0.75, 0.5}}};
  for (int i = 0; i < base.n_nodes(); ++i) {
    d0[i] = std::min(1.0, 1.5 * std::exp(-distance_to_segments(base.node(i), segs) / L));
  }
  const auto res = refine_by_phase_field(base, d0, {0.1, 4.0, 10}, L);
  const Mesh& mesh = res.mesh;
  const PhaseFieldParams pf{L, 1.0, 1000.0};
  const HistoryField H1 = init_history_for_crack(mesh, segs, pf);
  const Eigen::VectorXd d1 = solve_phase_field(mesh, H1, pf);
  CHECK(d1.minCoeff() >= -1e-6);
  CHECK(d1.maxCoeff() <= 1.0 + 1e-6);
  CHECK(d1.maxCoeff() >= 0.98);  // ridge saturation

  HistoryField H2;
  H2.values = 2.0 * H1.values;
  const Eigen::VectorXd d2 = solve_phase_field(mesh, H2, pf);
  for (int i = 0; i < d1.size(); ++i) CHECK(d2[i] >= d1[i] - 1e-9);
}

TEST_CASE("1D profile matches exp(-|x|/L) when the crack line is pinned") {
  const double L = 1.0;
  const Mesh mesh = strip_mesh(L, 8, 10.0);
  std::vector<int> pinned;
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    if (std::abs(mesh.node(i).x()) < 1e-12) pinned.push_back(i);
  }
  REQUIRE(pinned.size() == 2);
  HistoryField H;
  H.values = Eigen::VectorXd::Zero(mesh.n_elements() * 4);
  const Eigen::VectorXd d = solve_phase_field(mesh, H, {L, 1.0, 1e3}, pinned);
  double max_err = 0.0;
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    max_err = std::max(max_err, std::abs(d[i] - std::exp(-std::abs(mesh.node(i).x()) / L)));
  }
  CHECK(max_err <= 0.05);
  CHECK(max_err <= 0.01);  // the pinned profile is much tighter in practice
}

TEST_CASE("deviatoric driving force") {
  const auto mat = ElasticParams::from_engineering(10e9, 0.3);
  CHECK(crack_driving_force(Sym2::zero(), mat) == 0.0);
  const double s = 3e-4;
  CHECK(crack_driving_force(Sym2{0.0, 0.0, s}, mat) ==
        doctest::Approx(2.0 * mat.G * s * s).epsilon(1e-13));
  // diag(a, a) with eps_zz = 0 has deviator diag(a/3, a/3, -2a/3).
  const double a = 1e-3;
  CHECK(crack_driving_force(a * Sym2::identity(), mat) ==
        doctest::Approx(mat.G * (2.0 / 3.0) * a * a).epsilon(1e-12));
}

TEST_CASE("history update is a pointwise running max") {
  HistoryField H;
  H.values = Eigen::VectorXd::Zero(6);
  Eigen::VectorXd psi(6);
  psi << 1, 2, 0, 5, 4, 3;
  const HistoryField H1 = update_history(H, psi);
  for (int i = 0; i < 6; ++i) CHECK(H1.values[i] == psi[i]);

  Eigen::VectorXd lower = 0.5 * psi;
  const HistoryField H2 = update_history(H1, lower);
  for (int i = 0; i < 6; ++i) CHECK(H2.values[i] == psi[i]);

  // Load-unload-reload keeps the running max.
  Eigen::VectorXd higher = 2.0 * psi;
  const HistoryField H3 = update_history(update_history(H2, lower), higher);
  for (int i = 0; i < 6; ++i) CHECK(H3.values[i] == 2.0 * psi[i]);

  Eigen::VectorXd wrong(5);
  wrong.setZero();
  CHECK_THROWS(update_history(H, wrong));
}

TEST_CASE("serial and parallel phase-field assembly agree") {
  const Mesh mesh = strip_mesh(0.5, 8, 3.0);
  const PhaseFieldParams pf{0.5, 1.3, 1e3};
  const HistoryField H = init_history_for_crack(mesh, {{{-0.1, 0.0}, {0.1, 0.05}}}, pf);
  const auto sys_s = assemble_phasefield_system(mesh, H, pf, ExecPolicy::Serial);
  const auto sys_p = assemble_phasefield_system(mesh, H, pf, ExecPolicy::Parallel);
  const Eigen::SparseMatrix<double> diff = sys_s.matrix - sys_p.matrix;
  const double scale = sys_s.matrix.coeffs().cwiseAbs().maxCoeff();
  const double dmax =
      diff.nonZeros() == 0
          ? 0.0
          : Eigen::Map<const Eigen::VectorXd>(diff.valuePtr(), diff.nonZeros()).cwiseAbs().maxCoeff();
  CHECK(dmax <= 1e-12 * scale);
  CHECK((sys_s.rhs - sys_p.rhs).cwiseAbs().maxCoeff() <=
        1e-12 * std::max(1.0, sys_s.rhs.cwiseAbs().maxCoeff()));
}
