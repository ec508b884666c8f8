#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pfc/crackpath.hpp"
#include "pfc/phasefield.hpp"

using namespace pfc;

namespace {

int node_at(const Mesh& mesh, const Vec2& p) {
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    if ((mesh.node(i) - p).norm() < 1e-12) return i;
  }
  return -1;
}

}  // namespace

TEST_CASE("extraction picks exactly the nodes above the threshold") {
  const Mesh mesh = build_structured_mesh({0, 0, 1, 1}, 4, 4);
  Eigen::VectorXd d = Eigen::VectorXd::Zero(mesh.n_nodes());
  CHECK(extract_crack_nodes(mesh, d, 0.98).empty());
  d[7] = 0.99;
  const auto nodes = extract_crack_nodes(mesh, d, 0.98);
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0] == 7);
  d[3] = 0.98;  // not strictly greater
  CHECK(extract_crack_nodes(mesh, d, 0.98).size() == 1);
  CHECK_THROWS(extract_crack_nodes(mesh, d, 0.0));
}

TEST_CASE("decimation keeps an L-separated subset") {
  const Mesh mesh = build_structured_mesh({0, 0, 6, 1}, 12, 2);  // h = 0.5

  SUBCASE("two nodes closer than L: the larger d survives") {
    const int a = node_at(mesh, {1.0, 0.0});
    const int b = node_at(mesh, {1.5, 0.0});
    REQUIRE(a >= 0);
    REQUIRE(b >= 0);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(mesh.n_nodes());
    d[a] = 0.9;
    d[b] = 1.0;
    const auto kept = decimate_nodes(mesh, {a, b}, d, 1.0);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0] == b);
  }
  SUBCASE("two nodes beyond L both survive") {
    const int a = node_at(mesh, {1.0, 0.0});
    const int b = node_at(mesh, {3.0, 0.0});
    Eigen::VectorXd d = Eigen::VectorXd::Zero(mesh.n_nodes());
    d[a] = 0.99;
    d[b] = 0.995;
    CHECK(decimate_nodes(mesh, {a, b}, d, 1.0).size() == 2);
  }
  SUBCASE("equal-d collinear chain with 0.6 L spacing keeps alternating nodes") {
    // Nodes along y = 0 at x = 0, 0.5, 1.0, ..., spacing 0.5 = 0.6 L for
    // L = 5/6. Greedy selection with the lowest-index tie rule keeps
    // x = 0, 1.0, 2.0, ... with pairwise separation 1.2 L.
    const double L = 0.5 / 0.6;
    std::vector<int> chain;
    for (int k = 0; k <= 8; ++k) chain.push_back(node_at(mesh, {0.5 * k, 0.0}));
    Eigen::VectorXd d = Eigen::VectorXd::Zero(mesh.n_nodes());
    for (int n : chain) d[n] = 0.99;
    const auto kept = decimate_nodes(mesh, chain, d, L);
    REQUIRE(kept.size() == 5);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      CHECK(mesh.node(kept[i]).x() == doctest::Approx(1.0 * i));
    }
    for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
      const double sep = (mesh.node(kept[i]) - mesh.node(kept[i + 1])).norm();
      CHECK(sep >= 1.2 * L * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("polyline construction") {
  const Mesh mesh = build_structured_mesh({0, 0, 1, 1}, 1, 1);
  const int n00 = node_at(mesh, {0.0, 0.0});
  const int n11 = node_at(mesh, {1.0, 1.0});

  SUBCASE("45 degree line") {
    const auto pl = build_polyline(mesh, {n11, n00}, SortAxis::X);
    REQUIRE(pl.n_segments() == 1);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(pl.slips[0].x() == doctest::Approx(r));
    CHECK(pl.slips[0].y() == doctest::Approx(r));
    CHECK(pl.normals[0].x() == doctest::Approx(-r));
    CHECK(pl.normals[0].y() == doctest::Approx(r));
    CHECK(pl.length() == doctest::Approx(std::sqrt(2.0)));
  }
  SUBCASE("input order does not matter") {
    const auto a = build_polyline(mesh, {n00, n11}, SortAxis::Auto);
    const auto b = build_polyline(mesh, {n11, n00}, SortAxis::Auto);
    REQUIRE(a.vertices.size() == b.vertices.size());
    for (std::size_t i = 0; i < a.vertices.size(); ++i) {
      CHECK((a.vertices[i] - b.vertices[i]).norm() == 0.0);
    }
  }
  SUBCASE("degenerate input throws") {
    CHECK_THROWS_WITH_AS(build_polyline(mesh, {n00}, SortAxis::X),
                         doctest::Contains("degenerate"), std::runtime_error);
  }
}

TEST_CASE("jittered horizontal chain stays within 1e-6 of horizontal") {
  // A vanishingly thin mesh provides nodes with 1e-8-scale y offsets.
  const Mesh fine = build_structured_mesh({0, 0, 1, 2e-8}, 10, 2);
  std::vector<int> chain;
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> row(0, 2);
  for (int k = 0; k <= 10; ++k) {
    const double x = 0.1 * k;
    const double y = 1e-8 * row(rng);
    const int n = [&] {
      for (int i = 0; i < fine.n_nodes(); ++i) {
        if ((fine.node(i) - Vec2{x, y}).norm() < 1e-14) return i;
      }
      return -1;
    }();
    REQUIRE(n >= 0);
    chain.push_back(n);
  }
  const auto pl = build_polyline(fine, chain, SortAxis::X);
  for (int s = 0; s < pl.n_segments(); ++s) {
    CHECK(std::abs(pl.slips[s].y()) <= 1e-6);
    CHECK(std::abs(std::abs(pl.normals[s].y()) - 1.0) <= 1e-6);
  }
}

TEST_CASE("vector assignment from the nearest segment") {
  const Mesh mesh = build_structured_mesh({0, 0, 2, 1}, 8, 4);
  CrackPolyline pl;
  pl.vertices = {{0.0, 0.5}, {1.0, 0.5}, {2.0, 0.5}};
  pl.slips = {{1.0, 0.0}, {1.0, 0.0}};
  pl.normals = {{0.0, 1.0}, {0.0, 1.0}};
  pl.arc_offsets = {0.0, 1.0, 2.0};
  Eigen::VectorXd d = Eigen::VectorXd::Constant(mesh.n_nodes(), 0.5);

  const auto va = assign_unit_vectors(mesh, pl, d, ExecPolicy::Serial);
  REQUIRE(static_cast<int>(va.size()) == mesh.n_elements() * 4);
  for (const auto& a : va) {
    REQUIRE(a.assigned);
    CHECK(std::abs(a.n.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(a.m.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(a.n.dot(a.m)) <= 1e-12);
  }
  // Points with x < 1 belong to segment 0, x > 1 to segment 1; arc length
  // equals x for this horizontal path.
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto pts = mesh.quad_points_xy(e);
    for (int q = 0; q < 4; ++q) {
      const auto& a = va[e * 4 + q];
      CHECK(a.segment == (pts[q].x() < 1.0 ? 0 : 1));
      CHECK(a.arc_s == doctest::Approx(pts[q].x()).epsilon(1e-12));
    }
  }

  SUBCASE("d = 0 points receive nothing") {
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(mesh.n_nodes());
    const auto none = assign_unit_vectors(mesh, pl, zero);
    for (const auto& a : none) CHECK(!a.assigned);
  }
  SUBCASE("serial matches parallel") {
    const auto vp = assign_unit_vectors(mesh, pl, d, ExecPolicy::Parallel);
    for (std::size_t i = 0; i < va.size(); ++i) {
      CHECK(va[i].assigned == vp[i].assigned);
      CHECK(va[i].segment == vp[i].segment);
      CHECK((va[i].n - vp[i].n).norm() == 0.0);
    }
  }
}

TEST_CASE("tie at a shared vertex goes to the lower segment index") {
  const auto pl = polyline_from_points({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
  // A point straight above the shared vertex (1, 0) is exactly equidistant
  // to both segments (both distances evaluate to 0.5).
  const auto proj = nearest_on_polyline(pl, {1.0, 0.5});
  CHECK(project_to_segment({1.0, 0.5}, pl.segment(0)).distance ==
        project_to_segment({1.0, 0.5}, pl.segment(1)).distance);
  CHECK(proj.segment == 0);
  CHECK(proj.distance == doctest::Approx(0.5));
  CHECK(proj.arc_s == doctest::Approx(1.0));
  // Off the tie, the nearest segment wins.
  CHECK(nearest_on_polyline(pl, {1.6, 0.1}).segment == 1);
  CHECK(nearest_on_polyline(pl, {0.2, -0.3}).segment == 0);
}

TEST_CASE("synthetic inclined crack: extraction hugs the segment and is deterministic") {
  const double L = 0.05;
  const std::vector<Segment> segs = {{{0.3, 0.33}, {0.7, 0.68}}};
  Mesh mesh = build_structured_mesh({0, 0, 1, 1}, 8, 8);
  for (int pass = 0; pass < 12; ++pass) {
    Eigen::VectorXd dsyn(mesh.n_nodes());
    for (int i = 0; i < mesh.n_nodes(); ++i) {
      dsyn[i] = std::min(1.0, 1.5 * std::exp(-distance_to_segments(mesh.node(i), segs) / L));
    }
    auto res = refine_by_phase_field(mesh, dsyn, {0.1, 4.0, 12}, L);
    const bool done = res.mesh.n_elements() == mesh.n_elements();
    mesh = std::move(res.mesh);
    if (done) break;
  }
  const PhaseFieldParams pf{L, 1.0, 1000.0};
  const HistoryField H = init_history_for_crack(mesh, segs, pf);
  const Eigen::VectorXd d = solve_phase_field(mesh, H, pf);

  const auto gamma_tmp = extract_crack_nodes(mesh, d, 0.98);
  REQUIRE(!gamma_tmp.empty());
  for (int n : gamma_tmp) {
    CHECK(distance_to_segments(mesh.node(n), segs) <= L);
  }
  const auto gamma = decimate_nodes(mesh, gamma_tmp, d, L);
  const auto pl = build_polyline(mesh, gamma, SortAxis::Auto);

  // Hausdorff distance between polyline vertices and the true segment.
  double hausdorff = 0.0;
  for (const auto& v : pl.vertices) {
    hausdorff = std::max(hausdorff, distance_to_segments(v, segs));
  }
  std::vector<Segment> plsegs;
  for (int s = 0; s < pl.n_segments(); ++s) plsegs.push_back(pl.segment(s));
  for (double t = 0.0; t <= 1.0; t += 0.02) {
    const Vec2 p = segs[0].a + t * (segs[0].b - segs[0].a);
    hausdorff = std::max(hausdorff, distance_to_segments(p, plsegs));
  }
  CHECK(hausdorff <= L);

  // The crack direction is (cos, sin) of atan2(0.35, 0.4); normals must be
  // orthogonal to it.
  const Vec2 dir = (segs[0].b - segs[0].a).normalized();
  const auto va = assign_unit_vectors(mesh, pl, d);
  int checked = 0;
  for (const auto& a : va) {
    if (!a.assigned) continue;
    CHECK(std::abs(a.n.dot(dir)) <= 0.08);  // polyline is mesh-quantized
    CHECK(std::abs(a.n.dot(a.m)) <= 1e-12);
    ++checked;
  }
  CHECK(checked > 100);

  // Re-running the extraction yields the identical polyline.
  const auto gamma2 = decimate_nodes(mesh, extract_crack_nodes(mesh, d, 0.98), d, L);
  const auto pl2 = build_polyline(mesh, gamma2, SortAxis::Auto);
  REQUIRE(pl.vertices.size() == pl2.vertices.size());
  for (std::size_t i = 0; i < pl.vertices.size(); ++i) {
    CHECK((pl.vertices[i] - pl2.vertices[i]).norm() == 0.0);
  }
}
