#include <doctest.h>

#include <cmath>
#include <random>

#include "pfc/constitutive.hpp"

using namespace pfc;

namespace {

Sym2 in_frame(const Vec2& n, const Vec2& m, double e_nn, double e_mm, double e_nm) {
  return e_nn * Sym2::sym_dyad(n, n) + e_mm * Sym2::sym_dyad(m, m) +
         e_nm * (Sym2::sym_dyad(n, m) * 2.0);
}

std::pair<Vec2, Vec2> random_frame(std::mt19937& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  const double phi = ang(rng);
  const Vec2 n{std::cos(phi), std::sin(phi)};
  return {n, rot90(n)};
}

Sym2 apply_voigt(const Tangent& c, const Sym2& eps) {
  return Sym2::from_stress_voigt(c * eps.strain_voigt());
}

}  // namespace

TEST_CASE("lame conversion matches the isotropic formulas") {
  auto [l1, g1] = lame_from_engineering(10e9, 0.3);
  CHECK(l1 == doctest::Approx(5.769230769230769e9).epsilon(1e-13));
  CHECK(g1 == doctest::Approx(3.846153846153846e9).epsilon(1e-13));

  auto [l2, g2] = lame_from_engineering(5.0e6, 0.0);
  CHECK(l2 == doctest::Approx(0.0));
  CHECK(g2 == doctest::Approx(2.5e6));

  auto [l3, g3] = lame_from_engineering(1000e6, 0.3);
  (void)l3;
  CHECK(g3 == doctest::Approx(384.6153846153846e6).epsilon(1e-13));

  CHECK_THROWS(lame_from_engineering(1e9, 0.5));
  CHECK_THROWS(lame_from_engineering(1e9, -1.0));
  CHECK_THROWS(lame_from_engineering(-1.0, 0.3));
}

TEST_CASE("degradation endpoints and midpoint") {
  auto [g0, gp0] = degradation(0.0);
  CHECK(g0 == 1.0);
  CHECK(gp0 == -2.0);
  auto [g1, gp1] = degradation(1.0);
  CHECK(g1 == 0.0);
  CHECK(gp1 == 0.0);
  auto [gh, gph] = degradation(0.5);
  CHECK(gh == doctest::Approx(0.25));
  CHECK(gph == doctest::Approx(-1.0));
  CHECK_THROWS(degradation(-0.01));
  CHECK_THROWS(degradation(1.01));
}

TEST_CASE("bulk stress: zero, volumetric, shear") {
  const auto mat = ElasticParams::from_engineering(10e9, 0.3);
  const Sym2 zero = bulk_stress(Sym2::zero(), mat);
  CHECK(zero.max_abs() == 0.0);

  const double a = 1e-3;
  const Sym2 vol = bulk_stress(a * Sym2::identity(), mat);
  const double expect = (2.0 * mat.lambda + 2.0 * mat.G) * a;
  CHECK(vol.xx == doctest::Approx(expect).epsilon(1e-13));
  CHECK(vol.yy == doctest::Approx(expect).epsilon(1e-13));
  CHECK(vol.xy == doctest::Approx(0.0));

  const double s = 2e-4;
  const Sym2 sh = bulk_stress(Sym2{0.0, 0.0, s}, mat);
  CHECK(sh.xy == doctest::Approx(2.0 * mat.G * s).epsilon(1e-13));
  CHECK(sh.xx == 0.0);
  CHECK(sh.yy == 0.0);
}

TEST_CASE("stress update branches on hand-computed states") {
  const Vec2 n{0.0, 1.0};
  const Vec2 m{1.0, 0.0};

  SUBCASE("bulk") {
    const auto mat = ElasticParams::from_engineering(10e9, 0.3);
    const Sym2 eps{1e-4, -2e-4, 3e-5};
    const auto st = update_stress(eps, 0.0, n, m, mat, {0.5});
    CHECK(st.condition == ContactCondition::Bulk);
    const Sym2 sb = bulk_stress(eps, mat);
    CHECK(st.sigma.xx == sb.xx);
    CHECK(st.sigma.yy == sb.yy);
    CHECK(st.sigma.xy == sb.xy);
  }

  SUBCASE("open at d=1 under uniaxial tension") {
    const auto mat = ElasticParams::from_engineering(10e9, 0.3);
    const auto st = update_stress(Sym2{0.0, 1e-3, 0.0}, 1.0, n, m, mat, {0.5});
    CHECK(st.condition == ContactCondition::Open);
    CHECK(st.sigma.max_abs() == doctest::Approx(0.0));
  }

  SUBCASE("stick: tiny shear against strong contact pressure") {
    const auto mat = ElasticParams::from_engineering(1000e3, 0.3);  // 1000 kPa
    const Sym2 eps{0.0, -1e-3, 1e-6};
    const auto st = update_stress(eps, 1.0, n, m, mat, {0.5});
    CHECK(st.condition == ContactCondition::Stick);
    // tau_bulk = 2 G eps_xy = 0.769 Pa, far below mu p_N = 673 Pa
    CHECK(st.tau_bulk == doctest::Approx(2.0 * mat.G * 1e-6).epsilon(1e-13));
    CHECK(std::abs(st.tau_bulk) < 0.5 * (-st.sigma_n_bulk));
    const Sym2 sb = bulk_stress(eps, mat);
    CHECK(st.sigma.xy == sb.xy);
    CHECK(st.sigma.yy == sb.yy);
  }

  SUBCASE("slip: shear capped at mu p_N, normal components untouched") {
    const auto mat = ElasticParams::from_engineering(1000e3, 0.3);
    const Sym2 eps{0.0, -1e-3, 2e-3};
    const Sym2 sb = bulk_stress(eps, mat);
    const double p_n = -sb.nn(n);
    REQUIRE(std::abs(sb.nm(n, m)) > 0.5 * p_n);
    const auto st = update_stress(eps, 1.0, n, m, mat, {0.5});
    CHECK(st.condition == ContactCondition::Slip);
    CHECK(st.sigma.xy == doctest::Approx(0.5 * p_n).epsilon(1e-12));
    CHECK(st.sigma.xx == doctest::Approx(sb.xx));
    CHECK(st.sigma.yy == doctest::Approx(sb.yy));
  }

  SUBCASE("input validation") {
    const auto mat = ElasticParams::from_engineering(1e9, 0.3);
    CHECK_THROWS(update_stress(Sym2{1e-3, 0, 0}, 0.5, Vec2{1.0, 1.0}, m, mat, {0.1}));
    CHECK_THROWS(update_stress(Sym2{1e-3, 0, 0}, 1.5, n, m, mat, {0.1}));
  }
}

TEST_CASE("amor stress split") {
  const auto mat = ElasticParams::from_engineering(10e9, 0.3);
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> dist(-1e-3, 1e-3);

  SUBCASE("d=0 reassembles the isotropic law") {
    for (int i = 0; i < 100; ++i) {
      const Sym2 eps{dist(rng), dist(rng), dist(rng)};
      const Sym2 a = amor_stress(eps, 0.0, mat);
      const Sym2 b = bulk_stress(eps, mat);
      CHECK((a - b).max_abs() <= 1e-12 * b.max_abs());
    }
  }
  SUBCASE("d=1 pure compression keeps the volumetric response") {
    const double a = 1e-3;
    const Sym2 eps = (-a) * Sym2::identity();
    const Sym2 s = amor_stress(eps, 1.0, mat);
    const double K = mat.lambda + mat.G;
    CHECK(s.xx == doctest::Approx(K * (-2.0 * a)).epsilon(1e-13));
    CHECK(s.yy == doctest::Approx(K * (-2.0 * a)).epsilon(1e-13));
    CHECK(s.xy == doctest::Approx(0.0));
  }
  SUBCASE("d=1 pure shear fully degraded") {
    const Sym2 s = amor_stress(Sym2{0.0, 0.0, 4e-4}, 1.0, mat);
    CHECK(s.max_abs() == doctest::Approx(0.0));
  }
  SUBCASE("tangent differentiates the stress") {
    for (int i = 0; i < 50; ++i) {
      Sym2 eps{dist(rng), dist(rng), dist(rng)};
      if (std::abs(eps.trace()) < 1e-5) continue;  // stay off the branch switch
      const double d = 0.37;
      const Tangent c = amor_tangent(eps, d, mat);
      const double h = 1e-8;
      for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d ev = eps.strain_voigt();
        Eigen::Vector3d ep = ev, en = ev;
        ep[k] += h;
        en[k] -= h;
        const Sym2 sp = amor_stress(Sym2::from_strain_voigt(ep), d, mat);
        const Sym2 sn = amor_stress(Sym2::from_strain_voigt(en), d, mat);
        const Eigen::Vector3d fd = (sp.stress_voigt() - sn.stress_voigt()) / (2.0 * h);
        for (int r = 0; r < 3; ++r) {
          CHECK(fd[r] == doctest::Approx(c(r, k)).epsilon(1e-6).scale(mat.E * 1e-4));
        }
      }
    }
  }
}

TEST_CASE("branch identities hold for random states") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> dist(-1e-3, 1e-3);
  std::uniform_real_distribution<double> dd(0.0, 1.0);
  std::uniform_real_distribution<double> dmu(0.0, 1.0);
  const auto mat = ElasticParams::from_engineering(10e9, 0.25);

  int n_open = 0, n_stick = 0, n_slip = 0;
  for (int i = 0; i < 5000; ++i) {
    auto [n, m] = random_frame(rng);
    const Sym2 eps{dist(rng), dist(rng), dist(rng)};
    const double d = dd(rng);
    const FrictionParams fric{dmu(rng)};
    const auto st = update_stress(eps, d, n, m, mat, fric);
    const Sym2 sb = bulk_stress(eps, mat);
    const auto [g, gp] = degradation(d);
    (void)gp;
    const double scale = std::max(sb.max_abs(), 1.0);
    switch (st.condition) {
      case ContactCondition::Open: {
        ++n_open;
        CHECK((st.sigma - g * sb).max_abs() <= 1e-12 * scale);
        break;
      }
      case ContactCondition::Stick: {
        ++n_stick;
        CHECK((st.sigma - sb).max_abs() <= 1e-12 * scale);
        break;
      }
      case ContactCondition::Slip: {
        ++n_slip;
        const double tau = sb.nm(n, m);
        const double p_n = -sb.nn(n);
        const double sgn = tau < 0.0 ? -1.0 : 1.0;
        CHECK(st.sigma.nm(n, m) ==
              doctest::Approx(g * tau + (1.0 - g) * sgn * fric.mu * p_n).epsilon(1e-10));
        CHECK(st.sigma.nn(n) == doctest::Approx(sb.nn(n)).epsilon(1e-10));
        CHECK(st.sigma.nn(m) == doctest::Approx(sb.nn(m)).epsilon(1e-10));
        break;
      }
      default: break;
    }
  }
  CHECK(n_open > 100);
  CHECK(n_stick > 100);
  CHECK(n_slip > 100);
}

TEST_CASE("stress is continuous across the stick/slip boundary") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(-1e-3, -1e-5);
  std::uniform_real_distribution<double> dmu(0.05, 0.9);
  std::uniform_real_distribution<double> dd(0.01, 1.0);
  const auto mat = ElasticParams::from_engineering(10e9, 0.3);
  for (int i = 0; i < 500; ++i) {
    auto [n, m] = random_frame(rng);
    const double e_nn = dist(rng);
    const double e_mm = dist(rng);
    const double mu = dmu(rng);
    const double d = dd(rng);
    // Choose the shear so that |tau_bulk| = mu p_N exactly.
    const double p_n = -(mat.lambda * (e_nn + e_mm) + 2.0 * mat.G * e_nn);
    REQUIRE(p_n > 0.0);
    const double e_nm = mu * p_n / (2.0 * mat.G);
    const Sym2 eps = in_frame(n, m, e_nn, e_mm, e_nm);
    const Sym2 sb = bulk_stress(eps, mat);
    // Stick formula vs slip formula at the yield surface.
    const auto [g, gp] = degradation(d);
    (void)gp;
    const Sym2 slip =
        sb + (1.0 - g) * (mu * p_n - std::abs(sb.nm(n, m))) * (Sym2::sym_dyad(n, m) * 2.0);
    CHECK((slip - sb).max_abs() <= 1e-10 * std::max(sb.max_abs(), 1.0));
  }
}

TEST_CASE("stress update is positively homogeneous within a branch") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> dist(-1e-3, 1e-3);
  std::uniform_real_distribution<double> dc(0.1, 10.0);
  const auto mat = ElasticParams::from_engineering(2e9, 0.2);
  for (int i = 0; i < 500; ++i) {
    auto [n, m] = random_frame(rng);
    const Sym2 eps{dist(rng), dist(rng), dist(rng)};
    const double c = dc(rng);
    const auto st1 = update_stress(eps, 0.6, n, m, mat, {0.4});
    const auto st2 = update_stress(c * eps, 0.6, n, m, mat, {0.4});
    CHECK(st2.condition == st1.condition);
    CHECK((st2.sigma - c * st1.sigma).max_abs() <=
          1e-11 * std::max(1.0, st2.sigma.max_abs()));
  }
}

TEST_CASE("tangent matches finite differences of the stress update") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1e-3, 1e-3);
  const auto mat = ElasticParams::from_engineering(10e9, 0.3);
  const FrictionParams fric{0.45};
  const double d = 0.8;

  SUBCASE("bulk tangent is the elastic tensor") {
    const Tangent c = tangent(ContactCondition::Bulk, 0.0, Vec2{0, 1}, Vec2{1, 0}, mat, fric);
    CHECK((c - elastic_tangent(mat)).norm() == 0.0);
  }
  SUBCASE("open tangent is g(d) C^e") {
    const Tangent c = tangent(ContactCondition::Open, 0.5, Vec2{0, 1}, Vec2{1, 0}, mat, fric);
    CHECK((c - 0.25 * elastic_tangent(mat)).norm() <= 1e-12 * elastic_tangent(mat).norm());
  }

  int tested = 0;
  for (int i = 0; i < 2000 && tested < 300; ++i) {
    auto [n, m] = random_frame(rng);
    const Sym2 eps{dist(rng), dist(rng), dist(rng)};
    auto st = update_stress(eps, d, n, m, mat, fric);
    // Keep states strictly inside their branch.
    const double e_n = eps.nn(n);
    const double f = std::abs(st.tau_bulk) + fric.mu * st.sigma_n_bulk;
    if (std::abs(e_n) < 1e-6) continue;
    if (e_n < 0.0 && std::abs(f) < 1e-3 * std::abs(fric.mu * st.sigma_n_bulk)) continue;
    ++tested;
    const Vec2 m_or = (st.tau_bulk < 0.0) ? Vec2(-m) : m;
    const Tangent c = tangent(st.condition, d, n, m_or, mat, fric);
    const double h = 1e-8;
    for (int k = 0; k < 3; ++k) {
      Eigen::Vector3d ep = eps.strain_voigt(), en = eps.strain_voigt();
      ep[k] += h;
      en[k] -= h;
      const auto sp = update_stress(Sym2::from_strain_voigt(ep), d, n, m, mat, fric);
      const auto sn = update_stress(Sym2::from_strain_voigt(en), d, n, m, mat, fric);
      REQUIRE(sp.condition == st.condition);
      REQUIRE(sn.condition == st.condition);
      const Eigen::Vector3d fd = (sp.sigma.stress_voigt() - sn.sigma.stress_voigt()) / (2.0 * h);
      for (int r = 0; r < 3; ++r) {
        CHECK(fd[r] == doctest::Approx(c(r, k)).epsilon(1e-6).scale(mat.E * 1e-3));
      }
    }
  }
  CHECK(tested >= 300);
}

TEST_CASE("d=1 gives the interface stress, d=0 the bulk stress, symmetry everywhere") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> dist(-1e-3, 1e-3);
  const auto mat = ElasticParams::from_engineering(1e9, 0.3);
  for (int i = 0; i < 500; ++i) {
    auto [n, m] = random_frame(rng);
    const Sym2 eps{dist(rng), dist(rng), dist(rng)};
    const auto st0 = update_stress(eps, 0.0, n, m, mat, {0.3});
    CHECK((st0.sigma - bulk_stress(eps, mat)).max_abs() == 0.0);
    const auto st1 = update_stress(eps, 1.0, n, m, mat, {0.3});
    if (st1.condition == ContactCondition::Open) {
      CHECK(st1.sigma.max_abs() <= 1e-12 * bulk_stress(eps, mat).max_abs());
    } else if (st1.condition == ContactCondition::Slip) {
      CHECK(std::abs(st1.sigma.nm(n, m)) ==
            doctest::Approx(std::abs(0.3 * -st1.sigma_n_bulk)).epsilon(1e-9));
    }
  }
}
