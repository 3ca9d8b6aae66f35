#include <functional>

#include "support.hpp"

using namespace cvx;
using namespace cvx::test;

namespace {

SurfaceMeasure<double> atoms(int n, std::vector<std::pair<VectorXd, double>> list) {
  SurfaceMeasure<double> m(n);
  for (auto& [u, w] : list) m.add(u / u.norm(), w);
  return m;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvariantViolation;
}

double relative_gap(const Polytope<double>& a, const Polytope<double>& b) {
  return hausdorff_up_to_translation(a, b) / diameter(b);
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("unit square from its four atoms") {
  const auto m = atoms(2, {{VectorXd{{1, 0}}, 1}, {VectorXd{{-1, 0}}, 1}, {VectorXd{{0, 1}}, 1}, {VectorXd{{0, -1}}, 1}});
  const auto sol = solve_minkowski(m);
  CHECK(sol.diagnostics.converged);
  CHECK(relative_gap(sol.body, cube<double>(2)) <= 1e-8);
  CHECK(to_double(detail::vertex_centroid(sol.body.vertices())).norm() <= 1e-12);
}

TEST_CASE_TEMPLATE("round trip of the standard triangle", S, double, Rational) {
  const auto t = simplex<S>(2);
  const auto sol = solve_minkowski(area_measure(t));
  CHECK(relative_gap(sol.body, t.to_double()) <= 1e-8);
}

TEST_CASE("solver input errors") {
  CHECK(code_of([] { solve_minkowski(atoms(2, {{VectorXd{{1, 0}}, 1}, {VectorXd{{0, 1}}, 1}})); }) ==
        ErrorCode::CentroidNonzero);
  CHECK(code_of([] {
          solve_minkowski(atoms(3, {{VectorXd{{1, 0, 0}}, 1}, {VectorXd{{-1, 0, 0}}, 1},
                                    {VectorXd{{0, 1, 0}}, 1}, {VectorXd{{0, -1, 0}}, 1}}));
        }) == ErrorCode::GreatSubsphere);
  CHECK(code_of([] {
          solve_minkowski(atoms(2, {{VectorXd{{1, 0}}, -1}, {VectorXd{{-1, 0}}, -1}, {VectorXd{{0, 1}}, 1},
                                    {VectorXd{{0, -1}}, 1}}));
        }) == ErrorCode::NonPositive);
}

TEST_CASE("an iteration cap reports NoConvergence with diagnostics") {
  Rng rng(41);
  const auto p = random_body<double>(rng, 3);
  try {
    solve_minkowski(area_measure(p), SolverOptions{1e-8, 1, 1.0});
    FAIL("expected NoConvergence");
  } catch (const SolverError& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
    CHECK(e.diagnostics().iterations == 1);
    CHECK_FALSE(e.diagnostics().converged);
    CHECK(e.diagnostics().max_relative_area_error > 1e-8);
  }
}

TEST_CASE("round trips at random") {
  Rng rng(42);
  for (int n = 2; n <= 3; ++n)
    for (int i = 0; i < 10; ++i) {
      const auto p = random_body<double>(rng, n);
      const auto sol = solve_minkowski(area_measure(p));
      CHECK(sol.diagnostics.max_relative_area_error <= 1e-8);
      CHECK(relative_gap(sol.body, p) <= 1e-6);
      // Facet normals of the output are exactly the target normals.
      const auto got = area_measure(sol.body);
      CHECK(got.size() == area_measure(p).size());
      // A second solve of the same target agrees.
      CHECK(relative_gap(solve_minkowski(area_measure(p)).body, sol.body) <= 1e-12);
    }
}

TEST_CASE("volume gradient is the facet area vector") {
  Rng rng(43);
  for (int n = 2; n <= 4; ++n) {
    const auto p = random_body<double>(rng, n);
    std::vector<VectorXd> normals;
    Eigen::VectorXd h(static_cast<Eigen::Index>(p.facets().size()));
    for (std::size_t i = 0; i < p.facets().size(); ++i) {
      normals.push_back(p.facets()[i].unit_normal());
      h(static_cast<Eigen::Index>(i)) = p.facets()[i].unit_offset() + 0.1;
    }
    const auto base = detail::facet_areas(normals, h);
    const double step = 1e-5;
    for (Eigen::Index i = 0; i < h.size(); ++i) {
      Eigen::VectorXd hp = h, hm = h;
      hp(i) += step;
      hm(i) -= step;
      const auto up = detail::facet_areas(normals, hp, false), down = detail::facet_areas(normals, hm, false);
      const double fd = (up.volume - down.volume) / (2 * step);
      CHECK(std::abs(fd - base.areas(i)) <= 1e-4 * std::max(1.0, base.areas(i)));
      const Eigen::VectorXd col = (up.areas - down.areas) / (2 * step);
      CHECK((col - base.jacobian.col(i)).norm() <= 1e-4 * std::max(1.0, col.norm()));
    }
  }
}

TEST_CASE("positive combinations plus a small area measure stay solvable") {
  Rng rng(44);
  for (int i = 0; i < 3; ++i) {
    const auto a = random_body<double>(rng, 3), b = random_body<double>(rng, 3), l = random_body<double>(rng, 3);
    SurfaceMeasure<double> nu = area_measure(a);
    SurfaceMeasure<double> mb = area_measure(b);
    mb *= 2.5;
    nu += mb;
    for (double eps : {1.0, 0.1, 0.01}) {
      SurfaceMeasure<double> s = area_measure(l);
      s *= eps;
      const SurfaceMeasure<double> target = nu + s;
      const auto sol = solve_minkowski(target);
      CHECK(sol.diagnostics.converged);
      const auto got = area_measure(sol.body);
      for (const auto& atom : target.atoms()) {
        const auto j = got.find(atom.normal);
        REQUIRE(j.has_value());
        CHECK(std::abs(got.atoms()[*j].mass() - atom.mass()) <= 1e-8 * atom.mass());
      }
    }
  }
}

TEST_CASE("Blaschke addition") {
  Rng rng(45);
  for (int n = 2; n <= 3; ++n) {
    const auto k = random_body<double>(rng, n);
    const auto kk = blaschke_add(k, k);
    CHECK(relative_gap(kk.body, scale(k, std::pow(2.0, 1.0 / (n - 1)))) <= 1e-6);
    const auto l = random_body<double>(rng, n);
    const auto kl = blaschke_add(k, l), lk = blaschke_add(l, k);
    CHECK(relative_gap(kl.body, lk.body) <= 1e-6);
    if (n == 2) CHECK(relative_gap(kl.body, minkowski_sum(k, l)) <= 1e-6);
  }
  const auto c = cube<double>(3), o = cross<double>(3);
  const auto co = blaschke_add(c, o);
  const auto target = area_measure(c) + area_measure(o);
  const auto got = area_measure(co.body);
  CHECK(got.size() == 14);
  for (const auto& atom : target.atoms()) {
    const auto j = got.find(atom.normal);
    REQUIRE(j.has_value());
    CHECK(got.atoms()[*j].mass() == doctest::Approx(atom.mass()).epsilon(1e-8));
  }
  CHECK_THROWS_AS(blaschke_add(c, cube<double>(2)), Error);
}

TEST_CASE("mixed bodies") {
  Rng rng(46);
  const auto k = random_body<double>(rng, 3);
  CHECK(relative_gap(mixed_body<double>({k, k}).body, k) <= 1e-6);
  CHECK(relative_gap(mixed_body(k, k, 1).body, k) <= 1e-6);
  const auto c = cube<Rational>(3);
  CHECK(relative_gap(mixed_body<Rational>({c, c}).body, c.to_double()) <= 1e-8);
  const auto seg = hull<Rational>({{0, 0, 0}, {0, 0, 1}}, true);
  CHECK(code_of([&] { mixed_body<Rational>({c, seg}); }) == ErrorCode::GreatSubsphere);
  CHECK_THROWS_AS(mixed_body(k, k, 3), Error);
}

}  // TEST_SUITE
