#include <algorithm>
#include <numeric>

#include "support.hpp"

using namespace cvx;
using namespace cvx::test;

namespace {

template <typename S>
std::vector<Vector<S>> all_normals(const SurfaceMeasure<S>& m) {
  std::vector<Vector<S>> out;
  for (const auto& a : m.atoms()) out.push_back(a.normal);
  return out;
}

double mass_at(const SurfaceMeasure<Rational>& m, const VectorXq& u) {
  const auto i = m.find(u);
  return i ? m.atoms()[*i].mass() : 0.0;
}

}  // namespace

TEST_SUITE("measures") {

TEST_CASE_TEMPLATE("area measure examples", S, double, Rational) {
  const auto sq = area_measure(cube<S>(2));
  REQUIRE(sq.size() == 4);
  for (const auto& a : sq.atoms()) CHECK(a.mass() == doctest::Approx(1.0));

  const auto t = area_measure(simplex<S>(2));
  REQUIRE(t.size() == 3);
  CHECK(t.total_mass() == doctest::Approx(2 + std::sqrt(2.0)));
  const auto i = t.find(vec<S>({1, 1}));
  REQUIRE(i.has_value());
  CHECK(t.atoms()[*i].mass() == doctest::Approx(std::sqrt(2.0)));

  Rng rng(31);
  const auto p = random_body<S>(rng, 3);
  const auto m3 = area_measure(scale(p, S(3)));
  const auto m1 = area_measure(p);
  REQUIRE(m3.size() == m1.size());
  for (std::size_t j = 0; j < m1.size(); ++j) CHECK(m3.atoms()[j].mass() == doctest::Approx(9 * m1.atoms()[j].mass()));

  const auto moved = area_measure(translate(p, vec<S>({1, -2, 0.5})));
  REQUIRE(moved.size() == m1.size());
  for (std::size_t j = 0; j < m1.size(); ++j) {
    CHECK(vectors_equal(moved.atoms()[j].normal, m1.atoms()[j].normal));
    CHECK(moved.atoms()[j].mass() == doctest::Approx(m1.atoms()[j].mass()));
  }
}

TEST_CASE_TEMPLATE("mixed volume examples", S, double, Rational) {
  Rng rng(32);
  const auto k = random_body<S>(rng, 3);
  CHECK(to_double(mixed_volume<S>({k, k, k})) == doctest::Approx(to_double(volume(k))));

  const auto sq = cube<S>(2);
  const auto seg = hull<S>({{0, 0}, {1, 0}}, true);
  CHECK(mixed_volume<S>({sq, seg}) == S(1) / S(2));
  CHECK(mixed_volume_via_measure<S>({sq}, seg) == S(1) / S(2));

  for (int i = 0; i < 5; ++i) {
    const double a1 = 1 + i, a2 = 0.5 * i + 0.25, b1 = 2, b2 = 0.75 * i + 1;
    const auto a = box<S>({a1, a2}), b = box<S>({b1, b2});
    const double expected = (a1 * b2 + a2 * b1) / 2;
    CHECK(to_double(mixed_volume<S>({a, b})) == doctest::Approx(expected));
    CHECK(to_double(mixed_volume_via_measure<S>({a}, b)) == doctest::Approx(expected));
  }

  const auto c = cube<S>(3);
  CHECK(mixed_volume_via_measure<S>({c, c}, c) == S(1));
  CHECK_THROWS_AS(mixed_volume<S>({c, c}), Error);
}

TEST_CASE("a point integrates to zero against a closed measure") {
  Rng rng(33);
  for (int n = 2; n <= 4; ++n) {
    std::vector<Polytope<Rational>> bodies;
    for (int j = 0; j + 1 < n; ++j) bodies.push_back(random_body<Rational>(rng, n));
    VectorXq a(n);
    for (int j = 0; j < n; ++j) a(j) = dyadic<Rational>(rng.uniform(-2, 2));
    const auto point = convex_hull<Rational>({a}, true);
    CHECK(mixed_volume_via_measure(bodies, point) == 0);
    const auto m = mixed_area_measure(bodies);
    CHECK(integrate(m, sample_linear(a, all_normals(m))) == 0);
  }
  const auto pd = random_body<double>(rng, 3);
  const auto md = area_measure(pd);
  CHECK(std::abs(integrate(md, sample_linear(VectorXd{{0.3, -1.0, 2.0}}, all_normals(md)))) <= 1e-10);
}

TEST_CASE("mixed area measures") {
  Rng rng(34);
  const auto k = random_body<Rational>(rng, 3);
  const auto mk = mixed_area_measure<Rational>({k, k});
  const auto ak = area_measure(k);
  REQUIRE(mk.size() == ak.size());
  for (std::size_t j = 0; j < ak.size(); ++j) {
    CHECK(vectors_equal(mk.atoms()[j].normal, ak.atoms()[j].normal));
    CHECK(mk.atoms()[j].weight == ak.atoms()[j].weight);
  }

  const auto k2 = random_body<Rational>(rng, 2);
  const auto m2 = mixed_area_measure<Rational>({k2});
  REQUIRE(m2.size() == area_measure(k2).size());

  const auto c = cube<Rational>(3);
  const auto cc = mixed_area_measure<Rational>({c, c});
  CHECK(cc.size() == 6);
  for (const auto& a : cc.atoms()) CHECK(a.mass() == doctest::Approx(1.0));

  // Only the lateral normals carry mass. Pairing with h_C gives 3 V(C, C, seg) = 1,
  // and two of the four lateral normals see h_C = 1, so each weight is 1/2.
  const auto seg = hull<Rational>({{0, 0, 0}, {0, 0, 1}}, true);
  const auto cs = mixed_area_measure<Rational>({c, seg});
  CHECK(cs.size() == 4);
  for (const auto& a : cs.atoms()) {
    CHECK(a.normal(2) == 0);
    CHECK(a.mass() == doctest::Approx(0.5));
  }
  CHECK(mixed_volume<Rational>({c, c, seg}) == Rational(1, 3));
  CHECK(mixed_volume_via_measure<Rational>({c, seg}, c) == Rational(1, 3));
  CHECK_FALSE(cs.spans());
  CHECK(mass_at(cs, vec<Rational>({1, 0, 0})) == doctest::Approx(0.5));
  CHECK(mass_at(cs, vec<Rational>({0, 0, 1})) == 0.0);

  for (int i = 0; i < 5; ++i) {
    const auto m = mixed_area_measure<Rational>({random_body<Rational>(rng, 3), random_body<Rational>(rng, 3)});
    CHECK(m.spans());
    CHECK(centroid_defect(m).isZero());
    for (const auto& a : m.atoms()) CHECK(a.weight > 0);
  }
}

TEST_CASE_TEMPLATE("integration", S, double, Rational) {
  Rng rng(35);
  const auto k = random_body<S>(rng, 3), l = random_body<S>(rng, 3);
  const auto m = area_measure(k);
  const double n_v = 3 * to_double(mixed_volume<S>({k, k, l}));
  CHECK(to_double(integrate(m, l)) == doctest::Approx(n_v));
  CHECK(to_double(integrate(m, sample_support(l, all_normals(m)))) == doctest::Approx(n_v));

  std::vector<S> nonneg;
  for (std::size_t i = 0; i < m.size(); ++i) nonneg.push_back(dyadic<S>(rng.uniform(0, 1)));
  CHECK(integrate(m, sample_support(l, all_normals(m)).with_values(nonneg)) >= 0);

  SupportSample<S> partial(3);
  partial.add(m.atoms()[0].normal, S(1));
  try {
    integrate(m, partial);
    FAIL("expected MissingDirection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingDirection);
  }
}

TEST_CASE("centroid defect") {
  Rng rng(36);
  const auto k = random_body<Rational>(rng, 3), l = random_body<Rational>(rng, 3);
  CHECK(centroid_defect(area_measure(k)).isZero());
  SurfaceMeasure<Rational> one(3);
  one.add(vec<Rational>({1, 0, 0}), 1);
  CHECK(vectors_equal(centroid_defect(one), vec<Rational>({1, 0, 0})));
  const auto kd = k.to_double(), ld = l.to_double();
  CHECK(centroid_defect_norm(area_measure(kd) + area_measure(ld)) <= 1e-10);
}

TEST_CASE("mixed volume is symmetric") {
  Rng rng(37);
  for (int n = 2; n <= 4; ++n) {
    std::vector<Polytope<Rational>> bodies;
    for (int j = 0; j < n; ++j) bodies.push_back(random_body<Rational>(rng, n, 4, 7));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    const Rational base = mixed_volume(bodies);
    while (std::next_permutation(perm.begin(), perm.end())) {
      std::vector<Polytope<Rational>> p;
      for (int j : perm) p.push_back(bodies[static_cast<std::size_t>(j)]);
      CHECK(mixed_volume(p) == base);
    }
  }
}

TEST_CASE("mixed volume is Minkowski multilinear") {
  Rng rng(38);
  for (int n = 2; n <= 3; ++n)
    for (int i = 0; i < 3; ++i) {
      std::vector<Polytope<Rational>> rest;
      for (int j = 1; j < n; ++j) rest.push_back(random_body<Rational>(rng, n, 4, 7));
      const auto a = random_body<Rational>(rng, n, 4, 7), b = random_body<Rational>(rng, n, 4, 7);
      auto with = [&](const Polytope<Rational>& first) {
        std::vector<Polytope<Rational>> v{first};
        v.insert(v.end(), rest.begin(), rest.end());
        return mixed_volume(v);
      };
      CHECK(with(minkowski_sum(a, b)) == with(a) + with(b));
      CHECK(with(scale(a, Rational(5, 3))) == Rational(5, 3) * with(a));
    }
}

TEST_CASE("first mixed volume bounds (Minkowski's inequality)") {
  Rng rng(39);
  for (int n = 2; n <= 4; ++n)
    for (int i = 0; i < 4; ++i) {
      const auto k = random_body<Rational>(rng, n), l = random_body<Rational>(rng, n);
      const Rational v = mixed_volume(k, n - 1, l, 1);
      Rational lhs = 1, rhs = 1;
      for (int j = 0; j < n; ++j) lhs *= v;
      for (int j = 0; j + 1 < n; ++j) rhs *= volume(k);
      rhs *= volume(l);
      CHECK(lhs >= rhs);
    }
}

TEST_CASE("measure arithmetic merges atoms") {
  SurfaceMeasure<Rational> m(2);
  m.add(vec<Rational>({2, 0}), 1);
  m.add(vec<Rational>({1, 0}), 3);
  CHECK(m.size() == 1);
  CHECK(m.total_mass() == doctest::Approx(5.0));
  SurfaceMeasure<double> d(2);
  d.add(VectorXd{{1, 0}}, 1.0);
  d.add(VectorXd{{1, 1e-12}}, 1.0);
  CHECK(d.size() == 1);
  d.add(VectorXd{{1, 1e-6}}, 1.0);
  CHECK(d.size() == 2);
  d.add(VectorXd{{0, 1}}, -1e-14);
  d.prune(1e-12);
  CHECK(d.size() == 2);
  d.add(VectorXd{{0, 1}}, -1.0);
  CHECK_THROWS_AS(d.prune(1e-12), Error);
}

}  // TEST_SUITE
