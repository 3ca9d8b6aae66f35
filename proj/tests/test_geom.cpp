#include "support.hpp"

using namespace cvx;
using namespace cvx::test;

namespace {

template <typename S>
HalfspaceSystem<S> square_system(double bound) {
  HalfspaceSystem<S> h;
  h.dim = 2;
  for (int j = 0; j < 2; ++j)
    for (int s : {-1, 1}) {
      Vector<S> u = Vector<S>::Zero(2);
      u(j) = S(s);
      h.add(u, ScalarTraits<S>::from_double(bound));
    }
  return h;
}

double shoelace(std::vector<VectorXd> pts) {
  VectorXd c = VectorXd::Zero(2);
  for (const auto& p : pts) c += p / static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const VectorXd& a, const VectorXd& b) {
    return std::atan2(a(1) - c(1), a(0) - c(0)) < std::atan2(b(1) - c(1), b(0) - c(0));
  });
  double area = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const VectorXd& a = pts[i];
    const VectorXd& b = pts[(i + 1) % pts.size()];
    area += a(0) * b(1) - a(1) * b(0);
  }
  return std::abs(area) / 2;
}

}  // namespace

TEST_SUITE("geom") {

TEST_CASE_TEMPLATE("hull of the unit square drops nothing", S, double, Rational) {
  const auto p = hull<S>({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(p.num_vertices() == 4);
  CHECK(p.full_dimensional());
  CHECK(volume(p) == S(1));
}

TEST_CASE_TEMPLATE("interior points are not vertices", S, double, Rational) {
  const auto p = hull<S>({{0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}, {0.25, 0.25}});
  CHECK(p.num_vertices() == 3);
  CHECK(volume(p) == S(1) / S(2));
}

TEST_CASE("lower-dimensional hulls are refused unless requested") {
  CHECK_THROWS_AS(hull<Rational>({{0, 0}, {1, 1}, {2, 2}}), Error);
  const auto seg = hull<Rational>({{0, 0}, {1, 1}, {2, 2}}, true);
  CHECK(seg.affine_dim() == 1);
  CHECK(seg.num_vertices() == 2);
  CHECK(volume(seg) == 0);
  CHECK_THROWS_AS(seg.facets(), Error);
}

TEST_CASE("hull volume agrees with Monte Carlo membership counting") {
  Rng rng(11);
  std::vector<VectorXq> pts;
  for (int i = 0; i < 50; ++i) {
    VectorXq x(3);
    for (int j = 0; j < 3; ++j) x(j) = dyadic<Rational>(rng.uniform(-1.0, 1.0));
    pts.push_back(x);
  }
  const auto p = convex_hull(pts);
  const auto pd = p.to_double();
  const int samples = 400000;
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    VectorXd x(3);
    for (int j = 0; j < 3; ++j) x(j) = rng.uniform(-1.0, 1.0);
    if (inside(pd, x)) ++hits;
  }
  const double mc = 8.0 * hits / samples;
  CHECK(std::abs(mc - to_double(volume(p))) <= 0.01 * to_double(volume(p)));
  CHECK(std::abs(volume(pd) - to_double(volume(p))) <= 1e-12);
}

TEST_CASE_TEMPLATE("halfspace intersection", S, double, Rational) {
  const auto sq = halfspace_intersection(square_system<S>(1));
  CHECK(sq.num_vertices() == 4);
  CHECK(volume(sq) == S(4));

  auto redundant = square_system<S>(1);
  redundant.add(vec<S>({1, 1}), ScalarTraits<S>::from_double(2 * std::sqrt(2.0)));
  const auto d = detail::intersect_halfspaces(redundant);
  CHECK(d.polytope.num_vertices() == 4);
  CHECK(d.polytope.facets().size() == 4);
  CHECK(d.facet_of_constraint.back() == -1);

  HalfspaceSystem<S> open;
  open.dim = 2;
  open.add(vec<S>({1, 0}), S(1));
  open.add(vec<S>({0, 1}), S(1));
  try {
    halfspace_intersection(open);
    FAIL("expected Unbounded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unbounded);
  }

  HalfspaceSystem<S> empty = square_system<S>(1);
  empty.add(vec<S>({1, 0}), S(-2));
  try {
    halfspace_intersection(empty);
    FAIL("expected Empty");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Empty);
  }
}

TEST_CASE("V to H to V round-trips exactly") {
  Rng rng(12);
  for (int n = 2; n <= 4; ++n)
    for (int i = 0; i < 5; ++i) {
      const auto p = random_body<Rational>(rng, n);
      HalfspaceSystem<Rational> h;
      h.dim = n;
      for (const auto& f : p.facets()) h.add(f.normal, f.offset);
      CHECK(same_vertices(halfspace_intersection(h), p));
    }
}

TEST_CASE_TEMPLATE("volumes", S, double, Rational) {
  CHECK(volume(cube<S>(3)) == S(1));
  CHECK(volume(simplex<S>(3)) == S(1) / S(6));
  Rng rng(13);
  const auto k = random_body<S>(rng, 3);
  const S v3 = volume(scale(k, S(3)));
  if constexpr (ScalarTraits<S>::exact)
    CHECK(v3 == S(27) * volume(k));
  else
    CHECK(rel_err(v3, 27 * volume(k)) <= 1e-12);
}

TEST_CASE_TEMPLATE("facets of the square, cube and triangle", S, double, Rational) {
  const auto sq = cube<S>(2);
  REQUIRE(sq.facets().size() == 4);
  for (const auto& f : sq.facets()) CHECK(f.area() == doctest::Approx(1.0));
  const auto c = cube<S>(3);
  REQUIRE(c.facets().size() == 6);
  for (const auto& f : c.facets()) CHECK(f.area() == doctest::Approx(1.0));

  const auto t = simplex<S>(2);
  REQUIRE(t.facets().size() == 3);
  int axis = 0, diagonal = 0;
  for (const auto& f : t.facets()) {
    const VectorXd u = f.unit_normal();
    if (std::abs(u(0) + 1) < 1e-12 || std::abs(u(1) + 1) < 1e-12) {
      CHECK(f.area() == doctest::Approx(1.0));
      ++axis;
    } else {
      CHECK(u(0) == doctest::Approx(std::sqrt(0.5)));
      CHECK(u(1) == doctest::Approx(std::sqrt(0.5)));
      CHECK(f.area() == doctest::Approx(std::sqrt(2.0)));
      ++diagonal;
    }
  }
  CHECK(axis == 2);
  CHECK(diagonal == 1);
}

TEST_CASE("closedness of facet data") {
  Rng rng(14);
  for (int n = 2; n <= 4; ++n)
    for (int i = 0; i < 5; ++i) {
      const auto p = random_body<Rational>(rng, n);
      VectorXq sum = VectorXq::Zero(n);
      for (const auto& f : p.facets()) sum += f.normal * f.weight;
      CHECK(sum.isZero());
      const auto pd = p.to_double();
      VectorXd sd = VectorXd::Zero(n);
      for (const auto& f : pd.facets()) sd += f.normal * f.weight;
      CHECK(sd.norm() <= 1e-10);
    }
}

TEST_CASE("volume from facets with an interior apex") {
  Rng rng(15);
  for (int n = 2; n <= 4; ++n) {
    const auto p = random_body<Rational>(rng, n);
    const auto c = translate(p, VectorXq(-detail::vertex_centroid(p.vertices())));
    Rational sum = 0;
    for (const auto& f : c.facets()) sum += f.offset * f.weight;
    CHECK(sum / n == volume(p));
  }
}

TEST_CASE_TEMPLATE("Minkowski sums", S, double, Rational) {
  const auto sq = cube<S>(2);
  CHECK(same_vertices(minkowski_sum(sq, sq), box<S>({2, 2}), 1e-12));

  const auto big = hull<S>({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  const auto diamond = cross<S>(2);
  const auto oct = minkowski_sum(big, diamond);
  CHECK(oct.num_vertices() == 8);
  std::vector<VectorXd> pts;
  for (const auto& v : oct.vertices()) pts.push_back(to_double(v));
  CHECK(to_double(volume(oct)) == doctest::Approx(shoelace(pts)));
  CHECK(to_double(volume(oct)) == doctest::Approx(14.0));
  // 4 + 2 V + 2 with the polarization value of V.
  CHECK(to_double(mixed_volume(big, 1, diamond, 1)) == doctest::Approx(4.0));
  if constexpr (ScalarTraits<S>::exact) CHECK(volume(oct) == S(6) + S(2) * mixed_volume(big, 1, diamond, 1));

  const auto point = hull<S>({{3, -2}}, true);
  CHECK(same_vertices(minkowski_sum(sq, point), translate(sq, vec<S>({3, -2})), 1e-12));
  CHECK_THROWS_AS(minkowski_sum(sq, cube<S>(3)), Error);
}

TEST_CASE_TEMPLATE("support additivity and translation", S, double, Rational) {
  Rng rng(16);
  for (int i = 0; i < 10; ++i) {
    const int n = 2 + i % 3;
    const auto p = random_body<S>(rng, n), r = random_body<S>(rng, n);
    const auto sum = minkowski_sum(p, r);
    Vector<S> t(n);
    for (int j = 0; j < n; ++j) t(j) = dyadic<S>(rng.uniform(-1, 1));
    const auto shifted = translate(p, t);
    for (int k = 0; k < 5; ++k) {
      const Vector<S> u = random_direction<S>(rng, n);
      const S a = support_value(sum, u), b = support_value(p, u) + support_value(r, u);
      const S c = support_value(shifted, u), d = support_value(p, u) + t.dot(u);
      if constexpr (ScalarTraits<S>::exact) {
        CHECK(a == b);
        CHECK(c == d);
      } else {
        CHECK(std::abs(a - b) <= 1e-12);
        CHECK(std::abs(c - d) <= 1e-12);
      }
    }
  }
  const auto sq = hull<S>({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  CHECK(support_value(sq, vec<S>({1, 0})) == S(1));
  CHECK(support_value(sq, vec<S>({3, 0})) == S(3));
  CHECK_THROWS_AS(support_value(sq, vec<S>({0, 0})), Error);
}

TEST_CASE_TEMPLATE("scale and translate", S, double, Rational) {
  const auto t = simplex<S>(2);
  CHECK(same_vertices(scale_translate(t, S(1), Vector<S>(Vector<S>::Zero(2))), t));
  const auto point = scale_translate(t, S(0), vec<S>({2, 5}));
  CHECK(point.num_vertices() == 1);
  CHECK(vectors_equal(point.vertices()[0], vec<S>({2, 5})));
  CHECK(volume(scale(t, S(2))) == S(4) * volume(t));
  CHECK_THROWS_AS(scale(t, S(-1)), Error);
}

TEST_CASE("coordinate projections") {
  const auto c = cube<Rational>(3);
  CHECK(same_vertices(project_out(c, 1), cube<Rational>(2)));
  const auto seg = project_out(simplex<Rational>(2), 1);
  CHECK(seg.dim() == 1);
  CHECK(volume(seg) == 1);

  Rng rng(17);
  for (int i = 0; i < 5; ++i) {
    const auto p = random_body<Rational>(rng, 3);
    const auto bigger = minkowski_sum(p, scale(cube<Rational>(3), Rational(1, 4)));
    for (int j = 0; j < 3; ++j) {
      const auto pj = project_out(p, j);
      CHECK(volume(pj) >= 0);
      CHECK(volume(project_out(bigger, j)) >= volume(pj));
      for (int k = 0; k < 4; ++k) {
        const VectorXq w = random_direction<Rational>(rng, 2);
        VectorXq u(3);
        for (int a = 0, b = 0; a < 3; ++a) u(a) = a == j ? Rational(0) : w(b++);
        CHECK(support_value(pj, w) == support_value(p, u));
      }
    }
  }
}

TEST_CASE("Hausdorff distance") {
  Rng rng(18);
  const auto p = random_body<double>(rng, 2);
  CHECK(hausdorff_distance(p, p) == 0.0);
  const VectorXd t = VectorXd{{0.3, -0.4}};
  CHECK(hausdorff_distance(p, translate(p, t)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hausdorff_up_to_translation(p, translate(p, t)) <= 1e-12);
  const auto sq = hull<double>({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  CHECK(hausdorff_distance(sq, scale(sq, 1.1)) == doctest::Approx(0.1 * std::sqrt(2.0)));
  const auto p3 = random_body<double>(rng, 3);
  CHECK(hausdorff_distance(p3, scale(p3, 2.0)) == doctest::Approx(hausdorff_distance(scale(p3, 2.0), p3)));
}

TEST_CASE_TEMPLATE("relative inradius examples", S, double, Rational) {
  Rng rng(19);
  const auto k = random_body<S>(rng, 3);
  CHECK(to_double(relative_inradius(k, k).ratio) == doctest::Approx(1.0));
  CHECK(to_double(relative_inradius(scale(k, S(2)), k).ratio) == doctest::Approx(2.0));
  const auto sq = hull<S>({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  CHECK(to_double(relative_inradius(sq, cross<S>(2)).ratio) == doctest::Approx(1.0));
}

TEST_CASE("relative inradius against grid search") {
  Rng rng(20);
  for (int i = 0; i < 6; ++i) {
    const auto k = random_body<double>(rng, 2), l = random_body<double>(rng, 2);
    const double r = relative_inradius(k, l).ratio;
    // Best lambda on a grid of translations and dilations.
    double best = 0.0;
    const int steps = 60;
    for (int a = 0; a <= steps; ++a)
      for (int b = 0; b <= steps; ++b) {
        const VectorXd t{{-1.5 + 3.0 * a / steps, -1.5 + 3.0 * b / steps}};
        double lo = best, hi = 10.0;
        auto fits = [&](double lambda) {
          for (const auto& v : l.vertices())
            if (!inside(k, lambda * v + t)) return false;
          return true;
        };
        if (!fits(lo)) continue;
        for (int it = 0; it < 40; ++it) {
          const double mid = (lo + hi) / 2;
          (fits(mid) ? lo : hi) = mid;
        }
        best = lo;
      }
    CHECK(best <= r * (1 + 1e-9));
    CHECK(best >= r * 0.9);
  }
}

TEST_CASE_TEMPLATE("relative inradius witness is tight", S, double, Rational) {
  Rng rng(21);
  for (int i = 0; i < 6; ++i) {
    const int n = 2 + i % 2;
    const auto k = random_body<S>(rng, n), l = random_body<S>(rng, n);
    const auto in = relative_inradius(k, l);
    CHECK(contains(k, scale_translate(l, in.ratio, in.translation)));
    const S grown = in.ratio * (S(1) + ScalarTraits<S>::from_double(1e-6));
    CHECK_FALSE(contains(k, scale_translate(l, grown, in.translation)));
  }
}

}  // TEST_SUITE
