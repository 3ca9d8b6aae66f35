#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include <Eigen/LU>

#include "support.hpp"

using namespace cvx;
using namespace cvx::test;

namespace {

using MatrixXq = Matrix<Rational>;

Rational binomial(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// V(A^k, B^{n-k}) for axis boxes with side vectors a and b.
Rational box_mixed(const std::vector<Rational>& a, const std::vector<Rational>& b, int k) {
  const int n = static_cast<int>(a.size());
  Rational sum = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    Rational p = 1;
    for (int i = 0; i < n; ++i) p *= (mask >> i) & 1u ? a[i] : b[i];
    sum += p;
  }
  return sum / binomial(n, k);
}

Polytope<Rational> qbox(const std::vector<Rational>& sides) {
  const int n = static_cast<int>(sides.size());
  std::vector<VectorXq> v;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    VectorXq p(n);
    for (int j = 0; j < n; ++j) p(j) = (mask >> j) & 1u ? sides[j] : Rational(0);
    v.push_back(p);
  }
  return convex_hull(v);
}

Rational leibniz_det(const MatrixXq& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Rational p = 1;
    for (int i = 0; i < n; ++i) p *= m(i, perm[i]);
    total += inversions % 2 ? -p : p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Mixed discriminant of diagonal matrices: the permanent of the diagonals over n!.
Rational diagonal_mixed(const std::vector<std::vector<Rational>>& diags) {
  const int n = static_cast<int>(diags.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0, fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  do {
    Rational p = 1;
    for (int i = 0; i < n; ++i) p *= diags[i][perm[i]];
    total += p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / fact;
}

SymmetricMatrix<Rational> diag(const std::vector<Rational>& d) {
  MatrixXq m = MatrixXq::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return SymmetricMatrix<Rational>(m);
}

Polytope<double> unit_square() { return cube<double>(2); }
Polytope<double> unit_triangle() { return simplex<double>(2); }

}  // namespace

TEST_SUITE("inequalities") {

TEST_CASE_TEMPLATE("Brunn-Minkowski", S, double, Rational) {
  const auto sq = cube<S>(2), tri = simplex<S>(2);
  const auto same = check_brunn_minkowski(sq, sq);
  CHECK(same.pass);
  CHECK(same.equality);
  CHECK(same.detector.value());

  const auto strict = check_brunn_minkowski(sq, tri);
  CHECK(strict.pass);
  CHECK(strict.slack > 0);
  CHECK_FALSE(strict.equality);
  CHECK_FALSE(strict.detector.value());
  // [0,1]^2 + T has area 1 + 2 V + 1/2 with V = 1: a pentagon of area 7/2.
  CHECK(strict.lhs == doctest::Approx(std::sqrt(3.5)));
  CHECK(strict.rhs == doctest::Approx(1 + std::sqrt(0.5)));

  Rng rng(61);
  const auto k = random_body<S>(rng, 3);
  const auto l = scale_translate(k, S(2), vec<S>({0.5, -1, 0.25}));
  const auto hom = check_brunn_minkowski(k, l);
  CHECK(hom.equality);
  CHECK(std::abs(hom.slack) <= 1e-9 * std::max(1.0, hom.rhs));
  CHECK(hom.detector.value());
  CHECK(hom.find_witness("vol_sum").has_value());
}

TEST_CASE("Kneser-Suss") {
  Rng rng(62);
  for (int n = 2; n <= 3; ++n) {
    const auto k = random_body<double>(rng, n);
    const auto same = check_kneser_suss(k, k);
    CHECK(same.pass);
    CHECK(same.equality);
    CHECK(same.find_witness("vol_blaschke_sum").value() ==
          doctest::Approx(std::pow(2.0, n / (n - 1.0)) * volume(k)).epsilon(1e-6));
  }
  const auto k = random_body<double>(rng, 2), l = random_body<double>(rng, 2);
  const auto ks = check_kneser_suss(k, l), bm = check_brunn_minkowski(k, l);
  CHECK(ks.lhs == doctest::Approx(bm.lhs).epsilon(1e-8));
  CHECK(ks.rhs == doctest::Approx(bm.rhs).epsilon(1e-12));

  const auto co = check_kneser_suss(cube<double>(3), cross<double>(3));
  CHECK(co.pass);
  CHECK_FALSE(co.equality);
  CHECK(co.slack > 1e-3);
}

TEST_CASE_TEMPLATE("Diskant bound", S, double, Rational) {
  Rng rng(63);
  for (int n = 2; n <= 3; ++n) {
    const auto k = random_body<S>(rng, n);
    const auto same = check_diskant_bound(k, k);
    CHECK(same.lhs == doctest::Approx(1.0));
    CHECK(same.rhs == doctest::Approx(1.0 / n));
    CHECK(same.pass);
    CHECK_FALSE(same.equality);
    const auto twice = check_diskant_bound(scale(k, S(2)), k);
    CHECK(twice.lhs == doctest::Approx(2.0));
    CHECK(twice.rhs == doctest::Approx(2.0 / n));
    for (int i = 0; i < 5; ++i) CHECK(check_diskant_bound(random_body<S>(rng, n), random_body<S>(rng, n)).pass);
  }
}

TEST_CASE_TEMPLATE("Morse", S, double, Rational) {
  const auto k = box<S>({3, 3}), l = cube<S>(2);
  const auto r = check_morse(k, l);
  CHECK(r.rhs == doctest::Approx(3.0));
  CHECK(r.lhs == doctest::Approx(4.0));
  CHECK(r.pass);
  CHECK(r.find_witness("positivity").value() == 1.0);
  CHECK(r.find_witness("inradius").value() == doctest::Approx(3.0));

  const auto same = check_morse(k, k);
  CHECK(same.rhs < 0);
  CHECK(same.pass);
  CHECK(same.find_witness("vacuous").has_value());

  const auto big = scale(simplex<S>(2), S(5));
  const auto vac = check_morse(cube<S>(2), big);
  CHECK(vac.rhs < 0);
  CHECK(vac.pass);

  Rng rng(64);
  int positive = 0;
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 2;
    const auto kk = random_body<S>(rng, n);
    const auto ll = scale(random_body<S>(rng, n), dyadic<S>(rng.uniform(0.05, 0.3)));
    const auto m = check_morse(kk, ll);
    CHECK(m.pass);
    if (m.rhs > 0) {
      ++positive;
      CHECK(m.find_witness("positivity").value() == 1.0);
    }
  }
  CHECK(positive > 0);
}

TEST_CASE("reverse Khovanskii-Teissier") {
  Rng rng(65);
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k < n; ++k) {
      const auto p = random_body<Rational>(rng, n, 4, 7);
      const auto same = check_reverse_kt(p, p, p, k);
      const double v = to_double(volume(p));
      CHECK(same.lhs == doctest::Approx(v * v));
      CHECK(same.find_witness("factor").value() == doctest::Approx(to_double(Rational(1) / binomial(n, k))));
      CHECK(same.pass);
      CHECK_FALSE(same.equality);
    }

  // Axis boxes have closed-form mixed volumes.
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k < n; ++k) {
      std::vector<Rational> a, b, c;
      for (int j = 0; j < n; ++j) {
        a.push_back(Rational(rng.uniform_int(1, 8), 4));
        b.push_back(Rational(rng.uniform_int(1, 8), 4));
        c.push_back(Rational(rng.uniform_int(1, 8), 4));
      }
      const auto r = check_reverse_kt(qbox(a), qbox(b), qbox(c), k);
      Rational vol_b = 1;
      for (const auto& x : b) vol_b *= x;
      const Rational lhs = box_mixed(a, b, k) * box_mixed(b, c, k);
      const Rational rhs = vol_b * box_mixed(a, c, k) / binomial(n, k);
      CHECK(r.lhs == doctest::Approx(to_double(lhs)));
      CHECK(r.rhs == doctest::Approx(to_double(rhs)));
      CHECK(r.pass == (lhs >= rhs));
      CHECK(r.pass);
    }

  for (int i = 0; i < 10; ++i) {
    const auto k = random_body<Rational>(rng, 3, 4, 8), l = random_body<Rational>(rng, 3, 4, 8),
               m = random_body<Rational>(rng, 3, 4, 8);
    CHECK(check_reverse_kt(k, l, m, 1 + i % 2).pass);
  }
  CHECK_THROWS_AS(check_reverse_kt(cube<Rational>(2), cube<Rational>(2), cube<Rational>(2), 2), Error);
}

TEST_CASE("the reverse Khovanskii-Teissier constant cannot be raised by half") {
  // Informational: thin boxes push the ratio down to the constant itself.
  Rng rng(66);
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k < n; ++k) {
      double worst = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 6; ++i) {
        const Rational eps(1, static_cast<long>(rng.uniform_int(16, 256)));
        std::vector<Rational> a, c, one(static_cast<std::size_t>(n), Rational(1));
        for (int j = 0; j < n; ++j) {
          a.push_back(j < k ? Rational(1) : eps);
          c.push_back(j < k ? eps : Rational(1));
        }
        const auto r = check_reverse_kt(qbox(a), qbox(one), qbox(c), k);
        worst = std::min(worst, r.find_witness("ratio").value());
      }
      const double factor = to_double(Rational(1) / binomial(n, k));
      CHECK(worst >= factor);
      CHECK(worst < 1.5 * factor);
    }
}

TEST_CASE("determinants and mixed discriminants") {
  Rng rng(67);
  for (int n = 1; n <= 5; ++n) {
    MatrixXq m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Rational(rng.uniform_int(-5, 5), rng.uniform_int(1, 4));
    CHECK(determinant(m) == leibniz_det(m));
  }
  MatrixXq singular(2, 2);
  singular << 1, 2, 2, 4;
  CHECK(determinant(singular) == 0);

  for (int n = 2; n <= 4; ++n) {
    const SymmetricMatrix<Rational> id(MatrixXq::Identity(n, n));
    CHECK(mixed_discriminant(std::vector<SymmetricMatrix<Rational>>(static_cast<std::size_t>(n), id)) == 1);
  }
  CHECK(mixed_discriminant<Rational>({diag({1, 2}), diag({3, 4})}) == 5);

  for (int i = 0; i < 5; ++i) {
    const auto a = random_spd<Rational>(rng, 2), b = random_spd<Rational>(rng, 2);
    const Rational expected =
        (determinant<Rational>(a.matrix() + b.matrix()) - determinant(a.matrix()) - determinant(b.matrix())) / 2;
    CHECK(mixed_discriminant<Rational>({a, b}) == expected);
    const auto c = random_spd<Rational>(rng, 3), d = random_spd<Rational>(rng, 3), e = random_spd<Rational>(rng, 3);
    const Rational base = mixed_discriminant<Rational>({c, d, e});
    CHECK(mixed_discriminant<Rational>({d, e, c}) == base);
    CHECK(mixed_discriminant<Rational>({e, c, d}) == base);
    CHECK(mixed_discriminant<Rational>({d, c, e}) == base);
  }

  std::vector<std::vector<Rational>> diags;
  std::vector<SymmetricMatrix<Rational>> ms;
  for (int j = 0; j < 4; ++j) {
    std::vector<Rational> d;
    for (int i = 0; i < 4; ++i) d.push_back(Rational(rng.uniform_int(1, 9), rng.uniform_int(1, 3)));
    diags.push_back(d);
    ms.push_back(diag(d));
  }
  CHECK(mixed_discriminant(ms) == diagonal_mixed(diags));

  MatrixXq asym(2, 2);
  asym << 1, 2, 3, 4;
  CHECK_THROWS_AS(SymmetricMatrix<Rational>{asym}, Error);
  MatrixXq indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK_FALSE(SymmetricMatrix<Rational>(indefinite).positive_definite());
}

TEST_CASE("mixed discriminant Khovanskii-Teissier") {
  for (int n = 2; n <= 5; ++n) {
    const SymmetricMatrix<Rational> id(MatrixXq::Identity(n, n));
    for (int k = 1; k < n; ++k) {
      const auto r = check_mixed_discriminant_kt(id, id, id, k);
      CHECK(r.lhs == 1.0);
      CHECK(r.rhs == doctest::Approx(to_double(Rational(1) / binomial(n, k))));
      CHECK(r.pass);
    }
  }
  // Diagonal n = 3, k = 1: each D(X, Y, Y) is (1/3) sum_i x_i prod_{j != i} y_j.
  const std::vector<Rational> a{1, 2, 3}, b{2, 1, 4}, c{5, 1, 1};
  auto d1 = [](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    return (x[0] * y[1] * y[2] + x[1] * y[0] * y[2] + x[2] * y[0] * y[1]) / 3;
  };
  const auto r = check_mixed_discriminant_kt(diag(a), diag(b), diag(c), 1);
  CHECK(r.lhs == doctest::Approx(to_double(d1(a, b) * d1(b, c))));
  CHECK(r.rhs == doctest::Approx(to_double(Rational(1, 3) * b[0] * b[1] * b[2] * d1(a, c))));
  CHECK(r.pass);

  Rng rng(68);
  for (int i = 0; i < 40; ++i) {
    const int n = 2 + i % 4;
    const auto x = random_spd<Rational>(rng, n), y = random_spd<Rational>(rng, n), z = random_spd<Rational>(rng, n);
    CHECK(check_mixed_discriminant_kt(x, y, z, 1 + i % (n - 1)).pass);
  }
  MatrixXq indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  const SymmetricMatrix<Rational> bad(indefinite), id(MatrixXq::Identity(2, 2));
  CHECK_THROWS_AS(check_mixed_discriminant_kt(bad, id, id, 1), Error);
}

TEST_CASE_TEMPLATE("Loomis-Whitney and the box bound", S, double, Rational) {
  const auto c = cube<S>(3);
  const auto lw = check_loomis_whitney(c);
  CHECK(lw.equality);
  CHECK(lw.detector.value());
  const auto t = simplex<S>(2);
  const auto lt = check_loomis_whitney(t);
  CHECK(lt.lhs == doctest::Approx(1.0));
  CHECK(lt.rhs == doctest::Approx(0.5));
  CHECK(lt.pass);
  CHECK_FALSE(lt.equality);
  CHECK_FALSE(lt.detector.value());

  const auto bx = check_box_bound(box<S>({2, 0.5, 3}));
  CHECK(bx.equality);
  CHECK(bx.detector.value());
  CHECK(bx.label == "convex analogue");
  const auto diamond = check_box_bound(cross<S>(2));
  CHECK(diamond.lhs == doctest::Approx(4.0));
  CHECK(diamond.rhs == doctest::Approx(2.0));
  CHECK(diamond.pass);

  Rng rng(69);
  for (int i = 0; i < 10; ++i) {
    const auto p = random_body<S>(rng, 2 + i % 2);
    CHECK(check_loomis_whitney(p).pass);
    CHECK(check_box_bound(p).pass);
  }
}

TEST_CASE("mixed body volume bound") {
  Rng rng(70);
  const auto k = random_body<double>(rng, 3);
  const auto same = check_mixed_body_volume<double>({k, k});
  CHECK(same.equality);
  CHECK(same.detector.value());
  const auto c = cube<double>(3);
  const auto dil = check_mixed_body_volume<double>({c, scale(c, 2.5)});
  CHECK(dil.equality);
  CHECK(dil.detector.value());
  const auto co = check_mixed_body_volume<double>({c, cross<double>(3)});
  CHECK(co.pass);
  CHECK_FALSE(co.equality);
  CHECK_FALSE(co.detector.value());
  CHECK(co.label == "convex analogue");
  CHECK_THROWS_AS(check_mixed_body_volume<double>({c}), Error);
}

TEST_CASE("improved Brunn-Minkowski chain") {
  Rng rng(71);
  const auto k = random_body<double>(rng, 3);
  const auto same = check_improved_bm(k, k);
  CHECK(same.equality);
  CHECK(same.find_witness("equality_upper").value() == 1.0);
  CHECK(same.find_witness("equality_lower").value() == 1.0);
  const auto hom = check_improved_bm(k, scale_translate(k, 1.75, VectorXd{{1, 0, -1}}));
  CHECK(hom.equality);
  CHECK(hom.find_witness("equality_upper").value() == 1.0);
  CHECK(hom.find_witness("equality_lower").value() == 1.0);

  // In the plane [K, L]_i are K and L themselves, so the lower link is an identity
  // and only the outer chain is strict.
  const auto st = check_improved_bm(unit_square(), unit_triangle());
  CHECK(st.pass);
  CHECK_FALSE(st.equality);
  CHECK(st.find_witness("slack_upper").value() > 0);
  CHECK(st.find_witness("equality_lower").value() == 1.0);
  CHECK(st.find_witness("middle").value() < st.lhs);

  const auto co = check_improved_bm(cube<double>(3), cross<double>(3));
  CHECK(co.pass);
  CHECK(co.slack > 0);
  CHECK(co.find_witness("middle").value() < co.lhs);
  CHECK(co.find_witness("middle").value() > co.rhs);
}

TEST_CASE("log-concavity of mixed body volumes") {
  Rng rng(72);
  const auto k = random_body<double>(rng, 3);
  const auto hom = check_log_concavity(k, scale(k, 2.0));
  CHECK(hom.equality);
  CHECK(hom.pass);
  CHECK(hom.find_witness("vol_mixed_body_0").value() == doctest::Approx(volume(k)));
  CHECK(hom.find_witness("vol_mixed_body_2").value() == doctest::Approx(8 * volume(k)));
  // S([K, 2K]_1) = 2 S(K), so the middle body is sqrt 2 K.
  CHECK(hom.find_witness("vol_mixed_body_1").value() == doctest::Approx(std::pow(2.0, 1.5) * volume(k)).epsilon(1e-6));
  const auto co = check_log_concavity(cube<double>(3), cross<double>(3));
  CHECK(co.pass);
  CHECK_FALSE(co.equality);
  CHECK_THROWS_AS(check_log_concavity(unit_square(), unit_triangle()), Error);
}

TEST_CASE("linearity of the first mixed volume") {
  const auto k = box<Rational>({1, 2, 3}), l1 = box<Rational>({2, 1, 1}), l2 = box<Rational>({1, 1, 4});
  const auto r = check_mixed_volume_linearity(k, l1, l2);
  CHECK(r.equality);
  CHECK(r.pass);
  // V(K^2, L) for boxes is (a2 a3 b1 + a1 a3 b2 + a1 a2 b3) / 3.
  CHECK(r.find_witness("V(K^{n-1},L1)").value() == doctest::Approx((6.0 * 2 + 3 * 1 + 2 * 1) / 3));
  Rng rng(73);
  for (int i = 0; i < 6; ++i) {
    const int n = 2 + i % 2;
    CHECK(check_mixed_volume_linearity(random_body<Rational>(rng, n), random_body<Rational>(rng, n),
                                       random_body<Rational>(rng, n))
              .equality);
  }
  const auto point = hull<Rational>({{1, 1, 1}}, true);
  const auto rp = check_mixed_volume_linearity(k, l1, point);
  CHECK(rp.equality);
  CHECK(rp.find_witness("V(K^{n-1},L2)").value() == 0.0);
}

TEST_CASE("homothety detector") {
  Rng rng(74);
  for (int i = 0; i < 10; ++i) {
    const int n = 2 + i % 2;
    const auto k = random_body<double>(rng, n);
    VectorXd t = VectorXd::Constant(n, rng.uniform(-1, 1));
    const double lambda = rng.uniform(0.2, 5);
    const auto h = detect_homothety(k, scale_translate(k, lambda, t));
    CHECK(h.homothetic);
    CHECK(h.lambda == doctest::Approx(lambda));
    CHECK((h.translation - t).norm() <= 1e-9);
    CHECK_FALSE(detect_homothety(k, random_body<double>(rng, n)).homothetic);
  }
  CHECK_FALSE(detect_homothety(cube<double>(2), simplex<double>(2)).homothetic);
  CHECK_FALSE(detect_homothety(cube<double>(3), cross<double>(3)).homothetic);
  CHECK(is_axis_box(box<Rational>({1, 2})));
  CHECK_FALSE(is_axis_box(cross<Rational>(2)));
}

TEST_CASE("triangles only split into homothets") {
  Rng rng(75);
  const auto t = hull<double>({{0, 0}, {2, 0.5}, {0.5, 1.5}});
  const auto s = area_measure(t);
  std::vector<VectorXd> normals;
  for (const auto& a : s.atoms()) normals.push_back(a.unit_normal());
  Eigen::MatrixXd n(2, 3);
  for (int j = 0; j < 3; ++j) n.col(j) = normals[static_cast<std::size_t>(j)];
  for (int i = 0; i < 10; ++i) {
    // A random positive split of the edge lengths, closed up by projection
    // onto the kernel of the normal matrix, which is one-dimensional.
    Eigen::VectorXd w(3);
    for (int j = 0; j < 3; ++j) w(j) = rng.uniform(0.1, 1.0) * s.atoms()[static_cast<std::size_t>(j)].mass();
    const Eigen::VectorXd kernel = n.fullPivLu().kernel().col(0);
    const Eigen::VectorXd closed = kernel * (kernel.dot(w) / kernel.squaredNorm());
    SurfaceMeasure<double> part(2);
    const double sign = closed(0) > 0 ? 1.0 : -1.0;
    for (int j = 0; j < 3; ++j) part.add(normals[static_cast<std::size_t>(j)], sign * closed(j));
    const auto piece = solve_minkowski(part);
    CHECK(detect_homothety(t, piece.body).homothetic);

    const double lambda = rng.uniform(0.1, 0.9);
    const VectorXd shift{{rng.uniform(-1, 1), rng.uniform(-1, 1)}};
    const auto m = scale_translate(t, lambda, shift), d = scale_translate(t, 1 - lambda, VectorXd(-shift));
    CHECK(same_vertices(minkowski_sum(m, d), t, 1e-12));
    CHECK(detect_homothety(t, m).homothetic);
    CHECK(detect_homothety(t, d).homothetic);
  }
  // A summand that is not a homothet always adds edges.
  const auto sum = minkowski_sum(t, unit_square());
  CHECK(sum.facets().size() > 3);
}

}  // TEST_SUITE
