#ifndef CVX_TESTS_SUPPORT_HPP
#define CVX_TESTS_SUPPORT_HPP

#include <cmath>
#include <initializer_list>
#include <vector>

#include <doctest.h>

#include "cvx/alexandrov.hpp"
#include "cvx/random.hpp"
#include "cvx/toric.hpp"

namespace cvx::test {

inline Rational q(const char* text) { return parse_rational(text); }

template <typename S>
Vector<S> vec(std::initializer_list<double> xs) {
  Vector<S> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = ScalarTraits<S>::from_double(x);
  return v;
}

template <typename S>
Polytope<S> hull(std::initializer_list<std::initializer_list<double>> pts, bool allow_lower = false) {
  std::vector<Vector<S>> v;
  for (const auto& p : pts) v.push_back(vec<S>(p));
  return convex_hull(v, allow_lower);
}

/// Axis box [0, s_1] x ... x [0, s_n].
template <typename S>
Polytope<S> box(const std::vector<double>& sides) {
  const int n = static_cast<int>(sides.size());
  std::vector<Vector<S>> v;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Vector<S> p(n);
    for (int j = 0; j < n; ++j) p(j) = (mask >> j) & 1u ? ScalarTraits<S>::from_double(sides[j]) : S(0);
    v.push_back(p);
  }
  return convex_hull(v);
}

template <typename S>
Polytope<S> cube(int n) {
  return box<S>(std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

/// Cross-polytope conv{+-e_i}.
template <typename S>
Polytope<S> cross(int n) {
  std::vector<Vector<S>> v;
  for (int j = 0; j < n; ++j)
    for (int s : {-1, 1}) {
      Vector<S> e = Vector<S>::Zero(n);
      e(j) = S(s);
      v.push_back(e);
    }
  return convex_hull(v);
}

template <typename S>
Polytope<S> simplex(int n) {
  std::vector<Vector<S>> v{Vector<S>::Zero(n)};
  for (int j = 0; j < n; ++j) {
    Vector<S> e = Vector<S>::Zero(n);
    e(j) = S(1);
    v.push_back(e);
  }
  return convex_hull(v);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

template <typename S>
Polytope<S> random_body(Rng& rng, int n, int lo = 4, int hi = 12) {
  return random_polytope<S>(rng, n, static_cast<int>(rng.uniform_int(std::max(lo, n + 1), hi)));
}

/// Point-in-polytope by facet inequalities with unit normals.
inline bool inside(const Polytope<double>& p, const VectorXd& x) {
  for (const auto& f : p.facets())
    if (f.unit_normal().dot(x) > f.unit_offset()) return false;
  return true;
}

}  // namespace cvx::test

#endif
