#include "cvx/random.hpp"

#include <cmath>
#include <numbers>

namespace cvx {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

VectorXd ball_point(Rng& rng, int n) {
  VectorXd x(n);
  do {
    for (int j = 0; j < n; ++j) x(j) = rng.uniform(-1.0, 1.0);
  } while (x.squaredNorm() > 1.0);
  return x;
}

}  // namespace

long Rng::uniform_int(long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = bits();
  while (x >= limit);
  return lo + static_cast<long>(x % span);
}

double Rng::normal() {
  const double u = 1.0 - uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t tag) { return Rng(splitmix(splitmix(seed) ^ splitmix(tag + 1))); }

template <typename Scalar>
Scalar dyadic(double x) {
  const long k = std::lround(x * 65536.0);
  if constexpr (ScalarTraits<Scalar>::exact)
    return Rational(k) / Rational(65536);
  else
    return static_cast<double>(k) / 65536.0;
}

template <typename Scalar>
Polytope<Scalar> random_polytope(Rng& rng, int n, int vertex_count) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
  if (vertex_count < n + 1) throw Error(ErrorCode::DegenerateInput, "need at least n + 1 points");
  while (true) {
    std::vector<Vector<Scalar>> pts;
    for (int i = 0; i < vertex_count; ++i) {
      const VectorXd x = ball_point(rng, n);
      Vector<Scalar> p(n);
      for (int j = 0; j < n; ++j) p(j) = dyadic<Scalar>(x(j));
      pts.push_back(std::move(p));
    }
    Polytope<Scalar> p = convex_hull(pts, true);
    if (p.full_dimensional()) return p;
  }
}

template <typename Scalar>
SymmetricMatrix<Scalar> random_spd(Rng& rng, int n) {
  Matrix<Scalar> b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = dyadic<Scalar>(rng.uniform(-1.0, 1.0));
  Matrix<Scalar> m = b * b.transpose();
  for (int i = 0; i < n; ++i) m(i, i) += Scalar(1) / Scalar(4);
  // b * b^T is symmetric only up to rounding in floating mode.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(j, i) = m(i, j);
  return SymmetricMatrix<Scalar>(std::move(m));
}

template <typename Scalar>
Vector<Scalar> random_direction(Rng& rng, int n) {
  while (true) {
    VectorXd g(n);
    for (int j = 0; j < n; ++j) g(j) = rng.normal();
    if (g.norm() < 1e-3) continue;
    g /= g.norm();
    Vector<Scalar> d(n);
    for (int j = 0; j < n; ++j) d(j) = dyadic<Scalar>(g(j));
    if (!d.isZero()) return d;
  }
}

template <typename Scalar>
SupportSample<Scalar> random_positive_sample(Rng& rng, int n, int count) {
  if (count < n + 1) throw Error(ErrorCode::DegenerateInput, "a bounded sample needs at least n + 1 directions");
  while (true) {
    SupportSample<Scalar> s(n);
    while (static_cast<int>(s.size()) < count) {
      Vector<Scalar> d = random_direction<Scalar>(rng, n);
      if (s.find(d)) continue;
      s.add(std::move(d), dyadic<Scalar>(rng.uniform(0.5, 1.5)));
    }
    if (s.bounds_a_body()) return s;
  }
}

#define CVX_RANDOM_INSTANTIATE(S)                                         \
  template S dyadic<S>(double);                                         \
  template Polytope<S> random_polytope<S>(Rng&, int, int);              \
  template SymmetricMatrix<S> random_spd<S>(Rng&, int);                 \
  template SupportSample<S> random_positive_sample<S>(Rng&, int, int);  \
  template Vector<S> random_direction<S>(Rng&, int);

CVX_RANDOM_INSTANTIATE(double)
CVX_RANDOM_INSTANTIATE(Rational)

}  // namespace cvx
