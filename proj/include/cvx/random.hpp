#ifndef CVX_RANDOM_HPP
#define CVX_RANDOM_HPP

#include <cstdint>
#include <random>

#include "cvx/inequalities.hpp"

namespace cvx {

/// Seeded generator with a fixed, implementation-independent mapping from
/// raw bits to numbers, so a seed reproduces the same instances everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi);
  double normal();

  /// Independent stream for a sub-task, derived from the seed and a tag.
  static Rng stream(std::uint64_t seed, std::uint64_t tag);

 private:
  std::mt19937_64 engine_;
};

/// Multiple of 2^-16 nearest to x. Exact in both scalar types.
template <typename Scalar>
Scalar dyadic(double x);

/// Hull of `vertex_count` points uniform in the unit ball with coordinates on
/// the 2^-16 grid, redrawn until full-dimensional. The same seed gives the
/// same body in both modes.
template <typename Scalar>
Polytope<Scalar> random_polytope(Rng& rng, int n, int vertex_count);

template <typename Scalar>
Polytope<Scalar> random_polytope(std::uint64_t seed, int n, int vertex_count) {
  Rng rng(seed);
  return random_polytope<Scalar>(rng, n, vertex_count);
}

/// B B^T + I/4 for B with dyadic entries uniform in [-1, 1].
template <typename Scalar>
SymmetricMatrix<Scalar> random_spd(Rng& rng, int n);

/// Strictly positive values in [1/2, 3/2] at `count` random directions that
/// bound a body.
template <typename Scalar>
SupportSample<Scalar> random_positive_sample(Rng& rng, int n, int count);

/// A random dyadic direction (not canonicalized).
template <typename Scalar>
Vector<Scalar> random_direction(Rng& rng, int n);

#define CVX_RANDOM_EXTERN(S)                                                     \
  extern template S dyadic<S>(double);                                         \
  extern template Polytope<S> random_polytope<S>(Rng&, int, int);              \
  extern template SymmetricMatrix<S> random_spd<S>(Rng&, int);                 \
  extern template SupportSample<S> random_positive_sample<S>(Rng&, int, int);  \
  extern template Vector<S> random_direction<S>(Rng&, int);

CVX_RANDOM_EXTERN(double)
CVX_RANDOM_EXTERN(Rational)
#undef CVX_RANDOM_EXTERN

}  // namespace cvx

#endif
