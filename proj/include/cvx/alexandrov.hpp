#ifndef CVX_ALEXANDROV_HPP
#define CVX_ALEXANDROV_HPP

#include <vector>

#include "cvx/measures.hpp"

namespace cvx {

/// f = P(f) + N(f) on the sample directions of f.
template <typename Scalar>
struct Decomposition {
  Polytope<Scalar> body;
  SupportSample<Scalar> positive_part;
  SupportSample<Scalar> negative_part;
  /// Integral of N(f) against the area measure of the body.
  Scalar orthogonality_defect{};
  /// Total area times max |f|; the natural size of the defect.
  double scale = 0.0;
};

/// The largest body with h_K <= f at every sample direction. Throws
/// NonPositive when some value is not strictly positive and Unbounded when
/// the directions lie in a closed halfspace.
template <typename Scalar>
Polytope<Scalar> alexandrov_body(const SupportSample<Scalar>& f);

template <typename Scalar>
Decomposition<Scalar> decompose(const SupportSample<Scalar>& f);

template <typename Scalar>
Scalar volume_of_function(const SupportSample<Scalar>& f);

template <typename Scalar>
struct PolarVolume {
  double value = 0.0;
  /// Index into the candidate list, or -1 for the injected Alexandrov body.
  int argmin = -1;
  Polytope<Scalar> minimizer;
  /// Quotient per candidate, in input order, followed by the Alexandrov body.
  std::vector<double> quotients;
};

/// ( V(K^{n-1}, f) / vol(K)^{(n-1)/n} )^n with V(K^{n-1}, f) = (1/n) sum f dS(K).
/// Throws MissingDirection if f has no value at a facet normal of K.
template <typename Scalar>
double polar_quotient(const SupportSample<Scalar>& f, const Polytope<Scalar>& k);

/// Minimum of polar_quotient over the candidates and alexandrov_body(f).
template <typename Scalar>
PolarVolume<Scalar> polar_volume(const SupportSample<Scalar>& f, const std::vector<Polytope<Scalar>>& candidates);

template <typename Scalar>
struct VolumeDerivative {
  Scalar analytic{};
  Scalar numeric{};
  Scalar step{};
};

/// d/dt vol(f + t g) at t = 0. The analytic value is the integral of g
/// against the area measure of alexandrov_body(f); the numeric one is a
/// central difference with step 1e-5 * max|f| / max|g|.
template <typename Scalar>
VolumeDerivative<Scalar> derivative_of_volume(const SupportSample<Scalar>& f, const SupportSample<Scalar>& g);

#define CVX_ALEXANDROV_EXTERN(S)                                                            \
  extern template Polytope<S> alexandrov_body(const SupportSample<S>&);                   \
  extern template Decomposition<S> decompose(const SupportSample<S>&);                    \
  extern template S volume_of_function(const SupportSample<S>&);                          \
  extern template double polar_quotient(const SupportSample<S>&, const Polytope<S>&);     \
  extern template PolarVolume<S> polar_volume(const SupportSample<S>&, const std::vector<Polytope<S>>&); \
  extern template VolumeDerivative<S> derivative_of_volume(const SupportSample<S>&, const SupportSample<S>&);

CVX_ALEXANDROV_EXTERN(double)
CVX_ALEXANDROV_EXTERN(Rational)
#undef CVX_ALEXANDROV_EXTERN

}  // namespace cvx

#endif
