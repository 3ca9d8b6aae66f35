#ifndef CVX_TORIC_HPP
#define CVX_TORIC_HPP

#include <vector>

#include "cvx/inequalities.hpp"

namespace cvx {

/// The class a xi + b f on the flop example; a, b >= 0.
struct FlopDivisor {
  long a = 0;
  long b = 0;
};

/// h^0 as the weight-space sum over k = 0..min(a, b) of (a - k + 1)(b - k + 1).
Integer section_count_flop(const FlopDivisor& d);

/// The displayed polynomial for the chamber containing (a, b):
/// b a^2/2 - a^3/6 + 3ab/2 + b + 7a/6 + 1 for b >= a, mirrored for a >= b.
Rational section_count_closed_form(const FlopDivisor& d);

/// 3b a^2 - a^3 for b >= a, 3a b^2 - b^3 for a >= b.
Rational flop_volume_closed_form(const Rational& a, const Rational& b);

struct FlopVolume {
  Rational closed_form;
  /// Richardson extrapolation of 3! h^0(ma, mb) / m^3 over m = 8, 16, 32, 64.
  Rational asymptotic;
  /// 3! h^0(64a, 64b) / 64^3, before extrapolation.
  Rational raw;
};

FlopVolume volume_flop(const FlopDivisor& d);

/// Second and third differences of a -> vol(a xi + b f) on both sides of the
/// wall a = b, step h. Measured values come from extrapolated section counts,
/// predicted ones from the two closed forms.
struct WallWitness {
  long b = 0;
  long h = 0;
  Rational measured_left, measured_right;
  Rational predicted_left, predicted_right;
  Rational third_left, third_right;

  Rational measured_jump() const { return measured_right - measured_left; }
  Rational predicted_jump() const { return predicted_right - predicted_left; }
  /// A cubic has the same third difference everywhere, so unequal one-sided
  /// third differences rule out a single polynomial near the wall.
  bool locally_polynomial() const { return third_left == third_right; }
};

WallWitness flop_wall_witness(long b, long h);

/// Number of integer points in a polytope with integer vertices. Throws
/// InvariantViolation for non-integral vertices and TooLarge when the
/// bounding box holds more than `limit` candidates.
template <typename Scalar>
Integer lattice_point_count(const Polytope<Scalar>& p, double limit = 1e6);

/// Richardson-extrapolated leading coefficient of #(mP) / m^n against vol(P),
/// over m = 1, 2, ..., 2^n. Passes within 1% relative.
template <typename Scalar>
CheckReport check_volume_correspondence(const Polytope<Scalar>& p, double limit = 1e6);

/// Richardson table for samples g(m_0), g(2 m_0), ... with an error expansion
/// in powers of 1/m; returns the fully extrapolated value.
Rational richardson_halving(const std::vector<Rational>& samples);

#define CVX_TORIC_EXTERN(S)                                                  \
  extern template Integer lattice_point_count(const Polytope<S>&, double); \
  extern template CheckReport check_volume_correspondence(const Polytope<S>&, double);

CVX_TORIC_EXTERN(double)
CVX_TORIC_EXTERN(Rational)
#undef CVX_TORIC_EXTERN

}  // namespace cvx

#endif
