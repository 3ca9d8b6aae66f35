#ifndef CVX_MEASURES_HPP
#define CVX_MEASURES_HPP

#include <optional>
#include <vector>

#include "cvx/polytope.hpp"

namespace cvx {

/// Canonical representative of a direction: primitive integer vector in exact
/// mode, unit vector in floating mode. Returns the factor c with d = c * canon.
template <typename Scalar>
Scalar canonicalize_direction(Vector<Scalar>& d);

/// Same atom? Exact equality of canonical forms, or an angle below 1e-9 rad.
template <typename Scalar>
bool same_direction(const Vector<Scalar>& a, const Vector<Scalar>& b);

inline constexpr double kNormalAngleTolerance = 1e-9;

/// One point mass of a measure on the sphere. As with Facet, `weight * normal`
/// is the vector mass, so the mass itself is weight * |normal|.
template <typename Scalar>
struct Atom {
  Vector<Scalar> normal;
  Scalar weight{};

  double mass() const { return to_double(weight) * to_double(normal).norm(); }
  VectorXd unit_normal() const {
    VectorXd u = to_double(normal);
    return u / u.norm();
  }
};

/// A finite atomic measure on the unit sphere with pairwise distinct normals.
template <typename Scalar>
class SurfaceMeasure {
 public:
  SurfaceMeasure() = default;
  explicit SurfaceMeasure(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::vector<Atom<Scalar>>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  /// Adds mass at `normal`, merging with an existing atom in the same
  /// direction. The weight refers to the normal exactly as given.
  void add(Vector<Scalar> normal, Scalar weight);

  /// Index of the atom in direction `u`, if any.
  std::optional<std::size_t> find(const Vector<Scalar>& u) const;

  /// Removes atoms whose weight vanishes (|w| <= tol in floating mode, w == 0
  /// exactly). Throws NumericalResidue for weights below -tol.
  void prune(double tol);

  /// True when the normals linearly span R^n.
  bool spans() const;
  double total_mass() const;
  SurfaceMeasure<double> to_double() const;

  SurfaceMeasure& operator+=(const SurfaceMeasure& other);
  SurfaceMeasure& operator*=(const Scalar& s);

 private:
  int dim_ = 0;
  std::vector<Atom<Scalar>> atoms_;
};

template <typename Scalar>
SurfaceMeasure<Scalar> operator+(SurfaceMeasure<Scalar> a, const SurfaceMeasure<Scalar>& b) {
  a += b;
  return a;
}

/// A function on the sphere known at finitely many directions. Values are
/// positively homogeneous: stored directions are canonical and values are
/// rescaled accordingly.
template <typename Scalar>
class SupportSample {
 public:
  SupportSample() = default;
  explicit SupportSample(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::vector<Vector<Scalar>>& directions() const { return directions_; }
  const std::vector<Scalar>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  /// Adds f(direction) = value; throws InvariantViolation on a repeated direction.
  void add(Vector<Scalar> direction, Scalar value);
  /// f(u) by homogeneity from the matching stored direction.
  std::optional<Scalar> value_at(const Vector<Scalar>& u) const;
  std::optional<std::size_t> find(const Vector<Scalar>& u) const;

  /// True when the directions are not contained in a closed halfspace
  /// through the origin, i.e. the constraint body is bounded.
  bool bounds_a_body() const;
  SupportSample<double> to_double() const;

  SupportSample operator+(const SupportSample& other) const;
  SupportSample operator-(const SupportSample& other) const;
  SupportSample operator*(const Scalar& s) const;

  /// Replaces the value vector (same directions).
  SupportSample with_values(std::vector<Scalar> values) const;

 private:
  int dim_ = 0;
  std::vector<Vector<Scalar>> directions_;
  std::vector<Scalar> values_;
};

/// h_P sampled at the given directions.
template <typename Scalar>
SupportSample<Scalar> sample_support(const Polytope<Scalar>& p, const std::vector<Vector<Scalar>>& directions);

/// The linear function x -> a . x sampled at the given directions.
template <typename Scalar>
SupportSample<Scalar> sample_linear(const Vector<Scalar>& a, const std::vector<Vector<Scalar>>& directions);

/// S(P, ..., P; .): one atom per facet.
template <typename Scalar>
SurfaceMeasure<Scalar> area_measure(const Polytope<Scalar>& p);

/// Area measure that also accepts flat bodies: a body of dimension n-1
/// carries its (n-1)-volume on both unit normals, lower bodies carry nothing.
template <typename Scalar>
SurfaceMeasure<Scalar> area_measure_any(const Polytope<Scalar>& p);

/// V(K_1, ..., K_n) by polarization of volumes of subset sums.
template <typename Scalar>
Scalar mixed_volume(const std::vector<Polytope<Scalar>>& bodies);

/// V(K^a, L^b) for a + b = n.
template <typename Scalar>
Scalar mixed_volume(const Polytope<Scalar>& k, int a, const Polytope<Scalar>& l, int b);

/// S(K_1, ..., K_{n-1}; .) by polarization of area measures.
template <typename Scalar>
SurfaceMeasure<Scalar> mixed_area_measure(const std::vector<Polytope<Scalar>>& bodies);

/// (1/n) * integral of h_L against S(K_1, ..., K_{n-1}; .).
template <typename Scalar>
Scalar mixed_volume_via_measure(const std::vector<Polytope<Scalar>>& bodies, const Polytope<Scalar>& l);

template <typename Scalar>
Scalar mixed_volume_via_measure(const std::vector<Polytope<Scalar>>& bodies,
                                const SupportSample<Scalar>& l);

/// Sum of f(normal) * weight; throws MissingDirection when a sample lacks an atom.
template <typename Scalar>
Scalar integrate(const SurfaceMeasure<Scalar>& m, const SupportSample<Scalar>& f);

template <typename Scalar>
Scalar integrate(const SurfaceMeasure<Scalar>& m, const Polytope<Scalar>& p);

/// Sum of weight * normal.
template <typename Scalar>
Vector<Scalar> centroid_defect(const SurfaceMeasure<Scalar>& m);

template <typename Scalar>
double centroid_defect_norm(const SurfaceMeasure<Scalar>& m) {
  return to_double(centroid_defect(m)).norm();
}

/// Minkowski combination sum_j counts[j] * bodies[j] (zero counts skipped).
template <typename Scalar>
Polytope<Scalar> minkowski_combination(const std::vector<Polytope<Scalar>>& bodies,
                                       const std::vector<int>& counts);

#define CVX_MEASURES_EXTERN(S)                                                                  \
  extern template class SurfaceMeasure<S>;                                                    \
  extern template class SupportSample<S>;                                                     \
  extern template S canonicalize_direction(Vector<S>&);                                         \
  extern template bool same_direction(const Vector<S>&, const Vector<S>&);                       \
  extern template SupportSample<S> sample_support(const Polytope<S>&, const std::vector<Vector<S>>&); \
  extern template SupportSample<S> sample_linear(const Vector<S>&, const std::vector<Vector<S>>&); \
  extern template SurfaceMeasure<S> area_measure(const Polytope<S>&);                         \
  extern template SurfaceMeasure<S> area_measure_any(const Polytope<S>&);                     \
  extern template S mixed_volume(const std::vector<Polytope<S>>&);                            \
  extern template S mixed_volume(const Polytope<S>&, int, const Polytope<S>&, int);           \
  extern template SurfaceMeasure<S> mixed_area_measure(const std::vector<Polytope<S>>&);      \
  extern template S mixed_volume_via_measure(const std::vector<Polytope<S>>&, const Polytope<S>&); \
  extern template S mixed_volume_via_measure(const std::vector<Polytope<S>>&, const SupportSample<S>&); \
  extern template S integrate(const SurfaceMeasure<S>&, const SupportSample<S>&);             \
  extern template S integrate(const SurfaceMeasure<S>&, const Polytope<S>&);                  \
  extern template Vector<S> centroid_defect(const SurfaceMeasure<S>&);                        \
  extern template Polytope<S> minkowski_combination(const std::vector<Polytope<S>>&, const std::vector<int>&);

CVX_MEASURES_EXTERN(double)
CVX_MEASURES_EXTERN(Rational)
#undef CVX_MEASURES_EXTERN

}  // namespace cvx

#endif
