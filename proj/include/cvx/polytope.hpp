#ifndef CVX_POLYTOPE_HPP
#define CVX_POLYTOPE_HPP

#include <memory>
#include <mutex>
#include <vector>

#include "cvx/error.hpp"
#include "cvx/scalar.hpp"

namespace cvx {

/// A facet {x : normal . x = offset} of a full-dimensional polytope.
///
/// The normal is unit length in floating mode and a primitive integer vector
/// in exact mode. `weight` is scaled to match, so that `weight * normal` is
/// always the facet's vector area and `weight * offset` is area times support
/// value. `area()` and `unit_normal()` give the geometric quantities in
/// double precision for either mode.
template <typename Scalar>
struct Facet {
  Vector<Scalar> normal;
  Scalar offset{};
  Scalar weight{};

  double norm() const { return to_double(normal).norm(); }
  VectorXd unit_normal() const {
    VectorXd u = to_double(normal);
    return u / u.norm();
  }
  double area() const { return to_double(weight) * norm(); }
  double unit_offset() const { return to_double(offset) / norm(); }
};

template <typename Scalar>
struct Halfspace {
  Vector<Scalar> normal;
  Scalar bound{};
};

/// Constraints x . normal <= bound.
template <typename Scalar>
struct HalfspaceSystem {
  int dim = 0;
  std::vector<Halfspace<Scalar>> constraints;

  void add(Vector<Scalar> normal, Scalar bound) {
    constraints.push_back({std::move(normal), std::move(bound)});
  }
};

namespace detail {
template <typename Scalar>
struct FacetCache {
  std::once_flag hrep_once;
  std::once_flag weight_once;
  bool hrep_seeded = false;
  bool weights_seeded = false;
  std::vector<Facet<Scalar>> facets;
  std::vector<std::vector<int>> incidence;
};
}  // namespace detail

/// A convex polytope in R^n stored by its extreme points. Facet data is
/// derived on first use and cached; the cache is written once and shared
/// between copies.
template <typename Scalar>
class Polytope {
 public:
  Polytope() = default;

  /// Trusted constructor: `vertices` must already be the extreme points.
  Polytope(int dim, std::vector<Vector<Scalar>> vertices, int affine_dim);

  int dim() const { return dim_; }
  int affine_dim() const { return affine_dim_; }
  bool full_dimensional() const { return affine_dim_ == dim_; }
  const std::vector<Vector<Scalar>>& vertices() const { return vertices_; }
  std::size_t num_vertices() const { return vertices_.size(); }

  /// Facets, one per geometric facet, sorted by normal. Throws
  /// DegenerateInput for lower-dimensional polytopes.
  const std::vector<Facet<Scalar>>& facets() const;
  /// Indices into vertices() of the vertices on facet i.
  const std::vector<std::vector<int>>& facet_vertices() const;

  Polytope<double> to_double() const;

  /// Internal: attach an already known H-representation. Facet weights are
  /// computed lazily unless `weights_known`.
  void seed_facets(std::vector<Facet<Scalar>> facets, std::vector<std::vector<int>> incidence,
                   bool weights_known = false);

 private:
  void ensure_hrep() const;

  int dim_ = 0;
  int affine_dim_ = -1;
  std::vector<Vector<Scalar>> vertices_;
  std::shared_ptr<detail::FacetCache<Scalar>> cache_ = std::make_shared<detail::FacetCache<Scalar>>();
};

/// Convex hull of a point set. Lower-dimensional input throws DegenerateInput
/// unless `allow_lower_dim` is set, in which case a flagged lower-dimensional
/// polytope is returned.
template <typename Scalar>
Polytope<Scalar> convex_hull(const std::vector<Vector<Scalar>>& points, bool allow_lower_dim = false);

/// Vertex representation of {x : normal_i . x <= bound_i}. Throws Empty or
/// Unbounded.
template <typename Scalar>
Polytope<Scalar> halfspace_intersection(const HalfspaceSystem<Scalar>& system);

namespace detail {
template <typename Scalar>
struct IntersectionResult {
  Polytope<Scalar> polytope;
  /// For every input constraint, the facet index it defines, or -1 when it is
  /// redundant. Only filled for full-dimensional results.
  std::vector<int> facet_of_constraint;
};

template <typename Scalar>
IntersectionResult<Scalar> intersect_halfspaces(const HalfspaceSystem<Scalar>& system);

/// Vertex centroid.
template <typename Scalar>
Vector<Scalar> vertex_centroid(const std::vector<Vector<Scalar>>& points);
}  // namespace detail

/// n-volume; zero for lower-dimensional polytopes. Exact in exact mode.
template <typename Scalar>
Scalar volume(const Polytope<Scalar>& p);

template <typename Scalar>
const std::vector<Facet<Scalar>>& facets(const Polytope<Scalar>& p) {
  return p.facets();
}

/// Minkowski sum; throws DimensionMismatch.
template <typename Scalar>
Polytope<Scalar> minkowski_sum(const Polytope<Scalar>& p, const Polytope<Scalar>& q);

/// x -> lambda * x + t; throws NegativeScale.
template <typename Scalar>
Polytope<Scalar> scale_translate(const Polytope<Scalar>& p, const Scalar& lambda,
                                 const Vector<Scalar>& t);

template <typename Scalar>
Polytope<Scalar> translate(const Polytope<Scalar>& p, const Vector<Scalar>& t) {
  return scale_translate(p, Scalar(1), t);
}

template <typename Scalar>
Polytope<Scalar> scale(const Polytope<Scalar>& p, const Scalar& lambda) {
  return scale_translate(p, lambda, Vector<Scalar>(Vector<Scalar>::Zero(p.dim())));
}

/// h_P(u) = max over vertices of u . v. Throws ZeroDirection.
template <typename Scalar>
Scalar support_value(const Polytope<Scalar>& p, const Vector<Scalar>& u);

/// Delete coordinate j from every vertex and take the hull in R^{n-1}.
template <typename Scalar>
Polytope<Scalar> project_out(const Polytope<Scalar>& p, int j);

/// Lower bound on the Hausdorff distance, evaluated on the union of both
/// bodies' facet normals, vertex directions, pairwise vertex-difference
/// directions and a fixed sample of 10 n^2 sphere points. Exact for n = 2.
template <typename Scalar>
double hausdorff_distance(const Polytope<Scalar>& p, const Polytope<Scalar>& q);

/// Hausdorff distance after the least-squares translation aligning the
/// support values on the union of both normal fans.
double hausdorff_up_to_translation(const Polytope<double>& p, const Polytope<double>& q);

template <typename Scalar>
struct Inradius {
  Scalar ratio{};
  Vector<Scalar> translation;
};

/// Largest lambda with lambda L + t contained in K, with a witness t.
template <typename Scalar>
Inradius<Scalar> relative_inradius(const Polytope<Scalar>& k, const Polytope<Scalar>& l);

/// True when every vertex of `inner` satisfies every facet inequality of `outer`
/// (with the floating tolerance in floating mode).
template <typename Scalar>
bool contains(const Polytope<Scalar>& outer, const Polytope<Scalar>& inner);

/// Largest distance between two vertices.
template <typename Scalar>
double diameter(const Polytope<Scalar>& p);

/// Vertex-set equality (exact), or within `tol` per coordinate in floating mode.
template <typename Scalar>
bool same_vertices(const Polytope<Scalar>& p, const Polytope<Scalar>& q, double tol = 0.0);

#define CVX_POLYTOPE_EXTERN(S)                                                                  \
  extern template class Polytope<S>;                                                          \
  extern template Polytope<S> convex_hull(const std::vector<Vector<S>>&, bool);              \
  extern template Polytope<S> halfspace_intersection(const HalfspaceSystem<S>&);             \
  extern template detail::IntersectionResult<S> detail::intersect_halfspaces(                 \
      const HalfspaceSystem<S>&);                                                             \
  extern template Vector<S> detail::vertex_centroid(const std::vector<Vector<S>>&);           \
  extern template S volume(const Polytope<S>&);                                                \
  extern template Polytope<S> minkowski_sum(const Polytope<S>&, const Polytope<S>&);         \
  extern template Polytope<S> scale_translate(const Polytope<S>&, const S&, const Vector<S>&); \
  extern template S support_value(const Polytope<S>&, const Vector<S>&);                      \
  extern template Polytope<S> project_out(const Polytope<S>&, int);                           \
  extern template double hausdorff_distance(const Polytope<S>&, const Polytope<S>&);         \
  extern template Inradius<S> relative_inradius(const Polytope<S>&, const Polytope<S>&);     \
  extern template bool contains(const Polytope<S>&, const Polytope<S>&);                     \
  extern template double diameter(const Polytope<S>&);                                        \
  extern template bool same_vertices(const Polytope<S>&, const Polytope<S>&, double);

CVX_POLYTOPE_EXTERN(double)
CVX_POLYTOPE_EXTERN(Rational)
#undef CVX_POLYTOPE_EXTERN

}  // namespace cvx

#endif
