#ifndef CVX_DETAIL_CONE_HPP
#define CVX_DETAIL_CONE_HPP

#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "cvx/scalar.hpp"

namespace cvx::detail {

/// Extreme rays of the polyhedral cone {y : rows[i] . y >= 0 for all i}.
///
/// Computed with the double description method. In exact mode every ray is a
/// primitive integer vector and incidences are exact; in floating mode rays
/// have unit length and incidence uses ScalarTraits<double>::eps.
template <typename Scalar>
struct ConeRays {
  /// Rank of the constraint rows. Rays are only meaningful when rank == dim.
  int rank = 0;
  int dim = 0;
  std::vector<Vector<Scalar>> rays;
  /// zeros[r][i] is set when constraint row i vanishes on ray r.
  std::vector<boost::dynamic_bitset<>> zeros;
};

/// `order` lists row indices in insertion order; rows missing from it are
/// ignored. An empty order means all rows in their natural order.
template <typename Scalar>
ConeRays<Scalar> enumerate_cone(const std::vector<Vector<Scalar>>& rows, int dim,
                                std::vector<int> order = {});

/// Rank of a set of row vectors.
template <typename Scalar>
int row_rank(const std::vector<Vector<Scalar>>& rows, int dim);

/// Indices of a maximal linearly independent subset, scanning in order.
template <typename Scalar>
std::vector<int> independent_rows(const std::vector<Vector<Scalar>>& rows, int dim);

/// Basis of {x : rows . x = 0}.
std::vector<Vector<double>> null_space(const std::vector<Vector<double>>& rows, int dim);
std::vector<Vector<Rational>> null_space(const std::vector<Vector<Rational>>& rows, int dim);

extern template ConeRays<double> enumerate_cone(const std::vector<Vector<double>>&, int,
                                                std::vector<int>);
extern template ConeRays<Rational> enumerate_cone(const std::vector<Vector<Rational>>&, int,
                                                  std::vector<int>);
extern template int row_rank(const std::vector<Vector<double>>&, int);
extern template int row_rank(const std::vector<Vector<Rational>>&, int);
extern template std::vector<int> independent_rows(const std::vector<Vector<double>>&, int);
extern template std::vector<int> independent_rows(const std::vector<Vector<Rational>>&, int);

}  // namespace cvx::detail

#endif
