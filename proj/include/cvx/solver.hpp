#ifndef CVX_SOLVER_HPP
#define CVX_SOLVER_HPP

#include <vector>

#include "cvx/measures.hpp"

namespace cvx {

struct SolverOptions {
  /// Target for the largest relative facet-area error.
  double tolerance = 1e-8;
  int max_iterations = 200;
  /// Initial step length of each damped Newton step.
  double damping = 1.0;
};

struct SolveDiagnostics {
  int iterations = 0;
  double max_relative_area_error = 0.0;
  double centroid_defect = 0.0;
  bool converged = false;
};

/// Thrown with ErrorCode::NoConvergence; carries the state at exit.
class SolverError : public Error {
 public:
  SolverError(std::string message, SolveDiagnostics diagnostics)
      : Error(ErrorCode::NoConvergence, std::move(message)), diagnostics_(diagnostics) {}
  const SolveDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  SolveDiagnostics diagnostics_;
};

struct MinkowskiSolution {
  Polytope<double> body;
  SolveDiagnostics diagnostics;
};

/// The polytope whose area measure is `target`, translated so that its
/// vertex centroid is the origin. Solved in double precision for either
/// scalar type. Throws GreatSubsphere, CentroidNonzero, NonPositive or
/// SolverError.
MinkowskiSolution solve_minkowski(const SurfaceMeasure<double>& target, const SolverOptions& opts = {});

template <typename Scalar>
MinkowskiSolution solve_minkowski(const SurfaceMeasure<Scalar>& target, const SolverOptions& opts = {}) {
  return solve_minkowski(target.to_double(), opts);
}

/// K # L: the body whose area measure is S(K) + S(L).
template <typename Scalar>
MinkowskiSolution blaschke_add(const Polytope<Scalar>& k, const Polytope<Scalar>& l, const SolverOptions& opts = {}) {
  if (k.dim() != l.dim()) throw Error(ErrorCode::DimensionMismatch, "Blaschke sum of different dimensions");
  return solve_minkowski(area_measure(k) + area_measure(l), opts);
}

/// [K_1, ..., K_{n-1}]: the body whose area measure is S(K_1, ..., K_{n-1}; .).
template <typename Scalar>
MinkowskiSolution mixed_body(const std::vector<Polytope<Scalar>>& bodies, const SolverOptions& opts = {}) {
  return solve_minkowski(mixed_area_measure(bodies), opts);
}

/// [K^{n-1-i}, L^i].
template <typename Scalar>
MinkowskiSolution mixed_body(const Polytope<Scalar>& k, const Polytope<Scalar>& l, int i,
                             const SolverOptions& opts = {}) {
  const int n = k.dim();
  if (i < 0 || i > n - 1) throw Error(ErrorCode::DimensionMismatch, "mixed body index out of range");
  std::vector<Polytope<Scalar>> bodies(static_cast<std::size_t>(n - 1 - i), k);
  for (int j = 0; j < i; ++j) bodies.push_back(l);
  return mixed_body(bodies, opts);
}

namespace detail {

/// Facet areas of P(h) = {x : u_i . x <= h_i} for unit normals u_i, with the
/// derivative matrix dF_i/dh_j. Zero rows for constraints that are not facets.
struct FacetAreaJacobian {
  Polytope<double> body;
  double volume = 0.0;
  Eigen::VectorXd areas;
  Eigen::MatrixXd jacobian;
};

FacetAreaJacobian facet_areas(const std::vector<VectorXd>& normals, const Eigen::VectorXd& h,
                              bool with_jacobian = true);

/// (n-1)-volume, intrinsic, of a set of points lying in one affine hyperplane
/// orthogonal to the given normals. Used for ridges (two normals) and facets.
double flat_volume(const std::vector<VectorXd>& points, const std::vector<VectorXd>& normals);

}  // namespace detail

}  // namespace cvx

#endif
