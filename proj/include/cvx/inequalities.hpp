#ifndef CVX_INEQUALITIES_HPP
#define CVX_INEQUALITIES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvx/solver.hpp"

namespace cvx {

inline constexpr double kPassTolerance = 1e-9;
inline constexpr double kExactEqualityTolerance = 1e-9;
inline constexpr double kSolverEqualityTolerance = 1e-6;
inline constexpr double kHomothetyTolerance = 1e-9;

/// Outcome of one inequality evaluation, oriented so that lhs >= rhs holds.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
  bool equality = false;
  /// Verdict of the independent equality-case detector, where one applies.
  std::optional<bool> detector;
  /// "convex analogue" for statements transported from divisor classes.
  std::string label;
  std::vector<std::pair<std::string, double>> witnesses;

  void witness(std::string key, double value) { witnesses.emplace_back(std::move(key), value); }
  std::optional<double> find_witness(const std::string& key) const;
};

/// Fills slack, pass and equality from lhs and rhs.
CheckReport make_report(std::string name, double lhs, double rhs, double equality_tolerance);

template <typename Scalar>
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  /// Throws DimensionMismatch if not square and InvariantViolation if not
  /// exactly symmetric.
  explicit SymmetricMatrix(Matrix<Scalar> m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix<Scalar>& matrix() const { return m_; }
  /// Pivots of symmetric elimination are all positive.
  bool positive_definite() const;

 private:
  Matrix<Scalar> m_;
};

/// Determinant by Gaussian elimination with partial pivoting (exact for rationals).
template <typename Scalar>
Scalar determinant(Matrix<Scalar> m);

/// D(M_1, ..., M_n) = (1/n!) sum over subsets J of (-1)^{n-|J|} det(sum_J M_j).
template <typename Scalar>
Scalar mixed_discriminant(const std::vector<SymmetricMatrix<Scalar>>& matrices);

/// L ~ lambda K + t on the union of both normal fans, by least squares in
/// (lambda, t) with relative residual at most kHomothetyTolerance.
struct Homothety {
  bool homothetic = false;
  double lambda = 0.0;
  VectorXd translation;
  double residual = 0.0;
};

template <typename Scalar>
Homothety detect_homothety(const Polytope<Scalar>& k, const Polytope<Scalar>& l);

/// Every facet normal is a coordinate axis.
template <typename Scalar>
bool is_axis_box(const Polytope<Scalar>& k);

/// Deterministic, roughly uniform directions on the sphere. In exact mode
/// they are rounded to a 1/1024 grid before canonicalization.
template <typename Scalar>
std::vector<Vector<Scalar>> quasi_uniform_directions(int n, int count);

template <typename Scalar>
CheckReport check_brunn_minkowski(const Polytope<Scalar>& k, const Polytope<Scalar>& l);

template <typename Scalar>
CheckReport check_kneser_suss(const Polytope<Scalar>& k, const Polytope<Scalar>& l, const SolverOptions& opts = {});

template <typename Scalar>
CheckReport check_diskant_bound(const Polytope<Scalar>& k, const Polytope<Scalar>& l);

template <typename Scalar>
CheckReport check_morse(const Polytope<Scalar>& k, const Polytope<Scalar>& l);

template <typename Scalar>
CheckReport check_reverse_kt(const Polytope<Scalar>& k, const Polytope<Scalar>& l, const Polytope<Scalar>& m, int index);

template <typename Scalar>
CheckReport check_mixed_discriminant_kt(const SymmetricMatrix<Scalar>& a, const SymmetricMatrix<Scalar>& b,
                                        const SymmetricMatrix<Scalar>& c, int index);

template <typename Scalar>
CheckReport check_loomis_whitney(const Polytope<Scalar>& k);

template <typename Scalar>
CheckReport check_box_bound(const Polytope<Scalar>& k);

template <typename Scalar>
CheckReport check_mixed_body_volume(const std::vector<Polytope<Scalar>>& bodies, const SolverOptions& opts = {});

template <typename Scalar>
CheckReport check_improved_bm(const Polytope<Scalar>& k, const Polytope<Scalar>& l, const SolverOptions& opts = {});

template <typename Scalar>
CheckReport check_log_concavity(const Polytope<Scalar>& k, const Polytope<Scalar>& l, const SolverOptions& opts = {});

/// V(K^{n-1}, L1 + L2) against V(K^{n-1}, L1) + V(K^{n-1}, L2). This one is an
/// identity: it passes only when the two sides agree (exactly in rational mode).
template <typename Scalar>
CheckReport check_mixed_volume_linearity(const Polytope<Scalar>& k, const Polytope<Scalar>& l1,
                                         const Polytope<Scalar>& l2);

#define CVX_INEQUALITIES_EXTERN(S)                                                                         \
  extern template class SymmetricMatrix<S>;                                                              \
  extern template S determinant(Matrix<S>);                                                              \
  extern template S mixed_discriminant(const std::vector<SymmetricMatrix<S>>&);                          \
  extern template Homothety detect_homothety(const Polytope<S>&, const Polytope<S>&);                    \
  extern template bool is_axis_box(const Polytope<S>&);                                                  \
  extern template std::vector<Vector<S>> quasi_uniform_directions<S>(int, int);                          \
  extern template CheckReport check_brunn_minkowski(const Polytope<S>&, const Polytope<S>&);             \
  extern template CheckReport check_kneser_suss(const Polytope<S>&, const Polytope<S>&, const SolverOptions&); \
  extern template CheckReport check_diskant_bound(const Polytope<S>&, const Polytope<S>&);               \
  extern template CheckReport check_morse(const Polytope<S>&, const Polytope<S>&);                       \
  extern template CheckReport check_reverse_kt(const Polytope<S>&, const Polytope<S>&, const Polytope<S>&, int); \
  extern template CheckReport check_mixed_discriminant_kt(const SymmetricMatrix<S>&, const SymmetricMatrix<S>&, \
                                                          const SymmetricMatrix<S>&, int);              \
  extern template CheckReport check_loomis_whitney(const Polytope<S>&);                                  \
  extern template CheckReport check_box_bound(const Polytope<S>&);                                       \
  extern template CheckReport check_mixed_body_volume(const std::vector<Polytope<S>>&, const SolverOptions&); \
  extern template CheckReport check_improved_bm(const Polytope<S>&, const Polytope<S>&, const SolverOptions&); \
  extern template CheckReport check_log_concavity(const Polytope<S>&, const Polytope<S>&, const SolverOptions&); \
  extern template CheckReport check_mixed_volume_linearity(const Polytope<S>&, const Polytope<S>&,       \
                                                           const Polytope<S>&);

CVX_INEQUALITIES_EXTERN(double)
CVX_INEQUALITIES_EXTERN(Rational)
#undef CVX_INEQUALITIES_EXTERN

}  // namespace cvx

#endif
