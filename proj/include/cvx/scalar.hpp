#ifndef CVX_SCALAR_HPP
#define CVX_SCALAR_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace cvx {

/// Exact rational scalar (GMP backed, no expression templates so it composes with Eigen).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
/// Arbitrary precision integer, used internally by the exact cone enumeration.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using VectorXq = Vector<Rational>;

/// Per-scalar policy: exactness, conversions and the zero test used by every
/// geometric predicate.
template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  /// Relative tolerance for incidence and sign tests.
  static constexpr double eps = 1e-10;

  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static bool is_zero(double x, double scale) { return std::abs(x) <= eps * scale; }
  static int sign(double x, double scale) {
    if (is_zero(x, scale)) return 0;
    return x > 0 ? 1 : -1;
  }
  static std::string name() { return "float"; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr double eps = 0.0;

  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  /// Every finite double is a dyadic rational; the conversion is exact.
  static Rational from_double(double x) { return Rational(x); }
  static bool is_zero(const Rational& x, const Rational& = Rational(0)) { return x == 0; }
  static int sign(const Rational& x, const Rational& = Rational(0)) { return x.sign(); }
  static std::string name() { return "exact"; }
};

template <typename Scalar>
inline double to_double(const Scalar& x) {
  return ScalarTraits<Scalar>::to_double(x);
}

template <typename Scalar>
inline VectorXd to_double(const Vector<Scalar>& v) {
  VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = ScalarTraits<Scalar>::to_double(v[i]);
  return out;
}

template <typename Scalar>
inline Vector<Scalar> from_double(const VectorXd& v) {
  Vector<Scalar> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = ScalarTraits<Scalar>::from_double(v[i]);
  return out;
}

/// Parses "p/q", an integer, or a decimal literal such as "-0.125" or "1e-3"
/// exactly. Throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);

/// Shortest text for a rational: "p" or "p/q".
std::string format_rational(const Rational& q);

template <typename Scalar>
inline bool vectors_equal(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

/// Lexicographic order on coordinates.
template <typename Scalar>
inline bool lex_less(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

}  // namespace cvx

#endif
