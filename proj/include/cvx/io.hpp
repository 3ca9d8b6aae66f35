#ifndef CVX_IO_HPP
#define CVX_IO_HPP

#include <string>

#include <json.hpp>

#include "cvx/alexandrov.hpp"
#include "cvx/inequalities.hpp"
#include "cvx/solver.hpp"

namespace cvx {

using Json = nlohmann::json;

/// Scalars are decimal strings ("0.25", "1e-3"), exact rationals ("3/4") or
/// plain JSON numbers. `field` is used in SchemaError messages.
template <typename Scalar>
Scalar scalar_from_json(const Json& j, const std::string& field);

/// Exact mode writes "p/q"; floating mode writes the shortest round-trip decimal.
template <typename Scalar>
Json scalar_to_json(const Scalar& x);

template <typename Scalar>
Vector<Scalar> vector_from_json(const Json& j, int dim, const std::string& field);

template <typename Scalar>
Json vector_to_json(const Vector<Scalar>& v);

/// {"dim": n, "vertices": [[...], ...]}; the hull is taken at load.
template <typename Scalar>
Polytope<Scalar> polytope_from_json(const Json& j, bool allow_lower_dim = false);

template <typename Scalar>
Json to_json(const Polytope<Scalar>& p);

/// {"dim": n, "halfspaces": [{"normal": [...], "bound": q}, ...]}.
template <typename Scalar>
HalfspaceSystem<Scalar> halfspaces_from_json(const Json& j);

template <typename Scalar>
Json to_json(const HalfspaceSystem<Scalar>& h);

/// {"dim": n, "atoms": [{"normal": [...], "weight": q}, ...]}. With
/// `for_solving`, weights must be positive and the centroid must vanish
/// (InvariantViolation otherwise).
template <typename Scalar>
SurfaceMeasure<Scalar> measure_from_json(const Json& j, bool for_solving = false);

template <typename Scalar>
Json to_json(const SurfaceMeasure<Scalar>& m);

/// {"dim": n, "directions": [[...], ...], "values": [...]}.
template <typename Scalar>
SupportSample<Scalar> sample_from_json(const Json& j);

template <typename Scalar>
Json to_json(const SupportSample<Scalar>& s);

template <typename Scalar>
Json to_json(const Decomposition<Scalar>& d);

Json to_json(const CheckReport& r);
Json to_json(const SolveDiagnostics& d);

/// Parses a file; SchemaError carries the path and the parser message.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

#define CVX_IO_EXTERN(S)                                                             \
  extern template S scalar_from_json<S>(const Json&, const std::string&);          \
  extern template Json scalar_to_json(const S&);                                   \
  extern template Vector<S> vector_from_json<S>(const Json&, int, const std::string&); \
  extern template Json vector_to_json(const Vector<S>&);                           \
  extern template Polytope<S> polytope_from_json<S>(const Json&, bool);            \
  extern template Json to_json(const Polytope<S>&);                                \
  extern template HalfspaceSystem<S> halfspaces_from_json<S>(const Json&);         \
  extern template Json to_json(const HalfspaceSystem<S>&);                         \
  extern template SurfaceMeasure<S> measure_from_json<S>(const Json&, bool);       \
  extern template Json to_json(const SurfaceMeasure<S>&);                          \
  extern template SupportSample<S> sample_from_json<S>(const Json&);               \
  extern template Json to_json(const SupportSample<S>&);                           \
  extern template Json to_json(const Decomposition<S>&);

CVX_IO_EXTERN(double)
CVX_IO_EXTERN(Rational)
#undef CVX_IO_EXTERN

}  // namespace cvx

#endif
