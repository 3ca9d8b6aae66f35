#include "cvx/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cvx {
namespace {

[[noreturn]] void schema(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::SchemaError, field + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(where.empty() ? key : where + "." + key, "missing field");
  return *it;
}

int dim_from_json(const Json& j) {
  const Json& d = member(j, "dim", "");
  if (!d.is_number_integer() || d.get<long>() < 1) schema("dim", "expected a positive integer");
  return d.get<int>();
}

double parse_double(const std::string& s, const std::string& field) {
  if (s.find('/') != std::string::npos) {
    try {
      return to_double(parse_rational(s));
    } catch (const std::invalid_argument& e) {
      schema(field, e.what());
    }
  }
  const char* begin = s.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || *end != '\0') schema(field, "malformed number '" + s + "'");
  return x;
}

}  // namespace

template <typename Scalar>
Scalar scalar_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_number()) return ScalarTraits<Scalar>::from_double(j.get<double>());
  if (!j.is_string()) schema(field, "expected a number or a numeric string");
  const std::string s = j.get<std::string>();
  if constexpr (ScalarTraits<Scalar>::exact) {
    try {
      return parse_rational(s);
    } catch (const std::invalid_argument& e) {
      schema(field, e.what());
    }
  } else {
    return parse_double(s, field);
  }
}

template <typename Scalar>
Json scalar_to_json(const Scalar& x) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    return format_rational(x);
  } else {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x == 0.0 ? 0.0 : x);
    return std::string(buf, res.ptr);
  }
}

template <typename Scalar>
Vector<Scalar> vector_from_json(const Json& j, int dim, const std::string& field) {
  if (!j.is_array()) schema(field, "expected an array");
  if (static_cast<int>(j.size()) != dim)
    schema(field, "expected " + std::to_string(dim) + " entries, got " + std::to_string(j.size()));
  Vector<Scalar> v(dim);
  for (int i = 0; i < dim; ++i)
    v(i) = scalar_from_json<Scalar>(j[static_cast<std::size_t>(i)], field + "[" + std::to_string(i) + "]");
  return v;
}

template <typename Scalar>
Json vector_to_json(const Vector<Scalar>& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v(i)));
  return out;
}

template <typename Scalar>
Polytope<Scalar> polytope_from_json(const Json& j, bool allow_lower_dim) {
  const int n = dim_from_json(j);
  const Json& vs = member(j, "vertices", "");
  if (!vs.is_array() || vs.empty()) schema("vertices", "expected a nonempty array");
  std::vector<Vector<Scalar>> pts;
  for (std::size_t i = 0; i < vs.size(); ++i)
    pts.push_back(vector_from_json<Scalar>(vs[i], n, "vertices[" + std::to_string(i) + "]"));
  return convex_hull(pts, allow_lower_dim);
}

template <typename Scalar>
Json to_json(const Polytope<Scalar>& p) {
  Json vs = Json::array();
  for (const auto& v : p.vertices()) vs.push_back(vector_to_json(v));
  return {{"dim", p.dim()}, {"vertices", vs}};
}

template <typename Scalar>
HalfspaceSystem<Scalar> halfspaces_from_json(const Json& j) {
  HalfspaceSystem<Scalar> h;
  h.dim = dim_from_json(j);
  const Json& hs = member(j, "halfspaces", "");
  if (!hs.is_array()) schema("halfspaces", "expected an array");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const std::string where = "halfspaces[" + std::to_string(i) + "]";
    h.add(vector_from_json<Scalar>(member(hs[i], "normal", where), h.dim, where + ".normal"),
          scalar_from_json<Scalar>(member(hs[i], "bound", where), where + ".bound"));
  }
  return h;
}

template <typename Scalar>
Json to_json(const HalfspaceSystem<Scalar>& h) {
  Json hs = Json::array();
  for (const auto& c : h.constraints) hs.push_back({{"normal", vector_to_json(c.normal)}, {"bound", scalar_to_json(c.bound)}});
  return {{"dim", h.dim}, {"halfspaces", hs}};
}

template <typename Scalar>
SurfaceMeasure<Scalar> measure_from_json(const Json& j, bool for_solving) {
  const int n = dim_from_json(j);
  const Json& as = member(j, "atoms", "");
  if (!as.is_array()) schema("atoms", "expected an array");
  SurfaceMeasure<Scalar> m(n);
  for (std::size_t i = 0; i < as.size(); ++i) {
    const std::string where = "atoms[" + std::to_string(i) + "]";
    Vector<Scalar> u = vector_from_json<Scalar>(member(as[i], "normal", where), n, where + ".normal");
    const Scalar w = scalar_from_json<Scalar>(member(as[i], "weight", where), where + ".weight");
    if (u.isZero()) throw Error(ErrorCode::InvariantViolation, where + ".normal: zero vector");
    if (for_solving && !(w > 0)) throw Error(ErrorCode::InvariantViolation, where + ".weight: must be positive");
    m.add(std::move(u), w);
  }
  if (for_solving) {
    const double defect = centroid_defect_norm(m);
    if (defect > 1e-8 * std::max(1.0, m.total_mass()))
      throw Error(ErrorCode::InvariantViolation, "atoms: centroid is not zero (|sum w u| = " + std::to_string(defect) + ")");
  }
  return m;
}

template <typename Scalar>
Json to_json(const SurfaceMeasure<Scalar>& m) {
  Json as = Json::array();
  for (const auto& a : m.atoms()) as.push_back({{"normal", vector_to_json(a.normal)}, {"weight", scalar_to_json(a.weight)}});
  return {{"dim", m.dim()}, {"atoms", as}};
}

template <typename Scalar>
SupportSample<Scalar> sample_from_json(const Json& j) {
  const int n = dim_from_json(j);
  const Json& ds = member(j, "directions", "");
  const Json& vs = member(j, "values", "");
  if (!ds.is_array()) schema("directions", "expected an array");
  if (!vs.is_array()) schema("values", "expected an array");
  if (ds.size() != vs.size()) schema("values", "length differs from directions");
  SupportSample<Scalar> s(n);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const std::string idx = "[" + std::to_string(i) + "]";
    Vector<Scalar> u = vector_from_json<Scalar>(ds[i], n, "directions" + idx);
    if (u.isZero()) throw Error(ErrorCode::InvariantViolation, "directions" + idx + ": zero vector");
    s.add(std::move(u), scalar_from_json<Scalar>(vs[i], "values" + idx));
  }
  return s;
}

template <typename Scalar>
Json to_json(const SupportSample<Scalar>& s) {
  Json ds = Json::array(), vs = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    ds.push_back(vector_to_json(s.directions()[i]));
    vs.push_back(scalar_to_json(s.values()[i]));
  }
  return {{"dim", s.dim()}, {"directions", ds}, {"values", vs}};
}

template <typename Scalar>
Json to_json(const Decomposition<Scalar>& d) {
  return {{"body", to_json(d.body)},
          {"positive_part", to_json(d.positive_part)},
          {"negative_part", to_json(d.negative_part)},
          {"orthogonality_defect", scalar_to_json(d.orthogonality_defect)},
          {"scale", d.scale}};
}

Json to_json(const CheckReport& r) {
  Json w = Json::object();
  for (const auto& [k, v] : r.witnesses) w[k] = v;
  Json out = {{"name", r.name}, {"lhs", r.lhs},       {"rhs", r.rhs},     {"slack", r.slack},
              {"pass", r.pass}, {"equality", r.equality}, {"witnesses", w}};
  out["detector"] = r.detector ? Json(*r.detector) : Json(nullptr);
  if (!r.label.empty()) out["label"] = r.label;
  return out;
}

Json to_json(const SolveDiagnostics& d) {
  return {{"iterations", d.iterations},
          {"max_relative_area_error", d.max_relative_area_error},
          {"centroid_defect", d.centroid_defect},
          {"converged", d.converged}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::SchemaError, path + ": cannot write file");
  out << j.dump(2) << '\n';
}

#define CVX_IO_INSTANTIATE(S)                                                 \
  template S scalar_from_json<S>(const Json&, const std::string&);          \
  template Json scalar_to_json(const S&);                                   \
  template Vector<S> vector_from_json<S>(const Json&, int, const std::string&); \
  template Json vector_to_json(const Vector<S>&);                           \
  template Polytope<S> polytope_from_json<S>(const Json&, bool);            \
  template Json to_json(const Polytope<S>&);                                \
  template HalfspaceSystem<S> halfspaces_from_json<S>(const Json&);         \
  template Json to_json(const HalfspaceSystem<S>&);                         \
  template SurfaceMeasure<S> measure_from_json<S>(const Json&, bool);       \
  template Json to_json(const SurfaceMeasure<S>&);                          \
  template SupportSample<S> sample_from_json<S>(const Json&);               \
  template Json to_json(const SupportSample<S>&);                           \
  template Json to_json(const Decomposition<S>&);

CVX_IO_INSTANTIATE(double)
CVX_IO_INSTANTIATE(Rational)

}  // namespace cvx
