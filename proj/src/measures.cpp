#include "cvx/measures.hpp"

#include <algorithm>
#include <map>

#include "cvx/detail/cone.hpp"

namespace cvx {
namespace {

template <typename Scalar>
Scalar scalar_abs(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

template <typename Scalar>
bool is_zero_vector(const Vector<Scalar>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] != 0) return false;
  return true;
}

template <typename Scalar>
bool canonical_equal(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    return vectors_equal(a, b);
  } else {
    // Chord length of unit vectors agrees with the angle to first order.
    return (a - b).norm() <= kNormalAngleTolerance;
  }
}

// Groups identical bodies so that subset sums with equal multiplicities are
// computed once.
template <typename Scalar>
struct Grouping {
  std::vector<Polytope<Scalar>> distinct;
  std::vector<int> group_of;
};

template <typename Scalar>
Grouping<Scalar> group_bodies(const std::vector<Polytope<Scalar>>& bodies) {
  Grouping<Scalar> g;
  for (const auto& b : bodies) {
    int found = -1;
    for (std::size_t j = 0; j < g.distinct.size(); ++j)
      if (same_vertices(b, g.distinct[j])) {
        found = static_cast<int>(j);
        break;
      }
    if (found < 0) {
      found = static_cast<int>(g.distinct.size());
      g.distinct.push_back(b);
    }
    g.group_of.push_back(found);
  }
  return g;
}

template <typename Scalar>
class CombinationCache {
 public:
  explicit CombinationCache(std::vector<Polytope<Scalar>> bodies) : bodies_(std::move(bodies)) {}

  const Polytope<Scalar>& get(const std::vector<int>& counts) {
    auto it = cache_.find(counts);
    if (it != cache_.end()) return it->second;
    int last = -1;
    for (std::size_t j = 0; j < counts.size(); ++j)
      if (counts[j] != 0) last = static_cast<int>(j);
    Polytope<Scalar> result;
    if (last < 0) {
      result = Polytope<Scalar>(bodies_.front().dim(), {Vector<Scalar>::Zero(bodies_.front().dim())}, 0);
    } else {
      std::vector<int> rest = counts;
      rest[static_cast<std::size_t>(last)] = 0;
      const Polytope<Scalar> scaled =
          scale(bodies_[static_cast<std::size_t>(last)], Scalar(counts[static_cast<std::size_t>(last)]));
      bool rest_empty = std::all_of(rest.begin(), rest.end(), [](int c) { return c == 0; });
      result = rest_empty ? scaled : minkowski_sum(get(rest), scaled);
    }
    return cache_.emplace(counts, std::move(result)).first->second;
  }

 private:
  std::vector<Polytope<Scalar>> bodies_;
  std::map<std::vector<int>, Polytope<Scalar>> cache_;
};

template <typename Scalar>
Scalar factorial(int k) {
  Scalar f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

template <typename Scalar>
void check_dims(const std::vector<Polytope<Scalar>>& bodies, int n) {
  for (const auto& b : bodies)
    if (b.dim() != n) throw Error(ErrorCode::DimensionMismatch, "bodies of different dimensions");
}

}  // namespace

template <typename Scalar>
Scalar canonicalize_direction(Vector<Scalar>& d) {
  if (is_zero_vector(d)) throw Error(ErrorCode::ZeroDirection, "zero direction");
  if constexpr (ScalarTraits<Scalar>::exact) {
    Integer lcm = 1;
    for (Eigen::Index i = 0; i < d.size(); ++i)
      lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(d[i]));
    Integer g = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      const Integer num = boost::multiprecision::numerator(Rational(d[i] * Rational(lcm)));
      if (num != 0) g = boost::multiprecision::gcd(g, num);
    }
    const Rational factor = Rational(lcm) / Rational(g);
    d *= factor;
    return Rational(1) / factor;
  } else {
    const double len = d.norm();
    d /= len;
    return len;
  }
}

template <typename Scalar>
bool same_direction(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  Vector<Scalar> ca = a, cb = b;
  canonicalize_direction(ca);
  canonicalize_direction(cb);
  return canonical_equal(ca, cb);
}

// SurfaceMeasure

template <typename Scalar>
std::optional<std::size_t> SurfaceMeasure<Scalar>::find(const Vector<Scalar>& u) const {
  Vector<Scalar> c = u;
  canonicalize_direction(c);
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (canonical_equal(atoms_[i].normal, c)) return i;
  return std::nullopt;
}

template <typename Scalar>
void SurfaceMeasure<Scalar>::add(Vector<Scalar> normal, Scalar weight) {
  if (normal.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "atom normal size");
  weight *= canonicalize_direction(normal);
  for (auto& a : atoms_)
    if (canonical_equal(a.normal, normal)) {
      a.weight += weight;
      return;
    }
  atoms_.push_back({std::move(normal), std::move(weight)});
}

template <typename Scalar>
void SurfaceMeasure<Scalar>::prune(double tol) {
  std::vector<Atom<Scalar>> kept;
  for (auto& a : atoms_) {
    if constexpr (ScalarTraits<Scalar>::exact) {
      if (a.weight < 0)
        throw Error(ErrorCode::NumericalResidue, "negative atom weight " + format_rational(a.weight));
      if (a.weight == 0) continue;
    } else {
      if (a.weight < -tol)
        throw Error(ErrorCode::NumericalResidue, "negative atom weight " + std::to_string(a.weight));
      if (a.weight <= tol) continue;
    }
    kept.push_back(std::move(a));
  }
  atoms_ = std::move(kept);
}

template <typename Scalar>
bool SurfaceMeasure<Scalar>::spans() const {
  std::vector<Vector<Scalar>> rows;
  for (const auto& a : atoms_) rows.push_back(a.normal);
  return !rows.empty() && detail::row_rank(rows, dim_) == dim_;
}

template <typename Scalar>
double SurfaceMeasure<Scalar>::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.mass();
  return m;
}

template <typename Scalar>
SurfaceMeasure<double> SurfaceMeasure<Scalar>::to_double() const {
  SurfaceMeasure<double> out(dim_);
  for (const auto& a : atoms_) out.add(cvx::to_double(a.normal), cvx::to_double(a.weight));
  return out;
}

template <typename Scalar>
SurfaceMeasure<Scalar>& SurfaceMeasure<Scalar>::operator+=(const SurfaceMeasure& other) {
  if (dim_ == 0 && atoms_.empty()) dim_ = other.dim_;
  if (other.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "measures of different dimensions");
  for (const auto& a : other.atoms_) add(a.normal, a.weight);
  return *this;
}

template <typename Scalar>
SurfaceMeasure<Scalar>& SurfaceMeasure<Scalar>::operator*=(const Scalar& s) {
  for (auto& a : atoms_) a.weight *= s;
  return *this;
}

// SupportSample

template <typename Scalar>
std::optional<std::size_t> SupportSample<Scalar>::find(const Vector<Scalar>& u) const {
  Vector<Scalar> c = u;
  canonicalize_direction(c);
  for (std::size_t i = 0; i < directions_.size(); ++i)
    if (canonical_equal(directions_[i], c)) return i;
  return std::nullopt;
}

template <typename Scalar>
void SupportSample<Scalar>::add(Vector<Scalar> direction, Scalar value) {
  if (direction.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "sample direction size");
  const Scalar c = canonicalize_direction(direction);
  for (const auto& d : directions_)
    if (canonical_equal(d, direction)) throw Error(ErrorCode::InvariantViolation, "repeated sample direction");
  directions_.push_back(std::move(direction));
  values_.push_back(value / c);
}

template <typename Scalar>
std::optional<Scalar> SupportSample<Scalar>::value_at(const Vector<Scalar>& u) const {
  Vector<Scalar> c = u;
  const Scalar factor = canonicalize_direction(c);
  for (std::size_t i = 0; i < directions_.size(); ++i)
    if (canonical_equal(directions_[i], c)) return Scalar(values_[i] * factor);
  return std::nullopt;
}

template <typename Scalar>
bool SupportSample<Scalar>::bounds_a_body() const {
  // Bounded iff the recession cone {y : d . y <= 0 for all d} is {0}.
  std::vector<Vector<Scalar>> rows;
  for (const auto& d : directions_) rows.push_back(-d);
  if (rows.empty()) return false;
  const auto cone = detail::enumerate_cone(rows, dim_);
  return cone.rank == dim_ && cone.rays.empty();
}

template <typename Scalar>
SupportSample<double> SupportSample<Scalar>::to_double() const {
  SupportSample<double> out(dim_);
  for (std::size_t i = 0; i < values_.size(); ++i)
    out.add(cvx::to_double(directions_[i]), cvx::to_double(values_[i]));
  return out;
}

template <typename Scalar>
SupportSample<Scalar> SupportSample<Scalar>::operator+(const SupportSample& other) const {
  if (other.size() != size()) throw Error(ErrorCode::InvariantViolation, "samples on different directions");
  SupportSample out = *this;
  for (std::size_t i = 0; i < size(); ++i) {
    const auto v = other.value_at(directions_[i]);
    if (!v) throw Error(ErrorCode::MissingDirection, "samples on different directions");
    out.values_[i] += *v;
  }
  return out;
}

template <typename Scalar>
SupportSample<Scalar> SupportSample<Scalar>::operator-(const SupportSample& other) const {
  return *this + other * Scalar(-1);
}

template <typename Scalar>
SupportSample<Scalar> SupportSample<Scalar>::operator*(const Scalar& s) const {
  SupportSample out = *this;
  for (auto& v : out.values_) v *= s;
  return out;
}

template <typename Scalar>
SupportSample<Scalar> SupportSample<Scalar>::with_values(std::vector<Scalar> values) const {
  if (values.size() != size()) throw Error(ErrorCode::DimensionMismatch, "value count");
  SupportSample out = *this;
  out.values_ = std::move(values);
  return out;
}

template <typename Scalar>
SupportSample<Scalar> sample_support(const Polytope<Scalar>& p, const std::vector<Vector<Scalar>>& directions) {
  SupportSample<Scalar> s(p.dim());
  for (const auto& d : directions) s.add(d, support_value(p, d));
  return s;
}

template <typename Scalar>
SupportSample<Scalar> sample_linear(const Vector<Scalar>& a, const std::vector<Vector<Scalar>>& directions) {
  SupportSample<Scalar> s(static_cast<int>(a.size()));
  for (const auto& d : directions) s.add(d, a.dot(d));
  return s;
}

// Measures

template <typename Scalar>
SurfaceMeasure<Scalar> area_measure(const Polytope<Scalar>& p) {
  if (!p.full_dimensional())
    throw Error(ErrorCode::DegenerateInput, "area measure of a lower-dimensional body");
  SurfaceMeasure<Scalar> m(p.dim());
  for (const auto& f : p.facets()) m.add(f.normal, f.weight);
  return m;
}

template <typename Scalar>
SurfaceMeasure<Scalar> area_measure_any(const Polytope<Scalar>& p) {
  const int n = p.dim();
  if (p.full_dimensional()) return area_measure(p);
  SurfaceMeasure<Scalar> m(n);
  if (p.affine_dim() != n - 1) return m;
  if (n == 1) return m;
  std::vector<Vector<Scalar>> diffs;
  for (const auto& v : p.vertices()) diffs.push_back(v - p.vertices().front());
  auto normals = detail::null_space(diffs, n);
  Vector<Scalar> a = normals.front();
  canonicalize_direction(a);
  Eigen::Index j = 0;
  for (Eigen::Index c = 1; c < n; ++c)
    if (scalar_abs(a[c]) > scalar_abs(a[j])) j = c;
  const Scalar w = volume(project_out(p, static_cast<int>(j))) / scalar_abs(a[j]);
  m.add(a, w);
  m.add(Vector<Scalar>(-a), w);
  return m;
}

template <typename Scalar>
Scalar mixed_volume(const std::vector<Polytope<Scalar>>& bodies) {
  if (bodies.empty()) throw Error(ErrorCode::DimensionMismatch, "no bodies");
  const int n = bodies.front().dim();
  check_dims(bodies, n);
  if (static_cast<int>(bodies.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "mixed volume needs exactly n bodies");
  const Grouping<Scalar> g = group_bodies(bodies);
  CombinationCache<Scalar> cache(g.distinct);
  std::map<std::vector<int>, Scalar> volumes;
  Scalar acc(0);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> counts(g.distinct.size(), 0);
    int size = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        ++counts[static_cast<std::size_t>(g.group_of[static_cast<std::size_t>(i)])];
        ++size;
      }
    auto it = volumes.find(counts);
    if (it == volumes.end()) it = volumes.emplace(counts, volume(cache.get(counts))).first;
    if ((n - size) % 2 == 0)
      acc += it->second;
    else
      acc -= it->second;
  }
  return acc / factorial<Scalar>(n);
}

template <typename Scalar>
Scalar mixed_volume(const Polytope<Scalar>& k, int a, const Polytope<Scalar>& l, int b) {
  if (a < 0 || b < 0 || a + b != k.dim())
    throw Error(ErrorCode::DimensionMismatch, "multiplicities must sum to n");
  std::vector<Polytope<Scalar>> bodies(static_cast<std::size_t>(a), k);
  for (int i = 0; i < b; ++i) bodies.push_back(l);
  return mixed_volume(bodies);
}

template <typename Scalar>
SurfaceMeasure<Scalar> mixed_area_measure(const std::vector<Polytope<Scalar>>& bodies) {
  if (bodies.empty()) throw Error(ErrorCode::DimensionMismatch, "no bodies");
  const int n = bodies.front().dim();
  check_dims(bodies, n);
  const int k = n - 1;
  if (static_cast<int>(bodies.size()) != k)
    throw Error(ErrorCode::DimensionMismatch, "mixed area measure needs exactly n-1 bodies");
  SurfaceMeasure<Scalar> acc(n);
  if (k == 0) {
    // n = 1: the measure of any body is the counting measure on {-1, +1}.
    Vector<Scalar> e(1);
    e[0] = Scalar(1);
    acc.add(e, Scalar(1));
    acc.add(Vector<Scalar>(-e), Scalar(1));
    return acc;
  }
  const Grouping<Scalar> g = group_bodies(bodies);
  CombinationCache<Scalar> cache(g.distinct);
  std::map<std::vector<int>, int> coefficient;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> counts(g.distinct.size(), 0);
    int size = 0;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) {
        ++counts[static_cast<std::size_t>(g.group_of[static_cast<std::size_t>(i)])];
        ++size;
      }
    coefficient[counts] += (k - size) % 2 == 0 ? 1 : -1;
  }
  double scale = 1.0;
  for (const auto& [counts, c] : coefficient) {
    if (c == 0) continue;
    SurfaceMeasure<Scalar> s = area_measure_any(cache.get(counts));
    for (const auto& a : s.atoms()) scale = std::max(scale, a.mass());
    s *= Scalar(c);
    acc += s;
  }
  acc *= Scalar(1) / factorial<Scalar>(k);
  acc.prune(1e-10 * scale);
  return acc;
}

template <typename Scalar>
Scalar integrate(const SurfaceMeasure<Scalar>& m, const SupportSample<Scalar>& f) {
  if (m.dim() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "measure and sample dimensions");
  Scalar acc(0);
  for (const auto& a : m.atoms()) {
    const auto v = f.value_at(a.normal);
    if (!v) throw Error(ErrorCode::MissingDirection, "sample has no value at an atom of the measure");
    acc += *v * a.weight;
  }
  return acc;
}

template <typename Scalar>
Scalar integrate(const SurfaceMeasure<Scalar>& m, const Polytope<Scalar>& p) {
  if (m.dim() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "measure and body dimensions");
  Scalar acc(0);
  for (const auto& a : m.atoms()) acc += support_value(p, a.normal) * a.weight;
  return acc;
}

template <typename Scalar>
Scalar mixed_volume_via_measure(const std::vector<Polytope<Scalar>>& bodies, const Polytope<Scalar>& l) {
  const SurfaceMeasure<Scalar> s = mixed_area_measure(bodies);
  return integrate(s, l) / Scalar(l.dim());
}

template <typename Scalar>
Scalar mixed_volume_via_measure(const std::vector<Polytope<Scalar>>& bodies, const SupportSample<Scalar>& l) {
  const SurfaceMeasure<Scalar> s = mixed_area_measure(bodies);
  return integrate(s, l) / Scalar(l.dim());
}

template <typename Scalar>
Vector<Scalar> centroid_defect(const SurfaceMeasure<Scalar>& m) {
  Vector<Scalar> c = Vector<Scalar>::Zero(m.dim());
  for (const auto& a : m.atoms()) c += a.weight * a.normal;
  return c;
}

template <typename Scalar>
Polytope<Scalar> minkowski_combination(const std::vector<Polytope<Scalar>>& bodies,
                                       const std::vector<int>& counts) {
  if (bodies.size() != counts.size() || bodies.empty())
    throw Error(ErrorCode::DimensionMismatch, "one count per body");
  for (int c : counts)
    if (c < 0) throw Error(ErrorCode::NegativeScale, "negative multiplicity");
  check_dims(bodies, bodies.front().dim());
  CombinationCache<Scalar> cache(bodies);
  return cache.get(counts);
}

#define CVX_MEASURES_INSTANTIATE(S)                                                         \
  template class SurfaceMeasure<S>;                                                         \
  template class SupportSample<S>;                                                          \
  template S canonicalize_direction(Vector<S>&);                                            \
  template bool same_direction(const Vector<S>&, const Vector<S>&);                         \
  template SupportSample<S> sample_support(const Polytope<S>&, const std::vector<Vector<S>>&); \
  template SupportSample<S> sample_linear(const Vector<S>&, const std::vector<Vector<S>>&); \
  template SurfaceMeasure<S> area_measure(const Polytope<S>&);                              \
  template SurfaceMeasure<S> area_measure_any(const Polytope<S>&);                          \
  template S mixed_volume(const std::vector<Polytope<S>>&);                                 \
  template S mixed_volume(const Polytope<S>&, int, const Polytope<S>&, int);                \
  template SurfaceMeasure<S> mixed_area_measure(const std::vector<Polytope<S>>&);           \
  template S mixed_volume_via_measure(const std::vector<Polytope<S>>&, const Polytope<S>&); \
  template S mixed_volume_via_measure(const std::vector<Polytope<S>>&, const SupportSample<S>&); \
  template S integrate(const SurfaceMeasure<S>&, const SupportSample<S>&);                  \
  template S integrate(const SurfaceMeasure<S>&, const Polytope<S>&);                       \
  template Vector<S> centroid_defect(const SurfaceMeasure<S>&);                             \
  template Polytope<S> minkowski_combination(const std::vector<Polytope<S>>&, const std::vector<int>&);

CVX_MEASURES_INSTANTIATE(double)
CVX_MEASURES_INSTANTIATE(Rational)

}  // namespace cvx
