#include "cvx/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "cvx/detail/cone.hpp"

namespace cvx {
namespace {

using boost::multiprecision::abs;
using std::abs;

template <typename Scalar>
Scalar scalar_abs(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

template <typename Scalar>
double coordinate_scale(const std::vector<Vector<Scalar>>& points) {
  double s = 1.0;
  for (const auto& p : points)
    for (Eigen::Index i = 0; i < p.size(); ++i) s = std::max(s, std::abs(to_double(p[i])));
  return s;
}

// Canonical scaling of a hyperplane (normal, offset): primitive integer normal
// in exact mode, unit normal in floating mode.
void normalize_plane(Vector<double>& normal, double& offset) {
  const double n = normal.norm();
  normal /= n;
  offset /= n;
}

void normalize_plane(Vector<Rational>& normal, Rational& offset) {
  Integer lcm = 1;
  for (Eigen::Index i = 0; i < normal.size(); ++i)
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(normal[i]));
  Integer g = 0;
  for (Eigen::Index i = 0; i < normal.size(); ++i) {
    const Integer num = boost::multiprecision::numerator(Rational(normal[i] * Rational(lcm)));
    if (num != 0) g = boost::multiprecision::gcd(g, num);
  }
  const Rational factor = Rational(lcm) / Rational(g);
  normal *= factor;
  offset *= factor;
}

template <typename Scalar>
bool near_equal(const Vector<Scalar>& a, const Vector<Scalar>& b, double tol) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    (void)tol;
    return vectors_equal(a, b);
  } else {
    return (a - b).cwiseAbs().maxCoeff() <= tol;
  }
}

// Distinct points; exact duplicates (or near duplicates in floating mode)
// collapse to the first occurrence.
template <typename Scalar>
std::vector<Vector<Scalar>> dedupe(std::vector<Vector<Scalar>> points) {
  std::sort(points.begin(), points.end(), lex_less<Scalar>);
  if constexpr (ScalarTraits<Scalar>::exact) {
    points.erase(std::unique(points.begin(), points.end(), vectors_equal<Scalar>), points.end());
    return points;
  } else {
    const double tol = 1e-12 * coordinate_scale(points);
    std::vector<bool> dead(points.size(), false);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (dead[i]) continue;
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        if (points[j][0] - points[i][0] > tol) break;
        if (!dead[j] && near_equal(points[i], points[j], tol)) dead[j] = true;
      }
    }
    std::vector<Vector<Scalar>> out;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (!dead[i]) out.push_back(points[i]);
    return out;
  }
}

template <typename Scalar>
Vector<Scalar> homogenize(const Vector<Scalar>& p) {
  Vector<Scalar> row(p.size() + 1);
  row[0] = Scalar(1);
  row.tail(p.size()) = p;
  return row;
}

template <typename Scalar>
int affine_rank(const std::vector<Vector<Scalar>>& points) {
  if (points.empty()) return -1;
  std::vector<Vector<Scalar>> rows;
  rows.reserve(points.size());
  for (const auto& p : points) rows.push_back(homogenize(p));
  return detail::row_rank(rows, static_cast<int>(points.front().size()) + 1) - 1;
}

template <typename Scalar>
struct HullData {
  std::vector<int> vertices;  // indices into the input
  std::vector<Facet<Scalar>> facets;
  std::vector<std::vector<int>> incidence;  // input indices
};

// Hull of distinct, full-dimensional points via the double description
// method on the cone {(b, a) : b + a . p >= 0}.
template <typename Scalar>
HullData<Scalar> full_hull(const std::vector<Vector<Scalar>>& points) {
  const int n = static_cast<int>(points.front().size());
  const std::size_t m = points.size();
  std::vector<Vector<Scalar>> rows;
  rows.reserve(m);
  for (const auto& p : points) rows.push_back(homogenize(p));

  // Far points first: the hull grows quickly and most later points are
  // interior, which costs one dot product per ray.
  VectorXd center = VectorXd::Zero(n);
  for (const auto& p : points) center += to_double(p);
  center /= static_cast<double>(m);
  std::vector<double> dist(m);
  for (std::size_t i = 0; i < m; ++i) dist[i] = (to_double(points[i]) - center).squaredNorm();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] > dist[b]; });

  const auto cone = detail::enumerate_cone(rows, n + 1, order);
  if (cone.rank < n + 1) throw Error(ErrorCode::DegenerateInput, "points are not full-dimensional");

  HullData<Scalar> out;
  std::vector<std::vector<int>> facets_of_point(m);
  for (std::size_t f = 0; f < cone.rays.size(); ++f) {
    const auto& y = cone.rays[f];
    Facet<Scalar> facet;
    facet.normal = -y.tail(n);
    facet.offset = y[0];
    normalize_plane(facet.normal, facet.offset);
    out.facets.push_back(std::move(facet));
    for (std::size_t i = 0; i < m; ++i)
      if (cone.zeros[f].test(i)) facets_of_point[i].push_back(static_cast<int>(f));
  }

  std::vector<bool> is_vertex(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (facets_of_point[i].empty()) continue;
    boost::dynamic_bitset<> meet = cone.zeros[static_cast<std::size_t>(facets_of_point[i][0])];
    for (int f : facets_of_point[i]) meet &= cone.zeros[static_cast<std::size_t>(f)];
    if (meet.count() == 1) {
      is_vertex[i] = true;
    } else if constexpr (!ScalarTraits<Scalar>::exact) {
      // A cluster of numerically coincident points shares every facet; keep
      // its first member.
      if (meet.find_first() != i) continue;
      const double tol = 1e-9 * coordinate_scale(points);
      bool cluster = true;
      for (std::size_t j = meet.find_next(i); j != boost::dynamic_bitset<>::npos && cluster; j = meet.find_next(j))
        cluster = near_equal(points[i], points[j], tol);
      is_vertex[i] = cluster;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (is_vertex[i]) out.vertices.push_back(static_cast<int>(i));
  if (static_cast<int>(out.vertices.size()) < n + 1)
    throw Error(ErrorCode::DegenerateInput, "hull is numerically degenerate");
  out.incidence.resize(out.facets.size());
  for (std::size_t f = 0; f < out.facets.size(); ++f)
    for (int v : out.vertices)
      if (cone.zeros[f].test(static_cast<std::size_t>(v))) out.incidence[f].push_back(v);
  return out;
}

// Sorts facets by normal and rewrites incidence through `remap`.
template <typename Scalar>
void canonicalize_facets(std::vector<Facet<Scalar>>& facets, std::vector<std::vector<int>>& incidence,
                         const std::vector<int>& remap, std::vector<int>* permutation = nullptr) {
  for (auto& inc : incidence) {
    for (int& v : inc) v = remap[static_cast<std::size_t>(v)];
    std::sort(inc.begin(), inc.end());
  }
  std::vector<int> order(facets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return lex_less(facets[static_cast<std::size_t>(a)].normal, facets[static_cast<std::size_t>(b)].normal);
  });
  std::vector<Facet<Scalar>> f2;
  std::vector<std::vector<int>> i2;
  for (int k : order) {
    f2.push_back(std::move(facets[static_cast<std::size_t>(k)]));
    i2.push_back(std::move(incidence[static_cast<std::size_t>(k)]));
  }
  facets = std::move(f2);
  incidence = std::move(i2);
  if (permutation) *permutation = order;
}

template <typename Scalar>
Polytope<Scalar> from_full_hull(int n, const std::vector<Vector<Scalar>>& points, HullData<Scalar> data) {
  std::vector<int> sorted = data.vertices;
  std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
    return lex_less(points[static_cast<std::size_t>(a)], points[static_cast<std::size_t>(b)]);
  });
  std::vector<int> remap(points.size(), -1);
  std::vector<Vector<Scalar>> verts;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    remap[static_cast<std::size_t>(sorted[k])] = static_cast<int>(k);
    verts.push_back(points[static_cast<std::size_t>(sorted[k])]);
  }
  canonicalize_facets(data.facets, data.incidence, remap);
  Polytope<Scalar> p(n, std::move(verts), n);
  p.seed_facets(std::move(data.facets), std::move(data.incidence));
  return p;
}

// (n-1)-volume of a facet scaled by 1/|normal|: project along the largest
// normal component, which scales areas by |normal_j| / |normal|.
template <typename Scalar>
Scalar facet_weight(const Facet<Scalar>& facet, const std::vector<Vector<Scalar>>& verts,
                    const std::vector<int>& incidence) {
  const Eigen::Index n = facet.normal.size();
  Eigen::Index j = 0;
  for (Eigen::Index c = 1; c < n; ++c)
    if (scalar_abs(facet.normal[c]) > scalar_abs(facet.normal[j])) j = c;
  const Scalar aj = scalar_abs(facet.normal[j]);
  if (n == 1) return Scalar(1) / aj;
  std::vector<Vector<Scalar>> projected;
  projected.reserve(incidence.size());
  for (int v : incidence) {
    const auto& p = verts[static_cast<std::size_t>(v)];
    Vector<Scalar> q(n - 1);
    q << p.head(j), p.tail(n - 1 - j);
    projected.push_back(std::move(q));
  }
  if (projected.empty()) return Scalar(0);
  const Polytope<Scalar> face = convex_hull(projected, true);
  return volume(face) / aj;
}

}  // namespace

template <typename Scalar>
Polytope<Scalar>::Polytope(int dim, std::vector<Vector<Scalar>> vertices, int affine_dim)
    : dim_(dim), affine_dim_(affine_dim), vertices_(std::move(vertices)) {}

template <typename Scalar>
void Polytope<Scalar>::seed_facets(std::vector<Facet<Scalar>> facets,
                                   std::vector<std::vector<int>> incidence, bool weights_known) {
  cache_->facets = std::move(facets);
  cache_->incidence = std::move(incidence);
  cache_->hrep_seeded = true;
  cache_->weights_seeded = weights_known;
}

template <typename Scalar>
void Polytope<Scalar>::ensure_hrep() const {
  if (!full_dimensional())
    throw Error(ErrorCode::DegenerateInput, "facets of a lower-dimensional polytope");
  std::call_once(cache_->hrep_once, [this] {
    if (cache_->hrep_seeded) return;
    HullData<Scalar> data = full_hull(vertices_);
    std::vector<int> identity(vertices_.size());
    std::iota(identity.begin(), identity.end(), 0);
    canonicalize_facets(data.facets, data.incidence, identity);
    cache_->facets = std::move(data.facets);
    cache_->incidence = std::move(data.incidence);
  });
}

template <typename Scalar>
const std::vector<std::vector<int>>& Polytope<Scalar>::facet_vertices() const {
  ensure_hrep();
  return cache_->incidence;
}

template <typename Scalar>
const std::vector<Facet<Scalar>>& Polytope<Scalar>::facets() const {
  ensure_hrep();
  std::call_once(cache_->weight_once, [this] {
    if (cache_->weights_seeded) return;
    for (std::size_t f = 0; f < cache_->facets.size(); ++f)
      cache_->facets[f].weight = facet_weight(cache_->facets[f], vertices_, cache_->incidence[f]);
  });
  return cache_->facets;
}

template <typename Scalar>
Polytope<double> Polytope<Scalar>::to_double() const {
  if constexpr (std::is_same_v<Scalar, double>) {
    return *this;
  } else {
    std::vector<VectorXd> v;
    v.reserve(vertices_.size());
    for (const auto& p : vertices_) v.push_back(cvx::to_double(p));
    return Polytope<double>(dim_, std::move(v), affine_dim_);
  }
}

template <typename Scalar>
Polytope<Scalar> convex_hull(const std::vector<Vector<Scalar>>& points_in, bool allow_lower_dim) {
  if (points_in.empty()) throw Error(ErrorCode::DegenerateInput, "empty point set");
  const int n = static_cast<int>(points_in.front().size());
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "zero-dimensional ambient space");
  for (const auto& p : points_in)
    if (p.size() != n) throw Error(ErrorCode::DimensionMismatch, "points of mixed dimension");

  const std::vector<Vector<Scalar>> points = dedupe(points_in);
  const int k = affine_rank(points);
  if (k == n) return from_full_hull(n, points, full_hull(points));
  if (!allow_lower_dim)
    throw Error(ErrorCode::DegenerateInput,
                "points span an affine subspace of dimension " + std::to_string(k));
  if (k == 0) return Polytope<Scalar>(n, {points.front()}, 0);

  // Project onto k coordinates that are independent on the affine hull, take
  // the full-dimensional hull there, and keep the preimages of its vertices.
  std::vector<Vector<Scalar>> columns(static_cast<std::size_t>(n), Vector<Scalar>(static_cast<Eigen::Index>(points.size())));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (int c = 0; c < n; ++c)
      columns[static_cast<std::size_t>(c)][static_cast<Eigen::Index>(i)] = points[i][c] - points[0][c];
  const std::vector<int> coords = detail::independent_rows(columns, static_cast<int>(points.size()));
  std::vector<Vector<Scalar>> projected;
  for (const auto& p : points) {
    Vector<Scalar> q(k);
    for (int c = 0; c < k; ++c) q[c] = p[coords[static_cast<std::size_t>(c)]];
    projected.push_back(std::move(q));
  }
  const HullData<Scalar> sub = full_hull(projected);
  std::vector<Vector<Scalar>> verts;
  for (int v : sub.vertices) verts.push_back(points[static_cast<std::size_t>(v)]);
  std::sort(verts.begin(), verts.end(), lex_less<Scalar>);
  return Polytope<Scalar>(n, std::move(verts), k);
}

namespace detail {

template <typename Scalar>
Vector<Scalar> vertex_centroid(const std::vector<Vector<Scalar>>& points) {
  Vector<Scalar> c = Vector<Scalar>::Zero(points.front().size());
  for (const auto& p : points) c += p;
  return c / Scalar(static_cast<long>(points.size()));
}

template <typename Scalar>
IntersectionResult<Scalar> intersect_halfspaces(const HalfspaceSystem<Scalar>& system) {
  const int n = system.dim;
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "halfspace system without dimension");
  for (const auto& h : system.constraints)
    if (h.normal.size() != n) throw Error(ErrorCode::DimensionMismatch, "constraint normal size");

  std::vector<Vector<Scalar>> rows;
  Vector<Scalar> t_row = Vector<Scalar>::Zero(n + 1);
  t_row[0] = Scalar(1);
  rows.push_back(t_row);
  std::vector<Vector<Scalar>> normals;
  for (const auto& h : system.constraints) {
    Vector<Scalar> row(n + 1);
    row[0] = h.bound;
    row.tail(n) = -h.normal;
    rows.push_back(std::move(row));
    normals.push_back(h.normal);
  }
  // Normals that do not span R^n leave a lineality space. Restrict to its
  // orthogonal complement so the cone is pointed; any surviving point then
  // witnesses unboundedness.
  bool has_lineality = false;
  if (row_rank(normals, n) < n) {
    has_lineality = true;
    for (const auto& d : null_space(normals, n)) {
      Vector<Scalar> row = Vector<Scalar>::Zero(n + 1);
      row.tail(n) = d;
      rows.push_back(row);
      rows.push_back(-row);
    }
  }

  const auto cone = enumerate_cone(rows, n + 1);
  std::vector<Vector<Scalar>> verts;
  std::vector<boost::dynamic_bitset<>> vert_zeros;
  bool recession = false;
  for (std::size_t r = 0; r < cone.rays.size(); ++r) {
    const auto& y = cone.rays[r];
    if (ScalarTraits<Scalar>::sign(y[0], Scalar(1)) > 0) {
      verts.push_back(y.tail(n) / y[0]);
      vert_zeros.push_back(cone.zeros[r]);
    } else {
      recession = true;
    }
  }
  if (verts.empty()) throw Error(ErrorCode::Empty, "halfspace system is infeasible");
  if (recession || has_lineality) throw Error(ErrorCode::Unbounded, "halfspace system is unbounded");

  const std::size_t m = system.constraints.size();
  if constexpr (!ScalarTraits<Scalar>::exact) {
    // Polish each vertex by least squares on its active constraints.
    for (std::size_t v = 0; v < verts.size(); ++v) {
      std::vector<std::size_t> active;
      for (std::size_t j = 0; j < m; ++j)
        if (vert_zeros[v].test(j + 1)) active.push_back(j);
      if (static_cast<int>(active.size()) < n) continue;
      Eigen::MatrixXd a(static_cast<Eigen::Index>(active.size()), n);
      Eigen::VectorXd b(static_cast<Eigen::Index>(active.size()));
      for (std::size_t k = 0; k < active.size(); ++k) {
        const double norm = system.constraints[active[k]].normal.norm();
        a.row(static_cast<Eigen::Index>(k)) = system.constraints[active[k]].normal.transpose() / norm;
        b[static_cast<Eigen::Index>(k)] = system.constraints[active[k]].bound / norm;
      }
      const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
      if ((x - verts[v]).norm() <= 1e-6 * (1.0 + verts[v].norm())) verts[v] = x;
    }
    // Merge numerically coincident vertices, uniting their incidences.
    const double tol = 1e-11 * coordinate_scale(verts);
    std::vector<Vector<Scalar>> merged;
    std::vector<boost::dynamic_bitset<>> merged_zeros;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      bool found = false;
      for (std::size_t w = 0; w < merged.size() && !found; ++w) {
        if (near_equal(verts[v], merged[w], tol)) {
          merged_zeros[w] |= vert_zeros[v];
          found = true;
        }
      }
      if (!found) {
        merged.push_back(verts[v]);
        merged_zeros.push_back(vert_zeros[v]);
      }
    }
    verts = std::move(merged);
    vert_zeros = std::move(merged_zeros);
  }

  IntersectionResult<Scalar> out;
  if (affine_rank(verts) < n) {
    out.polytope = convex_hull(verts, true);
    return out;
  }

  std::vector<Facet<Scalar>> facets;
  std::vector<std::vector<int>> incidence;
  std::vector<int> facet_of(m, -1);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<int> inc;
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (vert_zeros[v].test(j + 1)) inc.push_back(static_cast<int>(v));
    if (static_cast<int>(inc.size()) < n) continue;
    std::vector<Vector<Scalar>> on;
    for (int v : inc) on.push_back(verts[static_cast<std::size_t>(v)]);
    if (affine_rank(on) != n - 1) continue;
    int existing = -1;
    for (std::size_t f = 0; f < incidence.size(); ++f)
      if (incidence[f] == inc) existing = static_cast<int>(f);
    if (existing >= 0) {
      facet_of[j] = existing;
      continue;
    }
    Facet<Scalar> facet;
    facet.normal = system.constraints[j].normal;
    facet.offset = system.constraints[j].bound;
    normalize_plane(facet.normal, facet.offset);
    facet_of[j] = static_cast<int>(facets.size());
    facets.push_back(std::move(facet));
    incidence.push_back(std::move(inc));
  }

  std::vector<int> order(verts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return lex_less(verts[static_cast<std::size_t>(a)], verts[static_cast<std::size_t>(b)]);
  });
  std::vector<int> remap(verts.size());
  std::vector<Vector<Scalar>> sorted;
  for (std::size_t k = 0; k < order.size(); ++k) {
    remap[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
    sorted.push_back(verts[static_cast<std::size_t>(order[k])]);
  }
  std::vector<int> perm;
  canonicalize_facets(facets, incidence, remap, &perm);
  std::vector<int> inverse(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inverse[static_cast<std::size_t>(perm[k])] = static_cast<int>(k);
  for (int& f : facet_of)
    if (f >= 0) f = inverse[static_cast<std::size_t>(f)];

  out.polytope = Polytope<Scalar>(n, std::move(sorted), n);
  out.polytope.seed_facets(std::move(facets), std::move(incidence));
  out.facet_of_constraint = std::move(facet_of);
  return out;
}

}  // namespace detail

template <typename Scalar>
Polytope<Scalar> halfspace_intersection(const HalfspaceSystem<Scalar>& system) {
  return detail::intersect_halfspaces(system).polytope;
}

template <typename Scalar>
Scalar volume(const Polytope<Scalar>& p) {
  if (!p.full_dimensional()) return Scalar(0);
  const auto& fs = p.facets();
  const Vector<Scalar> c = detail::vertex_centroid(p.vertices());
  Scalar acc(0);
  for (const auto& f : fs) acc += (f.offset - f.normal.dot(c)) * f.weight;
  return acc / Scalar(p.dim());
}

template <typename Scalar>
Polytope<Scalar> minkowski_sum(const Polytope<Scalar>& p, const Polytope<Scalar>& q) {
  if (p.dim() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "Minkowski sum of different dimensions");
  std::vector<Vector<Scalar>> sums;
  sums.reserve(p.num_vertices() * q.num_vertices());
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) sums.push_back(a + b);
  return convex_hull(sums, true);
}

template <typename Scalar>
Polytope<Scalar> scale_translate(const Polytope<Scalar>& p, const Scalar& lambda,
                                 const Vector<Scalar>& t) {
  if (lambda < 0) throw Error(ErrorCode::NegativeScale, "negative scale factor");
  if (t.size() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "translation size");
  if (lambda == 0) return Polytope<Scalar>(p.dim(), {t}, 0);
  std::vector<Vector<Scalar>> verts;
  verts.reserve(p.num_vertices());
  for (const auto& v : p.vertices()) verts.push_back(lambda * v + t);
  Polytope<Scalar> out(p.dim(), std::move(verts), p.affine_dim());
  if (p.full_dimensional()) {
    // Positive scaling preserves the lexicographic vertex order, so the
    // incidence lists carry over unchanged.
    std::vector<Facet<Scalar>> fs = p.facets();
    Scalar factor(1);
    for (int i = 1; i < p.dim(); ++i) factor *= lambda;
    for (auto& f : fs) {
      f.offset = lambda * f.offset + f.normal.dot(t);
      f.weight *= factor;
    }
    out.seed_facets(std::move(fs), p.facet_vertices(), true);
  }
  return out;
}

template <typename Scalar>
Scalar support_value(const Polytope<Scalar>& p, const Vector<Scalar>& u) {
  if (u.size() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "direction size");
  bool zero = true;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (u[i] != 0) zero = false;
  if (zero) throw Error(ErrorCode::ZeroDirection, "support value in the zero direction");
  Scalar best = u.dot(p.vertices().front());
  for (const auto& v : p.vertices()) {
    Scalar s = u.dot(v);
    if (s > best) best = s;
  }
  return best;
}

template <typename Scalar>
Polytope<Scalar> project_out(const Polytope<Scalar>& p, int j) {
  const int n = p.dim();
  if (n < 2) throw Error(ErrorCode::DimensionMismatch, "cannot project a 1-dimensional body");
  if (j < 0 || j >= n) throw Error(ErrorCode::DimensionMismatch, "coordinate index out of range");
  std::vector<Vector<Scalar>> pts;
  for (const auto& v : p.vertices()) {
    Vector<Scalar> q(n - 1);
    q << v.head(j), v.tail(n - 1 - j);
    pts.push_back(std::move(q));
  }
  return convex_hull(pts, true);
}

namespace {

double support_d(const std::vector<VectorXd>& verts, const VectorXd& u) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : verts) best = std::max(best, u.dot(v));
  return best;
}

std::vector<VectorXd> sphere_sample(int n, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<VectorXd> out;
  if (n == 2) {
    for (int k = 0; k < count; ++k) {
      const double a = 2.0 * M_PI * k / count;
      VectorXd u(2);
      u << std::cos(a), std::sin(a);
      out.push_back(u);
    }
    return out;
  }
  while (static_cast<int>(out.size()) < count) {
    VectorXd u(n);
    for (int i = 0; i < n; ++i) u[i] = g(rng);
    if (u.norm() > 1e-6) out.push_back(u / u.norm());
  }
  return out;
}

void add_direction(std::vector<VectorXd>& dirs, const VectorXd& v) {
  const double norm = v.norm();
  if (norm > 1e-14) dirs.push_back(v / norm);
}

std::vector<VectorXd> double_vertices(const Polytope<double>& p) { return p.vertices(); }

template <typename Scalar>
std::vector<VectorXd> double_vertices(const Polytope<Scalar>& p) {
  std::vector<VectorXd> out;
  for (const auto& v : p.vertices()) out.push_back(to_double(v));
  return out;
}

template <typename Scalar>
std::vector<VectorXd> hausdorff_directions(const Polytope<Scalar>& p, const Polytope<Scalar>& q) {
  const int n = p.dim();
  std::vector<VectorXd> dirs;
  for (const auto* body : {&p, &q}) {
    if (body->full_dimensional())
      for (const auto& f : body->facets()) dirs.push_back(f.unit_normal());
  }
  const auto vp = double_vertices(p);
  const auto vq = double_vertices(q);
  for (const auto& v : vp) add_direction(dirs, v);
  for (const auto& v : vq) add_direction(dirs, v);
  for (const auto& a : vp)
    for (const auto& b : vq) {
      add_direction(dirs, a - b);
      add_direction(dirs, b - a);
    }
  for (auto& u : sphere_sample(n, 10 * n * n, 0x5eed)) dirs.push_back(u);
  return dirs;
}

}  // namespace

template <typename Scalar>
double hausdorff_distance(const Polytope<Scalar>& p, const Polytope<Scalar>& q) {
  if (p.dim() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "Hausdorff distance dimensions");
  const auto vp = double_vertices(p);
  const auto vq = double_vertices(q);
  double best = 0.0;
  for (const auto& u : hausdorff_directions(p, q))
    best = std::max(best, std::abs(support_d(vp, u) - support_d(vq, u)));
  return best;
}

double hausdorff_up_to_translation(const Polytope<double>& p, const Polytope<double>& q) {
  const int n = p.dim();
  std::vector<VectorXd> dirs;
  for (const auto* body : {&p, &q})
    if (body->full_dimensional())
      for (const auto& f : body->facets()) dirs.push_back(f.unit_normal());
  if (static_cast<int>(dirs.size()) < n) return hausdorff_distance(p, q);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(dirs.size()), n);
  Eigen::VectorXd b(static_cast<Eigen::Index>(dirs.size()));
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    a.row(static_cast<Eigen::Index>(i)) = dirs[i].transpose();
    b[static_cast<Eigen::Index>(i)] = support_d(q.vertices(), dirs[i]) - support_d(p.vertices(), dirs[i]);
  }
  const VectorXd t = a.colPivHouseholderQr().solve(b);
  return hausdorff_distance(translate(p, t), q);
}

template <typename Scalar>
Inradius<Scalar> relative_inradius(const Polytope<Scalar>& k, const Polytope<Scalar>& l) {
  const int n = k.dim();
  if (l.dim() != n) throw Error(ErrorCode::DimensionMismatch, "inradius dimensions");
  if (!k.full_dimensional() || !l.full_dimensional())
    throw Error(ErrorCode::DegenerateInput, "inradius needs full-dimensional bodies");
  // Variables (lambda, t): lambda h_L(u_i) + t . u_i <= h_K(u_i) for every
  // facet normal u_i of K, and lambda >= 0.
  HalfspaceSystem<Scalar> sys;
  sys.dim = n + 1;
  for (const auto& f : k.facets()) {
    Vector<Scalar> a(n + 1);
    a[0] = support_value(l, f.normal);
    a.tail(n) = f.normal;
    sys.add(std::move(a), f.offset);
  }
  Vector<Scalar> lower = Vector<Scalar>::Zero(n + 1);
  lower[0] = Scalar(-1);
  sys.add(lower, Scalar(0));
  const Polytope<Scalar> feasible = halfspace_intersection(sys);
  const Vector<Scalar>* best = nullptr;
  for (const auto& v : feasible.vertices())
    if (best == nullptr || v[0] > (*best)[0]) best = &v;
  return {(*best)[0], best->tail(n)};
}

template <typename Scalar>
bool contains(const Polytope<Scalar>& outer, const Polytope<Scalar>& inner) {
  const double tol = ScalarTraits<Scalar>::exact ? 0.0 : 1e-9 * coordinate_scale(outer.vertices());
  for (const auto& f : outer.facets())
    for (const auto& v : inner.vertices()) {
      if constexpr (ScalarTraits<Scalar>::exact) {
        if (f.normal.dot(v) > f.offset) return false;
      } else {
        if (f.normal.dot(v) > f.offset + tol) return false;
      }
    }
  return true;
}

template <typename Scalar>
double diameter(const Polytope<Scalar>& p) {
  const auto v = double_vertices(p);
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, (v[i] - v[j]).norm());
  return best;
}

template <typename Scalar>
bool same_vertices(const Polytope<Scalar>& p, const Polytope<Scalar>& q, double tol) {
  if (p.dim() != q.dim() || p.num_vertices() != q.num_vertices()) return false;
  for (const auto& a : p.vertices()) {
    bool found = false;
    for (const auto& b : q.vertices()) {
      if constexpr (ScalarTraits<Scalar>::exact) {
        (void)tol;
        found = found || vectors_equal(a, b);
      } else {
        found = found || (a - b).cwiseAbs().maxCoeff() <= tol;
      }
    }
    if (!found) return false;
  }
  return true;
}

#define CVX_POLYTOPE_INSTANTIATE(S)                                                           \
  template class Polytope<S>;                                                                 \
  template Polytope<S> convex_hull(const std::vector<Vector<S>>&, bool);                      \
  template Polytope<S> halfspace_intersection(const HalfspaceSystem<S>&);                     \
  template detail::IntersectionResult<S> detail::intersect_halfspaces(const HalfspaceSystem<S>&); \
  template Vector<S> detail::vertex_centroid(const std::vector<Vector<S>>&);                  \
  template S volume(const Polytope<S>&);                                                      \
  template Polytope<S> minkowski_sum(const Polytope<S>&, const Polytope<S>&);                 \
  template Polytope<S> scale_translate(const Polytope<S>&, const S&, const Vector<S>&);        \
  template S support_value(const Polytope<S>&, const Vector<S>&);                             \
  template Polytope<S> project_out(const Polytope<S>&, int);                                  \
  template double hausdorff_distance(const Polytope<S>&, const Polytope<S>&);                 \
  template Inradius<S> relative_inradius(const Polytope<S>&, const Polytope<S>&);             \
  template bool contains(const Polytope<S>&, const Polytope<S>&);                             \
  template double diameter(const Polytope<S>&);                                               \
  template bool same_vertices(const Polytope<S>&, const Polytope<S>&, double);

CVX_POLYTOPE_INSTANTIATE(double)
CVX_POLYTOPE_INSTANTIATE(Rational)

}  // namespace cvx
