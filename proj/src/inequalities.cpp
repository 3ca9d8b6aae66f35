#include "cvx/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "cvx/alexandrov.hpp"

namespace cvx {
namespace {

double rel_scale(double lhs, double rhs) { return std::max({1.0, std::abs(lhs), std::abs(rhs)}); }

template <typename Scalar>
Scalar factorial(int k) {
  Scalar r(1);
  for (int i = 2; i <= k; ++i) r *= Scalar(i);
  return r;
}

template <typename Scalar>
Scalar power(const Scalar& x, int e) {
  Scalar r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

double root(double x, double num, double den) { return std::pow(std::max(x, 0.0), num / den); }

template <typename Scalar>
void require_full(const Polytope<Scalar>& p, const char* what) {
  if (!p.full_dimensional()) throw Error(ErrorCode::DegenerateInput, std::string(what) + " must be full-dimensional");
}

template <typename Scalar>
void require_same_dim(const Polytope<Scalar>& a, const Polytope<Scalar>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "bodies of different dimensions");
}

/// V(K^{n-1}, L).
template <typename Scalar>
Scalar first_mixed(const Polytope<Scalar>& k, const Polytope<Scalar>& l) {
  return mixed_volume(k, k.dim() - 1, l, 1);
}

double support_double(const Polytope<double>& p, const VectorXd& u) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices()) best = std::max(best, v.dot(u));
  return best;
}

Polytope<double> as_double(const Polytope<double>& p) { return p; }
Polytope<double> as_double(const Polytope<Rational>& p) { return p.to_double(); }

/// vol([K, L]_i) for i = 0..n-1. The endpoints are K and L themselves.
template <typename Scalar>
std::vector<double> mixed_body_volumes(const Polytope<Scalar>& k, const Polytope<Scalar>& l,
                                       const SolverOptions& opts, CheckReport& report) {
  const int n = k.dim();
  std::vector<double> vols(static_cast<std::size_t>(n));
  vols.front() = to_double(volume(k));
  vols.back() = to_double(volume(l));
  int iterations = 0;
  double worst = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    const MinkowskiSolution sol = mixed_body(k, l, i, opts);
    vols[static_cast<std::size_t>(i)] = volume(sol.body);
    iterations = std::max(iterations, sol.diagnostics.iterations);
    worst = std::max(worst, sol.diagnostics.max_relative_area_error);
  }
  for (int i = 0; i < n; ++i) report.witness("vol_mixed_body_" + std::to_string(i), vols[static_cast<std::size_t>(i)]);
  report.witness("solver_iterations", iterations);
  report.witness("solver_area_error", worst);
  return vols;
}

/// Uniform-ish points of the unit cube for the Box-Muller map in n >= 4.
double kronecker(int k, int j) {
  static const double primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  const double alpha = std::sqrt(primes[j % 12]);
  const double x = (k + 0.5) * alpha;
  return x - std::floor(x);
}

std::vector<VectorXd> unit_directions(int n, int count) {
  std::vector<VectorXd> out;
  out.reserve(static_cast<std::size_t>(count));
  const double pi = std::numbers::pi;
  for (int k = 0; k < count; ++k) {
    VectorXd u(n);
    if (n == 1) {
      u(0) = k % 2 == 0 ? 1.0 : -1.0;
    } else if (n == 2) {
      const double t = 2 * pi * (k + 0.5) / count;
      u << std::cos(t), std::sin(t);
    } else if (n == 3) {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1 - z * z));
      const double phi = k * pi * (3.0 - std::sqrt(5.0));
      u << r * std::cos(phi), r * std::sin(phi), z;
    } else {
      for (int j = 0; j < n; j += 2) {
        const double a = std::max(kronecker(k, j), 1e-12);
        const double b = kronecker(k, j + 1);
        const double rad = std::sqrt(-2 * std::log(a));
        u(j) = rad * std::cos(2 * pi * b);
        if (j + 1 < n) u(j + 1) = rad * std::sin(2 * pi * b);
      }
    }
    out.push_back(u / u.norm());
  }
  return out;
}

template <typename Scalar>
void add_direction(std::vector<Vector<Scalar>>& dirs, Vector<Scalar> d) {
  canonicalize_direction(d);
  for (const auto& e : dirs)
    if (same_direction(e, d)) return;
  dirs.push_back(std::move(d));
}

}  // namespace

std::optional<double> CheckReport::find_witness(const std::string& key) const {
  for (const auto& [k, v] : witnesses)
    if (k == key) return v;
  return std::nullopt;
}

CheckReport make_report(std::string name, double lhs, double rhs, double equality_tolerance) {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  const double s = rel_scale(lhs, rhs);
  r.pass = r.slack >= -kPassTolerance * s;
  r.equality = std::abs(r.slack) <= equality_tolerance * s;
  return r;
}

template <typename Scalar>
SymmetricMatrix<Scalar>::SymmetricMatrix(Matrix<Scalar> m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m_.cols(); ++j)
      if (m_(i, j) != m_(j, i)) throw Error(ErrorCode::InvariantViolation, "matrix is not symmetric");
}

template <typename Scalar>
bool SymmetricMatrix<Scalar>::positive_definite() const {
  Matrix<Scalar> a = m_;
  const Eigen::Index n = a.rows();
  for (Eigen::Index p = 0; p < n; ++p) {
    if (!(a(p, p) > 0)) return false;
    for (Eigen::Index i = p + 1; i < n; ++i) {
      const Scalar f = a(i, p) / a(p, p);
      for (Eigen::Index j = p; j < n; ++j) a(i, j) -= f * a(p, j);
    }
  }
  return true;
}

template <typename Scalar>
Scalar determinant(Matrix<Scalar> m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  Scalar det(1);
  for (Eigen::Index p = 0; p < n; ++p) {
    Eigen::Index piv = p;
    for (Eigen::Index i = p + 1; i < n; ++i) {
      if constexpr (ScalarTraits<Scalar>::exact) {
        if (m(piv, p) == 0 && m(i, p) != 0) piv = i;
      } else {
        if (std::abs(m(i, p)) > std::abs(m(piv, p))) piv = i;
      }
    }
    if (m(piv, p) == 0) return Scalar(0);
    if (piv != p) {
      m.row(p).swap(m.row(piv));
      det = -det;
    }
    det *= m(p, p);
    for (Eigen::Index i = p + 1; i < n; ++i) {
      const Scalar f = m(i, p) / m(p, p);
      if (f == 0) continue;
      for (Eigen::Index j = p; j < n; ++j) m(i, j) -= f * m(p, j);
    }
  }
  return det;
}

template <typename Scalar>
Scalar mixed_discriminant(const std::vector<SymmetricMatrix<Scalar>>& matrices) {
  const int n = static_cast<int>(matrices.size());
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "no matrices");
  for (const auto& m : matrices)
    if (m.dim() != n) throw Error(ErrorCode::DimensionMismatch, "mixed discriminant needs n matrices of size n");
  Scalar acc(0);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Matrix<Scalar> s = Matrix<Scalar>::Zero(n, n);
    int size = 0;
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) {
        s += matrices[static_cast<std::size_t>(j)].matrix();
        ++size;
      }
    const Scalar d = determinant(std::move(s));
    if ((n - size) % 2 == 0)
      acc += d;
    else
      acc -= d;
  }
  return acc / factorial<Scalar>(n);
}

template <typename Scalar>
Homothety detect_homothety(const Polytope<Scalar>& k, const Polytope<Scalar>& l) {
  require_same_dim(k, l);
  const Polytope<double> kd = as_double(k);
  const Polytope<double> ld = as_double(l);
  const int n = k.dim();
  std::vector<VectorXd> dirs;
  for (const auto& f : kd.facets()) dirs.push_back(f.unit_normal());
  for (const auto& f : ld.facets()) dirs.push_back(f.unit_normal());
  Eigen::MatrixXd a(static_cast<Eigen::Index>(dirs.size()), n + 1);
  Eigen::VectorXd b(static_cast<Eigen::Index>(dirs.size()));
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = support_double(kd, dirs[i]);
    a.row(r).tail(n) = dirs[i].transpose();
    b(r) = support_double(ld, dirs[i]);
  }
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
  Homothety h;
  h.lambda = x(0);
  h.translation = x.tail(n);
  h.residual = (a * x - b).cwiseAbs().maxCoeff() / std::max(diameter(ld), 1e-300);
  h.homothetic = h.lambda > 0 && h.residual <= kHomothetyTolerance;
  return h;
}

template <typename Scalar>
bool is_axis_box(const Polytope<Scalar>& k) {
  if (!k.full_dimensional()) return false;
  for (const auto& f : k.facets()) {
    int nonzero = 0;
    const double norm = f.norm();
    for (Eigen::Index j = 0; j < f.normal.size(); ++j) {
      if constexpr (ScalarTraits<Scalar>::exact) {
        if (f.normal(j) != 0) ++nonzero;
      } else {
        if (std::abs(f.normal(j)) > 1e-12 * norm) ++nonzero;
      }
    }
    if (nonzero != 1) return false;
  }
  return true;
}

template <typename Scalar>
std::vector<Vector<Scalar>> quasi_uniform_directions(int n, int count) {
  std::vector<Vector<Scalar>> out;
  for (const VectorXd& u : unit_directions(n, count)) {
    Vector<Scalar> d(n);
    if constexpr (ScalarTraits<Scalar>::exact) {
      for (int j = 0; j < n; ++j) d(j) = Rational(static_cast<long>(std::lround(u(j) * 1024)));
      if (d.isZero()) continue;
    } else {
      d = u;
    }
    add_direction(out, std::move(d));
  }
  return out;
}

template <typename Scalar>
CheckReport check_brunn_minkowski(const Polytope<Scalar>& k, const Polytope<Scalar>& l) {
  require_same_dim(k, l);
  require_full(k, "K");
  require_full(l, "L");
  const double n = k.dim();
  const double vk = to_double(volume(k)), vl = to_double(volume(l));
  const double vs = to_double(volume(minkowski_sum(k, l)));
  CheckReport r = make_report("brunn_minkowski", root(vs, 1, n), root(vk, 1, n) + root(vl, 1, n),
                              kExactEqualityTolerance);
  r.detector = detect_homothety(k, l).homothetic;
  r.witness("vol_k", vk);
  r.witness("vol_l", vl);
  r.witness("vol_sum", vs);
  return r;
}

template <typename Scalar>
CheckReport check_kneser_suss(const Polytope<Scalar>& k, const Polytope<Scalar>& l, const SolverOptions& opts) {
  require_same_dim(k, l);
  require_full(k, "K");
  require_full(l, "L");
  const double n = k.dim();
  const MinkowskiSolution m = blaschke_add(k, l, opts);
  const double vk = to_double(volume(k)), vl = to_double(volume(l));
  const double vm = volume(m.body);
  CheckReport r = make_report("kneser_suss", root(vm, n - 1, n), root(vk, n - 1, n) + root(vl, n - 1, n),
                              kSolverEqualityTolerance);
  r.detector = detect_homothety(k, l).homothetic;
  r.witness("vol_k", vk);
  r.witness("vol_l", vl);
  r.witness("vol_blaschke_sum", vm);
  r.witness("solver_iterations", m.diagnostics.iterations);
  r.witness("solver_area_error", m.diagnostics.max_relative_area_error);
  return r;
}

template <typename Scalar>
CheckReport check_diskant_bound(const Polytope<Scalar>& k, const Polytope<Scalar>& l) {
  require_same_dim(k, l);
  require_full(k, "K");
  require_full(l, "L");
  const Inradius<Scalar> in = relative_inradius(k, l);
  const Scalar v = first_mixed(k, l);
  const Scalar bound = volume(k) / (Scalar(k.dim()) * v);
  CheckReport r = make_report("diskant_bound", to_double(in.ratio), to_double(bound), kExactEqualityTolerance);
  r.witness("mixed_volume", to_double(v));
  for (Eigen::Index j = 0; j < in.translation.size(); ++j)
    r.witness("translation_" + std::to_string(j), to_double(in.translation(j)));
  return r;
}

template <typename Scalar>
CheckReport check_morse(const Polytope<Scalar>& k, const Polytope<Scalar>& l) {
  require_same_dim(k, l);
  require_full(k, "K");
  require_full(l, "L");
  const int n = k.dim();
  const Scalar vk = volume(k);
  const Scalar v = first_mixed(k, l);
  const Scalar rhs = vk - Scalar(n) * v;
  if (!(rhs > 0)) {
    CheckReport r = make_report("morse", 0.0, to_double(rhs), kExactEqualityTolerance);
    r.witness("vacuous", 1);
    return r;
  }
  // (1 + delta) L + t inside K gives K = L + (delta L + t) + ..., so h_K - h_L
  // minus the linear function of a = delta c_L + t is bounded below by the
  // support function of delta (L - c_L), which is positive.
  const Inradius<Scalar> in = relative_inradius(k, l);
  const Scalar delta = in.ratio - Scalar(1);
  if (!(delta > 0)) {
    CheckReport r = make_report("morse", 0.0, to_double(rhs), kExactEqualityTolerance);
    r.pass = false;
    r.equality = false;
    r.witness("inradius", to_double(in.ratio));
    r.witness("positivity", 0);
    return r;
  }
  const Vector<Scalar> a = detail::vertex_centroid(l.vertices()) * delta + in.translation;

  std::vector<Vector<Scalar>> dirs;
  for (const auto& f : k.facets()) add_direction(dirs, Vector<Scalar>(f.normal));
  for (const auto& f : l.facets()) add_direction(dirs, Vector<Scalar>(f.normal));
  for (auto& d : quasi_uniform_directions<Scalar>(n, 64)) add_direction(dirs, std::move(d));

  SupportSample<Scalar> f(n);
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& u : dirs) {
    const Scalar value = support_value(k, u) - support_value(l, u) - a.dot(u);
    min_ratio = std::min(min_ratio, to_double(value) / to_double(u).norm());
    f.add(u, value);
  }
  const bool positive = min_ratio > 0;
  const double lhs = positive ? to_double(volume_of_function(f)) : 0.0;
  CheckReport r = make_report("morse", lhs, to_double(rhs), kExactEqualityTolerance);
  if (!positive) {
    r.pass = false;
    r.equality = false;
  }
  r.witness("inradius", to_double(in.ratio));
  r.witness("positivity", positive ? 1 : 0);
  r.witness("min_difference", min_ratio);
  r.witness("directions", static_cast<double>(dirs.size()));
  return r;
}

template <typename Scalar>
CheckReport check_reverse_kt(const Polytope<Scalar>& k, const Polytope<Scalar>& l, const Polytope<Scalar>& m,
                             int index) {
  require_same_dim(k, l);
  require_same_dim(k, m);
  const int n = k.dim();
  if (index < 1 || index > n - 1) throw Error(ErrorCode::DimensionMismatch, "k must lie in 1..n-1");
  const Scalar kl = mixed_volume(k, index, l, n - index);
  const Scalar lm = mixed_volume(l, index, m, n - index);
  const Scalar km = mixed_volume(k, index, m, n - index);
  const Scalar factor = factorial<Scalar>(index) * factorial<Scalar>(n - index) / factorial<Scalar>(n);
  const Scalar vl = volume(l);
  const Scalar lhs = kl * lm;
  const Scalar base = vl * km;
  CheckReport r = make_report("reverse_kt", to_double(lhs), to_double(factor * base), kExactEqualityTolerance);
  if constexpr (ScalarTraits<Scalar>::exact) r.pass = !(lhs < factor * base);
  r.witness("k", index);
  r.witness("factor", to_double(factor));
  r.witness("V(K^k,L^{n-k})", to_double(kl));
  r.witness("V(L^k,M^{n-k})", to_double(lm));
  r.witness("V(K^k,M^{n-k})", to_double(km));
  r.witness("ratio", to_double(base) > 0 ? to_double(lhs) / to_double(base) : 0.0);
  return r;
}

template <typename Scalar>
CheckReport check_mixed_discriminant_kt(const SymmetricMatrix<Scalar>& a, const SymmetricMatrix<Scalar>& b,
                                        const SymmetricMatrix<Scalar>& c, int index) {
  const int n = a.dim();
  if (b.dim() != n || c.dim() != n) throw Error(ErrorCode::DimensionMismatch, "matrices of different sizes");
  if (index < 1 || index > n - 1) throw Error(ErrorCode::DimensionMismatch, "k must lie in 1..n-1");
  if (!a.positive_definite() || !b.positive_definite() || !c.positive_definite())
    throw Error(ErrorCode::NotPositiveDefinite, "mixed discriminant check needs positive definite matrices");
  auto pair = [&](const SymmetricMatrix<Scalar>& x, const SymmetricMatrix<Scalar>& y) {
    std::vector<SymmetricMatrix<Scalar>> ms(static_cast<std::size_t>(index), x);
    for (int j = index; j < n; ++j) ms.push_back(y);
    return mixed_discriminant(ms);
  };
  const Scalar ab = pair(a, b), bc = pair(b, c), ac = pair(a, c);
  const Scalar factor = factorial<Scalar>(index) * factorial<Scalar>(n - index) / factorial<Scalar>(n);
  const Scalar det_b = determinant(b.matrix());
  const Scalar lhs = ab * bc;
  const Scalar rhs = factor * det_b * ac;
  CheckReport r = make_report("mixed_discriminant_kt", to_double(lhs), to_double(rhs), kExactEqualityTolerance);
  if constexpr (ScalarTraits<Scalar>::exact) r.pass = !(lhs < rhs);
  r.witness("k", index);
  r.witness("D(A^k,B^{n-k})", to_double(ab));
  r.witness("D(B^k,C^{n-k})", to_double(bc));
  r.witness("D(A^k,C^{n-k})", to_double(ac));
  r.witness("det(B)", to_double(det_b));
  return r;
}

template <typename Scalar>
CheckReport check_loomis_whitney(const Polytope<Scalar>& k) {
  require_full(k, "K");
  const int n = k.dim();
  if (n < 2) throw Error(ErrorCode::DimensionMismatch, "Loomis-Whitney needs n >= 2");
  Scalar prod(1);
  for (int j = 0; j < n; ++j) {
    const Scalar pj = volume(project_out(k, j));
    prod *= pj;
  }
  const Scalar rhs = power(volume(k), n - 1);
  CheckReport r = make_report("loomis_whitney", to_double(prod), to_double(rhs), kExactEqualityTolerance);
  if constexpr (ScalarTraits<Scalar>::exact) {
    r.pass = !(prod < rhs);
    r.equality = prod == rhs;
  }
  r.detector = is_axis_box(k);
  return r;
}

template <typename Scalar>
CheckReport check_box_bound(const Polytope<Scalar>& k) {
  require_full(k, "K");
  const int n = k.dim();
  Scalar prod(1);
  for (int j = 0; j < n; ++j) {
    Vector<Scalar> e = Vector<Scalar>::Zero(n);
    e(j) = Scalar(1);
    const Scalar w = support_value(k, e) + support_value(k, Vector<Scalar>(-e));
    prod *= w;
  }
  const Scalar vk = volume(k);
  CheckReport r = make_report("box_bound", to_double(prod), to_double(vk), kExactEqualityTolerance);
  if constexpr (ScalarTraits<Scalar>::exact) {
    r.pass = !(prod < vk);
    r.equality = prod == vk;
  }
  r.label = "convex analogue";
  r.detector = is_axis_box(k);
  return r;
}

template <typename Scalar>
CheckReport check_mixed_body_volume(const std::vector<Polytope<Scalar>>& bodies, const SolverOptions& opts) {
  if (bodies.empty()) throw Error(ErrorCode::DimensionMismatch, "no bodies");
  const int n = bodies.front().dim();
  if (static_cast<int>(bodies.size()) != n - 1) throw Error(ErrorCode::DimensionMismatch, "mixed body needs n-1 bodies");
  double prod = 1.0;
  bool homothetic = true;
  for (const auto& b : bodies) {
    require_same_dim(bodies.front(), b);
    require_full(b, "body");
    prod *= to_double(volume(b));
    homothetic = homothetic && detect_homothety(bodies.front(), b).homothetic;
  }
  const MinkowskiSolution m = mixed_body(bodies, opts);
  const double vm = volume(m.body);
  CheckReport r = make_report("mixed_body_volume", std::pow(vm, n - 1), prod, kSolverEqualityTolerance);
  r.label = "convex analogue";
  r.detector = homothetic;
  r.witness("vol_mixed_body", vm);
  r.witness("solver_iterations", m.diagnostics.iterations);
  r.witness("solver_area_error", m.diagnostics.max_relative_area_error);
  return r;
}

template <typename Scalar>
CheckReport check_improved_bm(const Polytope<Scalar>& k, const Polytope<Scalar>& l, const SolverOptions& opts) {
  require_same_dim(k, l);
  require_full(k, "K");
  require_full(l, "L");
  const int n = k.dim();
  CheckReport scratch;
  const std::vector<double> vols = mixed_body_volumes(k, l, opts, scratch);
  double sum = 0.0, binom = 1.0;
  for (int i = 0; i < n; ++i) {
    sum += binom * root(vols[static_cast<std::size_t>(i)], n - 1, n);
    binom = binom * (n - 1 - i) / (i + 1);
  }
  const double upper = root(to_double(volume(minkowski_sum(k, l))), 1, n);
  const double middle = root(sum, 1, n - 1);
  const double lower = root(vols.front(), 1, n) + root(vols.back(), 1, n);
  CheckReport r = make_report("improved_bm", upper, lower, kSolverEqualityTolerance);
  const CheckReport first = make_report("upper", upper, middle, kSolverEqualityTolerance);
  const CheckReport second = make_report("lower", middle, lower, kSolverEqualityTolerance);
  r.pass = r.pass && first.pass && second.pass;
  r.label = "convex analogue";
  r.detector = detect_homothety(k, l).homothetic;
  r.witness("middle", middle);
  r.witness("slack_upper", first.slack);
  r.witness("slack_lower", second.slack);
  r.witness("equality_upper", first.equality ? 1 : 0);
  r.witness("equality_lower", second.equality ? 1 : 0);
  for (auto& w : scratch.witnesses) r.witnesses.push_back(std::move(w));
  return r;
}

template <typename Scalar>
CheckReport check_log_concavity(const Polytope<Scalar>& k, const Polytope<Scalar>& l, const SolverOptions& opts) {
  require_same_dim(k, l);
  require_full(k, "K");
  require_full(l, "L");
  const int n = k.dim();
  if (n < 3) throw Error(ErrorCode::DimensionMismatch, "log-concavity needs n >= 3");
  CheckReport scratch;
  const std::vector<double> v = mixed_body_volumes(k, l, opts, scratch);
  CheckReport worst;
  double worst_rel = std::numeric_limits<double>::infinity();
  int worst_index = 0;
  bool all_pass = true, all_equal = true;
  for (int i = 1; i + 1 < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    CheckReport t = make_report("log_concavity", v[u] * v[u], v[u - 1] * v[u + 1], kSolverEqualityTolerance);
    all_pass = all_pass && t.pass;
    all_equal = all_equal && t.equality;
    const double rel = t.slack / rel_scale(t.lhs, t.rhs);
    if (rel < worst_rel) {
      worst_rel = rel;
      worst = t;
      worst_index = i;
    }
  }
  worst.pass = all_pass;
  worst.equality = all_equal;
  worst.label = "convex analogue";
  worst.detector = detect_homothety(k, l).homothetic;
  worst.witness("worst_index", worst_index);
  for (auto& w : scratch.witnesses) worst.witnesses.push_back(std::move(w));
  return worst;
}

template <typename Scalar>
CheckReport check_mixed_volume_linearity(const Polytope<Scalar>& k, const Polytope<Scalar>& l1,
                                         const Polytope<Scalar>& l2) {
  require_same_dim(k, l1);
  require_same_dim(k, l2);
  const Scalar lhs = first_mixed(k, minkowski_sum(l1, l2));
  const Scalar a = first_mixed(k, l1), b = first_mixed(k, l2);
  const Scalar rhs = a + b;
  CheckReport r = make_report("mixed_volume_linearity", to_double(lhs), to_double(rhs), kExactEqualityTolerance);
  if constexpr (ScalarTraits<Scalar>::exact) r.equality = lhs == rhs;
  r.pass = r.equality;
  r.witness("V(K^{n-1},L1)", to_double(a));
  r.witness("V(K^{n-1},L2)", to_double(b));
  return r;
}

#define CVX_INEQUALITIES_INSTANTIATE(S)                                                                  \
  template class SymmetricMatrix<S>;                                                                   \
  template S determinant(Matrix<S>);                                                                   \
  template S mixed_discriminant(const std::vector<SymmetricMatrix<S>>&);                               \
  template Homothety detect_homothety(const Polytope<S>&, const Polytope<S>&);                         \
  template bool is_axis_box(const Polytope<S>&);                                                       \
  template std::vector<Vector<S>> quasi_uniform_directions<S>(int, int);                               \
  template CheckReport check_brunn_minkowski(const Polytope<S>&, const Polytope<S>&);                  \
  template CheckReport check_kneser_suss(const Polytope<S>&, const Polytope<S>&, const SolverOptions&); \
  template CheckReport check_diskant_bound(const Polytope<S>&, const Polytope<S>&);                    \
  template CheckReport check_morse(const Polytope<S>&, const Polytope<S>&);                            \
  template CheckReport check_reverse_kt(const Polytope<S>&, const Polytope<S>&, const Polytope<S>&, int); \
  template CheckReport check_mixed_discriminant_kt(const SymmetricMatrix<S>&, const SymmetricMatrix<S>&, \
                                                   const SymmetricMatrix<S>&, int);                    \
  template CheckReport check_loomis_whitney(const Polytope<S>&);                                       \
  template CheckReport check_box_bound(const Polytope<S>&);                                            \
  template CheckReport check_mixed_body_volume(const std::vector<Polytope<S>>&, const SolverOptions&); \
  template CheckReport check_improved_bm(const Polytope<S>&, const Polytope<S>&, const SolverOptions&); \
  template CheckReport check_log_concavity(const Polytope<S>&, const Polytope<S>&, const SolverOptions&); \
  template CheckReport check_mixed_volume_linearity(const Polytope<S>&, const Polytope<S>&, const Polytope<S>&);

CVX_INEQUALITIES_INSTANTIATE(double)
CVX_INEQUALITIES_INSTANTIATE(Rational)

}  // namespace cvx
