#include "cvx/detail/cone.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Dense>

namespace cvx::detail {
namespace {

// Arithmetic used inside the double description loop: plain doubles in
// floating mode, GMP integers (kept primitive) in exact mode.
template <typename Scalar>
struct Ring;

template <>
struct Ring<double> {
  using Value = double;
  using Vec = std::vector<double>;

  static Vec from_row(const Vector<double>& row) {
    Vec out(row.data(), row.data() + row.size());
    normalize(out);
    return out;
  }
  static Vec from_column(const Vector<double>& col) { return from_row(col); }
  static Vector<double> to_scalar(const Vec& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  static void normalize(Vec& v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 0)
      for (double& x : v) x /= norm;
  }
  // Rows and rays both have unit length.
  static int sign(double x) { return ScalarTraits<double>::sign(x, 1.0); }
};

template <>
struct Ring<Rational> {
  using Value = Integer;
  using Vec = std::vector<Integer>;

  static Vec from_row(const Vector<Rational>& row) {
    Integer lcm = 1;
    for (Eigen::Index i = 0; i < row.size(); ++i)
      lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(row[i]));
    Vec out(static_cast<std::size_t>(row.size()));
    for (Eigen::Index i = 0; i < row.size(); ++i) {
      Rational scaled = row[i] * Rational(lcm);
      out[static_cast<std::size_t>(i)] = boost::multiprecision::numerator(scaled);
    }
    normalize(out);
    return out;
  }
  static Vec from_column(const Vector<Rational>& col) { return from_row(col); }
  static Vector<Rational> to_scalar(const Vec& v) {
    Vector<Rational> out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = Rational(v[i]);
    return out;
  }
  static void normalize(Vec& v) {
    Integer g = 0;
    for (const Integer& x : v) {
      if (x != 0) g = boost::multiprecision::gcd(g, x);
      if (g == 1) return;
    }
    if (g > 1)
      for (Integer& x : v) x /= g;
  }
  static int sign(const Integer& x) { return x.sign(); }
};

template <typename V>
auto dot(const V& a, const V& b) {
  typename V::value_type acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Incremental row echelon form used for rank and basis selection.
template <typename Scalar>
class Echelon;

template <>
class Echelon<Rational> {
 public:
  explicit Echelon(int dim) : dim_(dim) {}
  bool insert(Vector<Rational> row) {
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      const int c = pivots_[b];
      if (row[c] != 0) row -= (row[c] / basis_[b][c]) * basis_[b];
    }
    for (int c = 0; c < dim_; ++c) {
      if (row[c] != 0) {
        basis_.push_back(std::move(row));
        pivots_.push_back(c);
        return true;
      }
    }
    return false;
  }
  int rank() const { return static_cast<int>(basis_.size()); }

 private:
  int dim_;
  std::vector<Vector<Rational>> basis_;
  std::vector<int> pivots_;
};

template <>
class Echelon<double> {
 public:
  explicit Echelon(int dim) : dim_(dim) {}
  bool insert(Vector<double> row) {
    const double norm = row.norm();
    if (norm == 0.0) return false;
    row /= norm;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis_) row -= row.dot(q) * q;
    const double residual = row.norm();
    if (residual <= 1e-9) return false;
    basis_.push_back(row / residual);
    return true;
  }
  int rank() const { return static_cast<int>(basis_.size()); }

 private:
  int dim_;
  std::vector<Vector<double>> basis_;
};

template <typename Scalar>
Matrix<Scalar> inverse_of(const Matrix<Scalar>& b) {
  return b.partialPivLu().inverse();
}

template <>
Matrix<Rational> inverse_of(const Matrix<Rational>& b) {
  // Gauss-Jordan with any nonzero pivot; Eigen's LU would pivot on magnitude,
  // which is pointless in exact arithmetic.
  const Eigen::Index n = b.rows();
  Matrix<Rational> a = b;
  Matrix<Rational> inv = Matrix<Rational>::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p != c) {
      a.row(p).swap(a.row(c));
      inv.row(p).swap(inv.row(c));
    }
    const Rational pivot = a(c, c);
    a.row(c) /= pivot;
    inv.row(c) /= pivot;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational f = a(r, c);
      a.row(r) -= f * a.row(c);
      inv.row(r) -= f * inv.row(c);
    }
  }
  return inv;
}

}  // namespace

template <typename Scalar>
std::vector<int> independent_rows(const std::vector<Vector<Scalar>>& rows, int dim) {
  Echelon<Scalar> ech(dim);
  std::vector<int> picked;
  for (std::size_t i = 0; i < rows.size() && static_cast<int>(picked.size()) < dim; ++i)
    if (ech.insert(rows[i])) picked.push_back(static_cast<int>(i));
  return picked;
}

template <typename Scalar>
int row_rank(const std::vector<Vector<Scalar>>& rows, int dim) {
  return static_cast<int>(independent_rows(rows, dim).size());
}

std::vector<Vector<Rational>> null_space(const std::vector<Vector<Rational>>& rows, int dim) {
  // Reduced row echelon form, then one basis vector per free column.
  std::vector<Vector<Rational>> r;
  std::vector<int> pivots;
  for (const auto& row0 : rows) {
    Vector<Rational> row = row0;
    for (std::size_t b = 0; b < r.size(); ++b)
      if (row[pivots[b]] != 0) row -= row[pivots[b]] * r[b];
    int c = 0;
    while (c < dim && row[c] == 0) ++c;
    if (c == dim) continue;
    row /= Rational(row[c]);
    for (std::size_t b = 0; b < r.size(); ++b)
      if (r[b][c] != 0) r[b] -= r[b][c] * row;
    r.push_back(row);
    pivots.push_back(c);
  }
  std::vector<Vector<Rational>> basis;
  for (int free = 0; free < dim; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    Vector<Rational> v = Vector<Rational>::Zero(dim);
    v[free] = 1;
    for (std::size_t b = 0; b < r.size(); ++b) v[pivots[b]] = -r[b][free];
    basis.push_back(v);
  }
  return basis;
}

std::vector<Vector<double>> null_space(const std::vector<Vector<double>>& rows, int dim) {
  if (rows.empty()) {
    std::vector<Vector<double>> basis;
    for (int i = 0; i < dim; ++i) basis.push_back(Eigen::VectorXd::Unit(dim, i));
    return basis;
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = rows[i].transpose() / std::max(rows[i].norm(), 1e-300);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > 1e-9) ++rank;
  std::vector<Vector<double>> basis;
  for (int c = rank; c < dim; ++c) basis.push_back(svd.matrixV().col(c));
  return basis;
}

template <typename Scalar>
ConeRays<Scalar> enumerate_cone(const std::vector<Vector<Scalar>>& rows, int dim,
                                std::vector<int> order) {
  using R = Ring<Scalar>;
  using Vec = typename R::Vec;
  const std::size_t m = rows.size();
  if (order.empty()) {
    order.resize(m);
    std::iota(order.begin(), order.end(), 0);
  }

  ConeRays<Scalar> out;
  out.dim = dim;

  std::vector<Vector<Scalar>> ordered;
  ordered.reserve(order.size());
  for (int i : order) ordered.push_back(rows[static_cast<std::size_t>(i)]);
  const std::vector<int> basis_pos = independent_rows(ordered, dim);
  out.rank = static_cast<int>(basis_pos.size());
  if (out.rank < dim) return out;

  std::vector<Vec> ring_rows(m);
  for (int i : order) ring_rows[static_cast<std::size_t>(i)] = R::from_row(rows[static_cast<std::size_t>(i)]);

  Matrix<Scalar> b(dim, dim);
  std::vector<int> basis_rows;
  for (int r = 0; r < dim; ++r) {
    const int idx = order[static_cast<std::size_t>(basis_pos[static_cast<std::size_t>(r)])];
    basis_rows.push_back(idx);
    b.row(r) = rows[static_cast<std::size_t>(idx)].transpose();
  }
  const Matrix<Scalar> inv = inverse_of<Scalar>(b);

  struct Ray {
    Vec v;
    boost::dynamic_bitset<> zero;
  };
  std::vector<Ray> rays;
  for (int j = 0; j < dim; ++j) {
    Ray ray{R::from_column(inv.col(j)), boost::dynamic_bitset<>(m)};
    for (int r = 0; r < dim; ++r)
      if (r != j) ray.zero.set(static_cast<std::size_t>(basis_rows[static_cast<std::size_t>(r)]));
    rays.push_back(std::move(ray));
  }

  std::vector<bool> in_basis(m, false);
  for (int idx : basis_rows) in_basis[static_cast<std::size_t>(idx)] = true;

  using Value = typename R::Value;
  std::vector<Value> values;
  std::vector<int> signs;
  std::vector<std::size_t> pos, neg;
  boost::dynamic_bitset<> common(m);
  for (int idx : order) {
    const auto row_index = static_cast<std::size_t>(idx);
    if (in_basis[row_index]) continue;
    const Vec& a = ring_rows[row_index];
    values.resize(rays.size());
    signs.resize(rays.size());
    pos.clear();
    neg.clear();
    for (std::size_t r = 0; r < rays.size(); ++r) {
      values[r] = dot(a, rays[r].v);
      signs[r] = R::sign(values[r]);
      if (signs[r] > 0) pos.push_back(r);
      else if (signs[r] < 0) neg.push_back(r);
    }
    if (neg.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r)
        if (signs[r] == 0) rays[r].zero.set(row_index);
      continue;
    }

    std::vector<Ray> next;
    next.reserve(rays.size() + pos.size());
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        common = rays[p].zero;
        common &= rays[q].zero;
        if (static_cast<int>(common.count()) < dim - 2) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.is_subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec v(static_cast<std::size_t>(dim));
        for (int k = 0; k < dim; ++k)
          v[static_cast<std::size_t>(k)] = values[p] * rays[q].v[static_cast<std::size_t>(k)] -
                                           values[q] * rays[p].v[static_cast<std::size_t>(k)];
        R::normalize(v);
        Ray ray{std::move(v), common};
        ray.zero.set(row_index);
        next.push_back(std::move(ray));
      }
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (signs[r] < 0) continue;
      if (signs[r] == 0) rays[r].zero.set(row_index);
      next.push_back(std::move(rays[r]));
    }
    rays = std::move(next);
  }

  out.rays.reserve(rays.size());
  out.zeros.reserve(rays.size());
  for (auto& ray : rays) {
    out.rays.push_back(R::to_scalar(ray.v));
    out.zeros.push_back(std::move(ray.zero));
  }
  return out;
}

template ConeRays<double> enumerate_cone(const std::vector<Vector<double>>&, int,
                                         std::vector<int>);
template ConeRays<Rational> enumerate_cone(const std::vector<Vector<Rational>>&, int,
                                           std::vector<int>);
template int row_rank(const std::vector<Vector<double>>&, int);
template int row_rank(const std::vector<Vector<Rational>>&, int);
template std::vector<int> independent_rows(const std::vector<Vector<double>>&, int);
template std::vector<int> independent_rows(const std::vector<Vector<Rational>>&, int);

}  // namespace cvx::detail
