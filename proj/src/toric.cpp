#include "cvx/toric.hpp"

#include <algorithm>
#include <cmath>

namespace cvx {
namespace {

void check_divisor(const FlopDivisor& d) {
  if (d.a < 0 || d.b < 0) throw Error(ErrorCode::InvariantViolation, "flop coefficients must be nonnegative");
}

Rational flop_asymptotic_sample(const FlopDivisor& d, long m) {
  const Integer count = section_count_flop({m * d.a, m * d.b});
  const Rational mm(m);
  return Rational(6) * Rational(count) / (mm * mm * mm);
}

Polytope<Rational> exact_copy(const Polytope<Rational>& p) { return p; }
Polytope<Rational> exact_copy(const Polytope<double>& p) {
  std::vector<VectorXq> verts;
  for (const auto& v : p.vertices()) verts.push_back(from_double<Rational>(v));
  return convex_hull(verts, true);
}

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

Integer floor_of(const Rational& q) {
  Integer num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  Integer f = num / den;
  if (num < 0 && f * den != num) f -= 1;
  return f;
}

}  // namespace

Integer section_count_flop(const FlopDivisor& d) {
  check_divisor(d);
  Integer total(0);
  const long top = std::min(d.a, d.b);
  for (long k = 0; k <= top; ++k) total += Integer(d.a - k + 1) * Integer(d.b - k + 1);
  return total;
}

Rational section_count_closed_form(const FlopDivisor& d) {
  check_divisor(d);
  // Chamber b >= a; the other chamber is the mirror image.
  const Rational a(std::min(d.a, d.b)), b(std::max(d.a, d.b));
  return b * a * a / 2 - a * a * a / 6 + Rational(3) * a * b / 2 + b + Rational(7) * a / 6 + 1;
}

Rational flop_volume_closed_form(const Rational& a, const Rational& b) {
  if (b >= a) return Rational(3) * b * a * a - a * a * a;
  return Rational(3) * a * b * b - b * b * b;
}

Rational richardson_halving(const std::vector<Rational>& samples) {
  if (samples.empty()) throw Error(ErrorCode::Empty, "no samples to extrapolate");
  std::vector<Rational> row = samples;
  Rational factor(1);
  for (std::size_t level = 1; level < samples.size(); ++level) {
    factor *= 2;
    for (std::size_t j = row.size() - 1; j >= level; --j) row[j] = (factor * row[j] - row[j - 1]) / (factor - 1);
  }
  return row.back();
}

FlopVolume volume_flop(const FlopDivisor& d) {
  check_divisor(d);
  if (d.a == 0 && d.b == 0) throw Error(ErrorCode::InvariantViolation, "volume of the zero class");
  FlopVolume v;
  v.closed_form = flop_volume_closed_form(Rational(d.a), Rational(d.b));
  std::vector<Rational> samples;
  for (long m : {8L, 16L, 32L, 64L}) samples.push_back(flop_asymptotic_sample(d, m));
  v.raw = samples.back();
  v.asymptotic = richardson_halving(samples);
  return v;
}

WallWitness flop_wall_witness(long b, long h) {
  if (b <= 0 || h <= 0 || 3 * h > b) throw Error(ErrorCode::InvariantViolation, "wall witness needs 0 < 3h <= b");
  WallWitness w;
  w.b = b;
  w.h = h;
  auto measured = [&](long a) { return volume_flop({a, b}).asymptotic; };
  const Rational rb(b);
  auto left = [&](long a) {
    const Rational x(a);
    return Rational(3) * rb * x * x - x * x * x;
  };
  auto right = [&](long a) {
    const Rational x(a);
    return Rational(3) * x * rb * rb - rb * rb * rb;
  };
  w.measured_left = measured(b) - 2 * measured(b - h) + measured(b - 2 * h);
  w.measured_right = measured(b + 2 * h) - 2 * measured(b + h) + measured(b);
  w.predicted_left = left(b) - 2 * left(b - h) + left(b - 2 * h);
  w.predicted_right = right(b + 2 * h) - 2 * right(b + h) + right(b);
  w.third_left = measured(b) - 3 * measured(b - h) + 3 * measured(b - 2 * h) - measured(b - 3 * h);
  w.third_right = measured(b + 3 * h) - 3 * measured(b + 2 * h) + 3 * measured(b + h) - measured(b);
  return w;
}

template <typename Scalar>
Integer lattice_point_count(const Polytope<Scalar>& p, double limit) {
  const Polytope<Rational> q = exact_copy(p);
  const int n = q.dim();
  if (q.vertices().empty()) return Integer(0);
  for (const auto& v : q.vertices())
    for (int j = 0; j < n; ++j)
      if (!is_integer(v(j))) throw Error(ErrorCode::InvariantViolation, "lattice polytope needs integer vertices");
  std::vector<Integer> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  double box = 1.0;
  for (int j = 0; j < n; ++j) {
    Rational mn = q.vertices().front()(j), mx = mn;
    for (const auto& v : q.vertices()) {
      mn = std::min(mn, v(j));
      mx = std::max(mx, v(j));
    }
    lo[static_cast<std::size_t>(j)] = floor_of(mn);
    hi[static_cast<std::size_t>(j)] = floor_of(mx);
    box *= (hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)] + 1).convert_to<double>();
  }
  if (box > limit) throw Error(ErrorCode::TooLarge, "bounding box exceeds the lattice point limit");

  // Lower-dimensional inputs have no facets; fall back to hull membership.
  const bool full = q.full_dimensional();
  Integer count(0);
  VectorXq x(n);
  std::vector<Integer> cur = lo;
  while (true) {
    for (int j = 0; j < n; ++j) x(j) = Rational(cur[static_cast<std::size_t>(j)]);
    bool inside = true;
    if (full) {
      for (const auto& f : q.facets())
        if (f.normal.dot(x) > f.offset) {
          inside = false;
          break;
        }
    } else {
      std::vector<VectorXq> pts = q.vertices();
      pts.push_back(x);
      inside = same_vertices(convex_hull(pts, true), q);
    }
    if (inside) ++count;
    int j = 0;
    while (j < n && cur[static_cast<std::size_t>(j)] == hi[static_cast<std::size_t>(j)]) {
      cur[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)];
      ++j;
    }
    if (j == n) break;
    cur[static_cast<std::size_t>(j)] += 1;
  }
  return count;
}

template <typename Scalar>
CheckReport check_volume_correspondence(const Polytope<Scalar>& p, double limit) {
  const Polytope<Rational> q = exact_copy(p);
  if (!q.full_dimensional()) throw Error(ErrorCode::DegenerateInput, "volume correspondence needs a full-dimensional polytope");
  const int n = q.dim();
  std::vector<Rational> samples;
  long m = 1;
  for (int level = 0; level <= n; ++level, m *= 2) {
    const Polytope<Rational> mp = scale(q, Rational(m));
    Rational mn(1);
    for (int j = 0; j < n; ++j) mn *= m;
    samples.push_back(Rational(lattice_point_count(mp, limit)) / mn);
  }
  const Rational extrapolated = richardson_halving(samples);
  const Rational vol = volume(q);
  CheckReport r = make_report("volume_correspondence", to_double(extrapolated), to_double(vol), kExactEqualityTolerance);
  const double rel = std::abs(r.slack) / std::max(std::abs(r.rhs), 1e-300);
  r.pass = rel <= 0.01;
  r.equality = extrapolated == vol;
  r.witness("relative_error", rel);
  r.witness("largest_dilation", static_cast<double>(m / 2));
  return r;
}

template Integer lattice_point_count(const Polytope<double>&, double);
template Integer lattice_point_count(const Polytope<Rational>&, double);
template CheckReport check_volume_correspondence(const Polytope<double>&, double);
template CheckReport check_volume_correspondence(const Polytope<Rational>&, double);

}  // namespace cvx
