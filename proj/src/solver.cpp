#include "cvx/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>
#include <boost/dynamic_bitset.hpp>

namespace cvx {
namespace detail {

double flat_volume(const std::vector<VectorXd>& points, const std::vector<VectorXd>& normals) {
  if (points.empty()) return 0.0;
  const Eigen::Index n = points.front().size();
  const Eigen::Index k = static_cast<Eigen::Index>(normals.size());
  const Eigen::Index m = n - k;
  if (m == 0) return 1.0;
  Eigen::MatrixXd a(n, k);
  for (Eigen::Index c = 0; c < k; ++c) a.col(c) = normals[static_cast<std::size_t>(c)];
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
  const Eigen::MatrixXd frame = q.rightCols(m);
  std::vector<VectorXd> projected;
  projected.reserve(points.size());
  for (const auto& p : points) projected.push_back(frame.transpose() * (p - points.front()));
  if (static_cast<Eigen::Index>(projected.size()) < m + 1) return 0.0;
  const Polytope<double> hull = convex_hull(projected, true);
  return hull.full_dimensional() ? volume(hull) : 0.0;
}

namespace {

// Volumes of faces of a polytope whose incidences are known exactly; the
// metric part is plain double arithmetic, so results depend continuously on
// the vertex coordinates even when faces are tiny.
class FaceVolumes {
 public:
  FaceVolumes(const std::vector<VectorXd>& verts, const std::vector<VectorXd>& normals,
              std::vector<boost::dynamic_bitset<>> zeros)
      : verts_(verts), normals_(normals), zeros_(std::move(zeros)) {}

  // Volume of the face with vertex set `s`, lying in the planes `active`.
  double of(const boost::dynamic_bitset<>& s, const std::vector<int>& active) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    const Eigen::Index n = verts_.front().size();
    Eigen::MatrixXd a(n, static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k)
      a.col(static_cast<Eigen::Index>(k)) = normals_[static_cast<std::size_t>(active[k])];
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    const Eigen::Index d = n - qr.rank();
    double result = 1.0;
    if (d > 0) {
      const Eigen::MatrixXd q = qr.householderQ();
      const Eigen::MatrixXd frame = q.rightCols(d);
      VectorXd c = VectorXd::Zero(n);
      for (auto v = s.find_first(); v != boost::dynamic_bitset<>::npos; v = s.find_next(v)) c += verts_[v];
      c /= static_cast<double>(s.count());
      std::vector<std::pair<boost::dynamic_bitset<>, int>> subs;
      for (std::size_t j = 0; j < zeros_.size(); ++j) {
        boost::dynamic_bitset<> t = s & zeros_[j];
        if (t.none() || t == s) continue;
        subs.emplace_back(std::move(t), static_cast<int>(j));
      }
      result = 0.0;
      std::vector<boost::dynamic_bitset<>> seen;
      for (std::size_t k = 0; k < subs.size(); ++k) {
        const auto& t = subs[k].first;
        bool maximal = true;
        for (std::size_t m = 0; m < subs.size() && maximal; ++m)
          if (m != k && subs[m].first != t && t.is_subset_of(subs[m].first)) maximal = false;
        if (!maximal || std::find(seen.begin(), seen.end(), t) != seen.end()) continue;
        seen.push_back(t);
        VectorXd w = frame.transpose() * normals_[static_cast<std::size_t>(subs[k].second)];
        const double len = w.norm();
        if (len < 1e-14) continue;
        const double dist = w.dot(frame.transpose() * (verts_[t.find_first()] - c)) / len;
        std::vector<int> sub_active = active;
        sub_active.push_back(subs[k].second);
        result += dist * of(t, sub_active);
      }
      result /= static_cast<double>(d);
    }
    memo_.emplace(s, result);
    return result;
  }

  // Is t a maximal proper face of s?
  bool is_facet_of(const boost::dynamic_bitset<>& t, const boost::dynamic_bitset<>& s) const {
    if (t.none() || t == s) return false;
    for (const auto& z : zeros_) {
      const boost::dynamic_bitset<> u = s & z;
      if (u != s && u != t && t.is_subset_of(u)) return false;
    }
    return true;
  }

 private:
  const std::vector<VectorXd>& verts_;
  const std::vector<VectorXd>& normals_;
  std::vector<boost::dynamic_bitset<>> zeros_;
  std::map<boost::dynamic_bitset<>, double> memo_;
};

}  // namespace

FacetAreaJacobian facet_areas(const std::vector<VectorXd>& normals, const Eigen::VectorXd& h,
                              bool with_jacobian) {
  const std::size_t count = normals.size();
  const int n = static_cast<int>(normals.front().size());
  // Combinatorics are computed exactly: near the solution P(h) has tiny
  // faces wherever the target body has non-simple vertices, and a tolerance
  // based enumeration gets their incidences wrong. Doubles convert exactly.
  HalfspaceSystem<Rational> sys;
  sys.dim = n;
  for (std::size_t i = 0; i < count; ++i)
    sys.add(from_double<Rational>(normals[i]), Rational(h[static_cast<Eigen::Index>(i)]));
  IntersectionResult<Rational> res = intersect_halfspaces(sys);

  FacetAreaJacobian out;
  const auto size = static_cast<Eigen::Index>(count);
  out.areas = Eigen::VectorXd::Zero(size);
  out.jacobian = Eigen::MatrixXd::Zero(size, size);
  std::vector<VectorXd> verts;
  for (const auto& v : res.polytope.vertices()) verts.push_back(to_double(v));
  if (!res.polytope.full_dimensional()) {
    out.body = Polytope<double>(n, verts, res.polytope.affine_dim());
    return out;
  }
  const auto& inc = res.polytope.facet_vertices();
  std::vector<boost::dynamic_bitset<>> zeros(count, boost::dynamic_bitset<>(verts.size()));
  for (std::size_t i = 0; i < count; ++i) {
    const int f = res.facet_of_constraint[i];
    if (f < 0) continue;
    for (int v : inc[static_cast<std::size_t>(f)]) zeros[i].set(static_cast<std::size_t>(v));
  }
  FaceVolumes faces(verts, normals, zeros);
  for (std::size_t i = 0; i < count; ++i)
    if (zeros[i].any()) out.areas[static_cast<Eigen::Index>(i)] = faces.of(zeros[i], {static_cast<int>(i)});

  std::vector<Facet<double>> dfacets;
  for (std::size_t f = 0; f < inc.size(); ++f) {
    std::size_t i = 0;
    while (res.facet_of_constraint[i] != static_cast<int>(f)) ++i;
    dfacets.push_back({normals[i], h[static_cast<Eigen::Index>(i)], out.areas[static_cast<Eigen::Index>(i)]});
  }
  out.volume = h.dot(out.areas) / n;
  out.body = Polytope<double>(n, verts, n);
  out.body.seed_facets(std::move(dfacets), inc, true);
  if (!with_jacobian) return out;

  for (std::size_t i = 0; i < count; ++i) {
    if (zeros[i].none()) continue;
    for (std::size_t j = i + 1; j < count; ++j) {
      if (zeros[j].none()) continue;
      const boost::dynamic_bitset<> ridge = zeros[i] & zeros[j];
      if (static_cast<int>(ridge.count()) < n - 1) continue;
      const double c = normals[i].dot(normals[j]);
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      if (s < 1e-12) continue;
      if (!faces.is_facet_of(ridge, zeros[i])) continue;
      const double r = faces.of(ridge, {static_cast<int>(i), static_cast<int>(j)});
      if (r <= 0.0) continue;
      const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
      out.jacobian(a, b) = out.jacobian(b, a) = r / s;
      out.jacobian(a, a) -= c * r / s;
      out.jacobian(b, b) -= c * r / s;
    }
  }
  return out;
}

}  // namespace detail

namespace {

double max_relative_error(const Eigen::VectorXd& achieved, const Eigen::VectorXd& target) {
  return ((achieved - target).array().abs() / target.array()).maxCoeff();
}

}  // namespace

MinkowskiSolution solve_minkowski(const SurfaceMeasure<double>& target, const SolverOptions& opts) {
  const int n = target.dim();
  if (n < 2) throw Error(ErrorCode::DimensionMismatch, "Minkowski problem needs n >= 2");
  if (!(opts.tolerance > 0.0) || opts.max_iterations < 1 || !(opts.damping > 0.0))
    throw Error(ErrorCode::InvariantViolation, "invalid solver options");
  for (const auto& a : target.atoms())
    if (!(a.weight > 0.0)) throw Error(ErrorCode::NonPositive, "target weights must be positive");
  if (!target.spans())
    throw Error(ErrorCode::GreatSubsphere, "target normals lie in a great subsphere");
  const double total = target.total_mass();
  if (centroid_defect_norm(target) > 1e-8 * std::max(1.0, total))
    throw Error(ErrorCode::CentroidNonzero, "target measure has nonzero centroid");

  const std::size_t count = target.size();
  const auto size = static_cast<Eigen::Index>(count);
  std::vector<VectorXd> u;
  Eigen::VectorXd weights(size);
  Eigen::MatrixXd frame(size, n);
  for (std::size_t i = 0; i < count; ++i) {
    u.push_back(target.atoms()[i].unit_normal());
    weights[static_cast<Eigen::Index>(i)] = target.atoms()[i].mass();
    frame.row(static_cast<Eigen::Index>(i)) = u.back().transpose();
  }
  // Work with unit total mass; the minimizer of f.h - log vol(P(h)) has
  // F(h) = vol(P(h)) f, which fixes the scale.
  const Eigen::VectorXd f = weights / total;

  auto objective = [&](const detail::FacetAreaJacobian& s, const Eigen::VectorXd& h) {
    return f.dot(h) - std::log(s.volume);
  };

  Eigen::VectorXd h = Eigen::VectorXd::Ones(size);
  detail::FacetAreaJacobian state = detail::facet_areas(u, h);
  SolveDiagnostics diag;
  double err = max_relative_error(state.areas / state.areas.sum(), f);
  // Newton is quadratic here, so aim below the tolerance; the final check
  // against opts.tolerance is made on the rescaled body.
  const double internal_target = 0.01 * opts.tolerance;
  int it = 0;
  for (; it < opts.max_iterations && err > internal_target; ++it) {
    const double vol = state.volume;
    const Eigen::VectorXd g = f - state.areas / vol;
    Eigen::MatrixXd hess = -state.jacobian / vol + state.areas * state.areas.transpose() / (vol * vol);
    const double rho = std::max(hess.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    hess += rho * frame * frame.transpose();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
    Eigen::VectorXd d = ldlt.solve(-g);
    if (ldlt.info() != Eigen::Success || !d.allFinite() || g.dot(d) >= 0.0) d = -g;

    const double j0 = objective(state, h);
    const double slope = g.dot(d);
    double alpha = opts.damping;
    bool accepted = false;
    for (int halving = 0; halving < 60 && !accepted; ++halving, alpha *= 0.5) {
      const Eigen::VectorXd trial = h + alpha * d;
      detail::FacetAreaJacobian next;
      try {
        next = detail::facet_areas(u, trial);
      } catch (const Error&) {
        continue;
      }
      if (!(next.volume > 0.0)) continue;
      if (next.volume < 0.5 * vol || next.volume > 2.0 * vol) continue;
      const double floor = 1e-12 * next.areas.sum();
      if ((next.areas.array() <= floor).any()) continue;
      const double j1 = objective(next, trial);
      if (j1 > j0 + 1e-4 * alpha * slope + 1e-13 * (1.0 + std::abs(j0))) continue;
      h = trial;
      state = std::move(next);
      accepted = true;
    }
    err = max_relative_error(state.areas / state.areas.sum(), f);
    if (!accepted) {
      ++it;
      break;
    }
  }

  const double s = std::pow(total / state.areas.sum(), 1.0 / (n - 1));
  Polytope<double> body = scale(state.body, s);
  body = translate(body, VectorXd(-detail::vertex_centroid(body.vertices())));
  const Eigen::VectorXd achieved = state.areas * std::pow(s, n - 1);
  diag.iterations = it;
  diag.max_relative_area_error = max_relative_error(achieved, weights);
  diag.centroid_defect = (frame.transpose() * achieved).norm();
  diag.converged = diag.max_relative_area_error <= opts.tolerance;
  if (!diag.converged)
    throw SolverError("Minkowski solver stopped after " + std::to_string(it) +
                          " iterations with relative area error " + std::to_string(diag.max_relative_area_error),
                      diag);
  return {std::move(body), diag};
}

}  // namespace cvx
