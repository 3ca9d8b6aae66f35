#include "cvx/alexandrov.hpp"

#include <cmath>

namespace cvx {
namespace {

template <typename Scalar>
double max_abs(const std::vector<Scalar>& values) {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(to_double(v)));
  return m;
}

}  // namespace

template <typename Scalar>
Polytope<Scalar> alexandrov_body(const SupportSample<Scalar>& f) {
  if (f.size() == 0) throw Error(ErrorCode::Unbounded, "empty sample");
  for (const auto& v : f.values())
    if (!(v > 0)) throw Error(ErrorCode::NonPositive, "sample values must be strictly positive");
  HalfspaceSystem<Scalar> sys;
  sys.dim = f.dim();
  for (std::size_t i = 0; i < f.size(); ++i) sys.add(f.directions()[i], f.values()[i]);
  return halfspace_intersection(sys);
}

template <typename Scalar>
Decomposition<Scalar> decompose(const SupportSample<Scalar>& f) {
  Decomposition<Scalar> d;
  d.body = alexandrov_body(f);
  std::vector<Scalar> p, neg;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Scalar h = support_value(d.body, f.directions()[i]);
    p.push_back(h);
    neg.push_back(f.values()[i] - h);
  }
  d.positive_part = f.with_values(std::move(p));
  d.negative_part = f.with_values(std::move(neg));
  const SurfaceMeasure<Scalar> s = area_measure(d.body);
  d.orthogonality_defect = integrate(s, d.negative_part);
  d.scale = s.total_mass() * max_abs(f.values());
  return d;
}

template <typename Scalar>
Scalar volume_of_function(const SupportSample<Scalar>& f) {
  return volume(alexandrov_body(f));
}

template <typename Scalar>
double polar_quotient(const SupportSample<Scalar>& f, const Polytope<Scalar>& k) {
  if (f.dim() != k.dim()) throw Error(ErrorCode::DimensionMismatch, "sample and body dimensions");
  const int n = k.dim();
  for (const auto& v : f.values())
    if (!(v > 0)) throw Error(ErrorCode::NonPositive, "sample values must be strictly positive");
  const double pairing = to_double(integrate(area_measure(k), f)) / n;
  const double vol = to_double(volume(k));
  return std::pow(pairing / std::pow(vol, (n - 1.0) / n), n);
}

template <typename Scalar>
PolarVolume<Scalar> polar_volume(const SupportSample<Scalar>& f, const std::vector<Polytope<Scalar>>& candidates) {
  PolarVolume<Scalar> out;
  const Polytope<Scalar> alex = alexandrov_body(f);
  for (const auto& c : candidates) out.quotients.push_back(polar_quotient(f, c));
  out.quotients.push_back(polar_quotient(f, alex));
  std::size_t best = out.quotients.size() - 1;
  for (std::size_t i = 0; i < out.quotients.size(); ++i)
    if (out.quotients[i] < out.quotients[best]) best = i;
  out.value = out.quotients[best];
  if (best + 1 == out.quotients.size()) {
    out.argmin = -1;
    out.minimizer = alex;
  } else {
    out.argmin = static_cast<int>(best);
    out.minimizer = candidates[best];
  }
  return out;
}

template <typename Scalar>
VolumeDerivative<Scalar> derivative_of_volume(const SupportSample<Scalar>& f, const SupportSample<Scalar>& g) {
  if (f.dim() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "sample dimensions");
  std::vector<Scalar> gv;
  for (const auto& u : f.directions()) {
    const auto v = g.value_at(u);
    if (!v) throw Error(ErrorCode::MissingDirection, "g has no value at a direction of f");
    gv.push_back(*v);
  }
  const SupportSample<Scalar> g_on_f = f.with_values(gv);
  VolumeDerivative<Scalar> out;
  out.analytic = integrate(area_measure(alexandrov_body(f)), g);
  const double gmax = max_abs(gv);
  if (gmax == 0.0) {
    out.numeric = Scalar(0);
    return out;
  }
  out.step = ScalarTraits<Scalar>::from_double(1e-5 * max_abs(f.values()) / gmax);
  const Scalar up = volume_of_function(f + g_on_f * out.step);
  const Scalar down = volume_of_function(f - g_on_f * out.step);
  out.numeric = (up - down) / (Scalar(2) * out.step);
  return out;
}

#define CVX_ALEXANDROV_INSTANTIATE(S)                                                    \
  template Polytope<S> alexandrov_body(const SupportSample<S>&);                       \
  template Decomposition<S> decompose(const SupportSample<S>&);                        \
  template S volume_of_function(const SupportSample<S>&);                              \
  template double polar_quotient(const SupportSample<S>&, const Polytope<S>&);         \
  template PolarVolume<S> polar_volume(const SupportSample<S>&, const std::vector<Polytope<S>>&); \
  template VolumeDerivative<S> derivative_of_volume(const SupportSample<S>&, const SupportSample<S>&);

CVX_ALEXANDROV_INSTANTIATE(double)
CVX_ALEXANDROV_INSTANTIATE(Rational)

}  // namespace cvx
