#include "cvx/suite.hpp"

#include <algorithm>
#include <cmath>

#include "cvx/toric.hpp"

namespace cvx {
namespace {

const std::vector<std::string> kChecks = {
    "brunn_minkowski",   "kneser_suss",        "diskant_bound",    "morse",
    "reverse_kt",        "mixed_discriminant_kt", "loomis_whitney", "box_bound",
    "mixed_body_volume", "improved_bm",        "log_concavity",    "mixed_volume_linearity",
    "solver_round_trip", "mixed_volume_oracle", "alexandrov_decomposition", "alexandrov_derivative",
    "polar_volume",      "flop_volume",        "volume_correspondence",
};

std::uint64_t check_tag(const std::string& check, int instance) {
  const auto it = std::find(kChecks.begin(), kChecks.end(), check);
  const auto index = static_cast<std::uint64_t>(it - kChecks.begin());
  return index * 1000003ull + static_cast<std::uint64_t>(instance);
}

template <typename Scalar>
Polytope<Scalar> body(Rng& rng, int n) {
  return random_polytope<Scalar>(rng, n, static_cast<int>(rng.uniform_int(std::max(4, n + 1), 12)));
}

/// Identity-style checks pass iff both sides agree within `tol` relative.
CheckReport agreement(std::string name, double lhs, double rhs, double tol) {
  CheckReport r = make_report(std::move(name), lhs, rhs, tol);
  r.pass = r.equality;
  return r;
}

template <typename Scalar>
CheckReport instance(const std::string& check, Rng& rng, int n, const SuiteConfig& cfg) {
  constexpr bool exact = ScalarTraits<Scalar>::exact;
  const SolverOptions& opts = cfg.solver;
  if (check == "brunn_minkowski") return check_brunn_minkowski(body<Scalar>(rng, n), body<Scalar>(rng, n));
  if (check == "kneser_suss") return check_kneser_suss(body<Scalar>(rng, n), body<Scalar>(rng, n), opts);
  if (check == "diskant_bound") return check_diskant_bound(body<Scalar>(rng, n), body<Scalar>(rng, n));
  if (check == "morse") {
    const Polytope<Scalar> k = body<Scalar>(rng, n);
    Polytope<Scalar> l = body<Scalar>(rng, n);
    // Small copies make vol(K) - n V(K^{n-1}, L) positive often enough to
    // exercise the positivity witness.
    if (rng.uniform() < 0.75) l = scale(l, dyadic<Scalar>(rng.uniform(0.05, 0.4)));
    return check_morse(k, l);
  }
  if (check == "reverse_kt") {
    const Polytope<Scalar> k = body<Scalar>(rng, n), l = body<Scalar>(rng, n), m = body<Scalar>(rng, n);
    return check_reverse_kt(k, l, m, static_cast<int>(rng.uniform_int(1, n - 1)));
  }
  if (check == "mixed_discriminant_kt") {
    const auto a = random_spd<Scalar>(rng, n), b = random_spd<Scalar>(rng, n), c = random_spd<Scalar>(rng, n);
    return check_mixed_discriminant_kt(a, b, c, static_cast<int>(rng.uniform_int(1, n - 1)));
  }
  if (check == "loomis_whitney") return check_loomis_whitney(body<Scalar>(rng, n));
  if (check == "box_bound") return check_box_bound(body<Scalar>(rng, n));
  if (check == "mixed_body_volume") {
    std::vector<Polytope<Scalar>> bodies;
    for (int i = 0; i + 1 < n; ++i) bodies.push_back(body<Scalar>(rng, n));
    return check_mixed_body_volume(bodies, opts);
  }
  if (check == "improved_bm") return check_improved_bm(body<Scalar>(rng, n), body<Scalar>(rng, n), opts);
  if (check == "log_concavity") return check_log_concavity(body<Scalar>(rng, n), body<Scalar>(rng, n), opts);
  if (check == "mixed_volume_linearity") {
    const Polytope<Scalar> k = body<Scalar>(rng, n), l1 = body<Scalar>(rng, n), l2 = body<Scalar>(rng, n);
    return check_mixed_volume_linearity(k, l1, l2);
  }
  if (check == "solver_round_trip") {
    const Polytope<Scalar> p = body<Scalar>(rng, n);
    const MinkowskiSolution sol = solve_minkowski(area_measure(p), opts);
    const Polytope<double> pd = p.to_double();
    const double diam = diameter(pd);
    const double hd = hausdorff_up_to_translation(sol.body, pd);
    CheckReport r = make_report("solver_round_trip", 1e-6 * diam, hd, kSolverEqualityTolerance);
    r.pass = hd <= 1e-6 * diam && sol.diagnostics.max_relative_area_error <= opts.tolerance;
    r.equality = false;
    r.witness("hausdorff_over_diameter", hd / diam);
    r.witness("solver_iterations", sol.diagnostics.iterations);
    r.witness("solver_area_error", sol.diagnostics.max_relative_area_error);
    return r;
  }
  if (check == "mixed_volume_oracle") {
    std::vector<Polytope<Scalar>> bodies;
    for (int i = 0; i + 1 < n; ++i) bodies.push_back(body<Scalar>(rng, n));
    const Polytope<Scalar> l = body<Scalar>(rng, n);
    std::vector<Polytope<Scalar>> all = bodies;
    all.push_back(l);
    const Scalar direct = mixed_volume(all);
    const Scalar via = mixed_volume_via_measure(bodies, l);
    CheckReport r = agreement("mixed_volume_oracle", to_double(direct), to_double(via), 1e-9);
    if constexpr (exact) r.pass = r.equality = direct == via;
    return r;
  }
  if (check == "alexandrov_decomposition") {
    const SupportSample<Scalar> f = random_positive_sample<Scalar>(rng, n, static_cast<int>(rng.uniform_int(6, 20)));
    const Decomposition<Scalar> d = decompose(f);
    const double defect = std::abs(to_double(d.orthogonality_defect));
    CheckReport r = make_report("alexandrov_decomposition", 1e-10 * d.scale, defect, kExactEqualityTolerance);
    double min_negative = std::numeric_limits<double>::infinity();
    for (const auto& v : d.negative_part.values()) min_negative = std::min(min_negative, to_double(v));
    // Idempotence: P(f) decomposes with N = 0 and the same body.
    const Decomposition<Scalar> again = decompose(d.positive_part);
    bool idempotent;
    if constexpr (exact) {
      idempotent = same_vertices(again.body, d.body);
      for (const auto& v : again.negative_part.values()) idempotent = idempotent && v == 0;
    } else {
      const double tol = 1e-12 * std::max(1.0, diameter(d.body));
      idempotent = same_vertices(again.body, d.body, tol);
      for (const auto& v : again.negative_part.values()) idempotent = idempotent && std::abs(v) <= tol;
    }
    r.pass = defect <= 1e-10 * d.scale && min_negative >= -1e-12 && idempotent;
    r.equality = false;
    r.witness("directions", static_cast<double>(f.size()));
    r.witness("min_negative_part", min_negative);
    r.witness("idempotent", idempotent ? 1 : 0);
    return r;
  }
  if (check == "alexandrov_derivative") {
    const SupportSample<Scalar> f = random_positive_sample<Scalar>(rng, n, static_cast<int>(rng.uniform_int(6, 20)));
    std::vector<Scalar> gv;
    for (std::size_t i = 0; i < f.size(); ++i) gv.push_back(dyadic<Scalar>(rng.uniform(-1.0, 1.0)));
    const VolumeDerivative<Scalar> dv = derivative_of_volume(f, f.with_values(gv));
    const double a = to_double(dv.analytic), b = to_double(dv.numeric);
    CheckReport r = agreement("alexandrov_derivative", a, b, 1e-3);
    r.pass = std::abs(a - b) <= 1e-3 * std::max(1.0, std::abs(a));
    r.witness("step", to_double(dv.step));
    return r;
  }
  if (check == "polar_volume") {
    const SupportSample<Scalar> f = random_positive_sample<Scalar>(rng, n, static_cast<int>(rng.uniform_int(6, 20)));
    const Polytope<Scalar> k = alexandrov_body(f);
    // Candidates whose facet normals are sample directions: dilates and translates of P(f).
    std::vector<Polytope<Scalar>> candidates;
    candidates.push_back(scale(k, dyadic<Scalar>(rng.uniform(0.5, 2.0))));
    Vector<Scalar> t(n);
    for (int j = 0; j < n; ++j) t(j) = dyadic<Scalar>(rng.uniform(-1.0, 1.0));
    candidates.push_back(translate(k, t));
    const PolarVolume<Scalar> pv = polar_volume(f, candidates);
    const double vol = to_double(volume(k));
    CheckReport r = agreement("polar_volume", pv.value, vol, 1e-9);
    r.witness("argmin", pv.argmin);
    return r;
  }
  if (check == "flop_volume") {
    FlopDivisor d{0, 0};
    while (d.a == 0 && d.b == 0) d = {rng.uniform_int(0, 5), rng.uniform_int(0, 5)};
    const FlopVolume v = volume_flop(d);
    const double closed = to_double(v.closed_form), asym = to_double(v.asymptotic);
    CheckReport r = make_report("flop_volume", asym, closed, kExactEqualityTolerance);
    const bool counts_match = Rational(section_count_flop(d)) == section_count_closed_form(d);
    r.pass = counts_match && std::abs(asym - closed) <= 0.01 * std::max(closed, 1e-300);
    if (closed == 0.0) r.pass = counts_match && asym == 0.0;
    r.witness("a", static_cast<double>(d.a));
    r.witness("b", static_cast<double>(d.b));
    r.witness("sections", section_count_flop(d).convert_to<double>());
    return r;
  }
  if (check == "volume_correspondence") {
    const int m = std::min(n, 3);
    while (true) {
      std::vector<VectorXq> pts;
      const int count = static_cast<int>(rng.uniform_int(m + 1, 8));
      for (int i = 0; i < count; ++i) {
        VectorXq x(m);
        for (int j = 0; j < m; ++j) x(j) = Rational(rng.uniform_int(0, 3));
        pts.push_back(x);
      }
      const Polytope<Rational> p = convex_hull(pts, true);
      if (p.full_dimensional()) return check_volume_correspondence(p);
    }
  }
  throw Error(ErrorCode::InvariantViolation, "unknown check '" + check + "'");
}

}  // namespace

const std::vector<std::string>& suite_check_names() { return kChecks; }

int suite_dimension(const std::string& check, int i, const SuiteConfig& config) {
  int lo = config.min_dim, hi = std::max(config.min_dim, config.max_dim);
  // Mixed discriminants are cheap; always sweep n = 2..5.
  if (check == "mixed_discriminant_kt") lo = 2, hi = 5;
  if (check == "log_concavity") lo = std::max(lo, 3), hi = std::max(hi, 3);
  return lo + i % (hi - lo + 1);
}

CheckReport run_suite_instance(const std::string& check, int i, const SuiteConfig& config) {
  Rng rng = Rng::stream(config.seed, check_tag(check, i));
  const int n = suite_dimension(check, i, config);
  if (config.mode == Mode::Exact) return instance<Rational>(check, rng, n, config);
  return instance<double>(check, rng, n, config);
}

bool SuiteSummary::all_pass() const {
  for (const auto& [name, s] : checks)
    if (s.fail > 0 || s.errors > 0) return false;
  return true;
}

int SuiteSummary::exit_code() const {
  for (const auto& [name, s] : checks)
    if (s.no_convergence > 0) return 3;
  return all_pass() ? 0 : 1;
}

SuiteSummary run_suite(const SuiteConfig& config, const std::function<void(const Json&)>& sink) {
  SuiteSummary summary;
  for (const std::string& check : kChecks) {
    if (!config.checks.empty() && std::find(config.checks.begin(), config.checks.end(), check) == config.checks.end())
      continue;
    const auto it = config.counts.find(check);
    const int count = it == config.counts.end() ? config.count : it->second;
    CheckSummary& s = summary.checks[check];
    for (int i = 0; i < count; ++i) {
      Json line;
      try {
        const CheckReport r = run_suite_instance(check, i, config);
        (r.pass ? s.pass : s.fail) += 1;
        if (r.equality) ++s.equality;
        s.worst_relative_slack = std::min(s.worst_relative_slack, r.slack / std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)}));
        if (const auto it2 = r.find_witness("solver_iterations")) {
          ++summary.solver.runs;
          summary.solver.max_iterations = std::max(summary.solver.max_iterations, static_cast<int>(*it2));
          summary.solver.worst_area_error =
              std::max(summary.solver.worst_area_error, r.find_witness("solver_area_error").value_or(0.0));
        }
        line = to_json(r);
      } catch (const SolverError& e) {
        ++s.fail;
        ++s.errors;
        ++s.no_convergence;
        line = {{"name", check}, {"pass", false}, {"error", to_string(e.code())}, {"message", e.what()},
                {"diagnostics", to_json(e.diagnostics())}};
      } catch (const Error& e) {
        ++s.fail;
        ++s.errors;
        line = {{"name", check}, {"pass", false}, {"error", to_string(e.code())}, {"message", e.what()}};
      }
      line["instance"] = i;
      line["dim"] = suite_dimension(check, i, config);
      line["seed"] = config.seed;
      ++summary.reports;
      if (sink) sink(line);
    }
  }
  return summary;
}

Json to_json(const SuiteSummary& s) {
  Json checks = Json::object();
  for (const auto& [name, c] : s.checks) {
    checks[name] = {{"pass", c.pass},
                    {"fail", c.fail},
                    {"equality", c.equality},
                    {"errors", c.errors},
                    {"no_convergence", c.no_convergence},
                    {"worst_relative_slack", std::isfinite(c.worst_relative_slack) ? Json(c.worst_relative_slack) : Json(nullptr)}};
  }
  return {{"checks", checks},
          {"reports", s.reports},
          {"all_pass", s.all_pass()},
          {"solver", {{"runs", s.solver.runs}, {"max_iterations", s.solver.max_iterations},
                      {"worst_area_error", s.solver.worst_area_error}}}};
}

}  // namespace cvx
