// Command-line front end: one binary, one subcommand per operation.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <utility>

#include <CLI11.hpp>

#include "cvx/suite.hpp"
#include "cvx/toric.hpp"

using namespace cvx;

namespace {

struct Globals {
  std::string mode = "float";
  std::uint64_t seed = 1;
  std::string dim = "2-3";
  int count = 50;
  double tolerance = 1e-8;
  int max_iterations = 200;
  double damping = 1.0;
  std::string json_out;
};

Globals g;
std::ofstream json_out_stream;

bool exact_mode() { return g.mode == "exact"; }

SolverOptions solver_options() {
  SolverOptions o;
  o.tolerance = g.tolerance;
  o.max_iterations = g.max_iterations;
  o.damping = g.damping;
  return o;
}

/// Prints one JSON document (or JSON line) and mirrors it to --json-out.
void emit(const Json& j, bool line = false) {
  std::cout << (line ? j.dump() : j.dump(2)) << '\n';
  if (!g.json_out.empty()) {
    if (!json_out_stream.is_open()) {
      json_out_stream.open(g.json_out);
      if (!json_out_stream) throw Error(ErrorCode::SchemaError, g.json_out + ": cannot write file");
    }
    json_out_stream << j.dump() << '\n';
  }
}

std::pair<int, int> dim_range() {
  const std::string& s = g.dim;
  const auto sep = s.find_first_of("-.");
  try {
    if (sep == std::string::npos) {
      const int n = std::stoi(s);
      return {n, n};
    }
    const int lo = std::stoi(s.substr(0, sep));
    const int hi = std::stoi(s.substr(s.find_last_of("-.") + 1));
    return {lo, hi};
  } catch (const std::exception&) {
    throw Error(ErrorCode::SchemaError, "--dim: expected N or LO-HI, got '" + s + "'");
  }
}

/// Re-raises a load error with the file name in front of the field path.
[[noreturn]] void rethrow_in(const std::string& path, const Error& e) {
  std::string what = e.what();
  const std::string prefix = std::string(to_string(e.code())) + ": ";
  if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
  throw Error(e.code(), path + ": " + what);
}

template <typename S>
Polytope<S> load_polytope(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return polytope_from_json<S>(j);
  } catch (const Error& e) {
    rethrow_in(path, e);
  }
}

template <typename S>
std::vector<Polytope<S>> load_polytopes(const std::vector<std::string>& paths) {
  std::vector<Polytope<S>> out;
  for (const auto& p : paths) out.push_back(load_polytope<S>(p));
  return out;
}

template <typename S>
SymmetricMatrix<S> load_matrix(const std::string& path) {
  const Json j = read_json_file(path);
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
    throw Error(ErrorCode::SchemaError, path + ": expected {\"dim\": n, \"entries\": [[...], ...]}");
  const int n = j["dim"].get<int>();
  const Json& rows = j["entries"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw Error(ErrorCode::SchemaError, path + ": entries must have dim rows");
  Matrix<S> m(n, n);
  for (int i = 0; i < n; ++i)
    m.row(i) = vector_from_json<S>(rows[static_cast<std::size_t>(i)], n, "entries[" + std::to_string(i) + "]").transpose();
  return SymmetricMatrix<S>(std::move(m));
}

void need(const std::vector<std::string>& inputs, std::size_t count, const std::string& check) {
  if (inputs.size() != count)
    throw Error(ErrorCode::SchemaError,
                check + " needs " + std::to_string(count) + " input file(s), got " + std::to_string(inputs.size()));
}

std::string normalize(std::string s) {
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

template <typename S>
CheckReport verify_inputs(const std::string& check, const std::vector<std::string>& inputs, int k) {
  const SolverOptions opts = solver_options();
  auto two = [&] {
    need(inputs, 2, check);
    return std::pair{load_polytope<S>(inputs[0]), load_polytope<S>(inputs[1])};
  };
  if (check == "brunn_minkowski") { auto [a, b] = two(); return check_brunn_minkowski(a, b); }
  if (check == "kneser_suss") { auto [a, b] = two(); return check_kneser_suss(a, b, opts); }
  if (check == "diskant_bound") { auto [a, b] = two(); return check_diskant_bound(a, b); }
  if (check == "morse") { auto [a, b] = two(); return check_morse(a, b); }
  if (check == "improved_bm") { auto [a, b] = two(); return check_improved_bm(a, b, opts); }
  if (check == "log_concavity") { auto [a, b] = two(); return check_log_concavity(a, b, opts); }
  if (check == "reverse_kt") {
    need(inputs, 3, check);
    const auto p = load_polytopes<S>(inputs);
    return check_reverse_kt(p[0], p[1], p[2], k);
  }
  if (check == "mixed_volume_linearity") {
    need(inputs, 3, check);
    const auto p = load_polytopes<S>(inputs);
    return check_mixed_volume_linearity(p[0], p[1], p[2]);
  }
  if (check == "mixed_discriminant_kt") {
    need(inputs, 3, check);
    return check_mixed_discriminant_kt(load_matrix<S>(inputs[0]), load_matrix<S>(inputs[1]), load_matrix<S>(inputs[2]), k);
  }
  if (check == "loomis_whitney") { need(inputs, 1, check); return check_loomis_whitney(load_polytope<S>(inputs[0])); }
  if (check == "box_bound") { need(inputs, 1, check); return check_box_bound(load_polytope<S>(inputs[0])); }
  if (check == "volume_correspondence") {
    need(inputs, 1, check);
    return check_volume_correspondence(load_polytope<S>(inputs[0]));
  }
  if (check == "mixed_body_volume") return check_mixed_body_volume(load_polytopes<S>(inputs), opts);
  throw Error(ErrorCode::SchemaError, "unknown check '" + check + "'");
}

SuiteConfig suite_config(int count) {
  SuiteConfig c;
  c.seed = g.seed;
  c.count = count;
  std::tie(c.min_dim, c.max_dim) = dim_range();
  if (c.min_dim < 2 || c.max_dim > 6 || c.min_dim > c.max_dim)
    throw Error(ErrorCode::SchemaError, "--dim must lie within 2..6");
  c.mode = exact_mode() ? Mode::Exact : Mode::Float;
  c.solver = solver_options();
  return c;
}

int run_suite_cli(const SuiteConfig& c) {
  const SuiteSummary s = run_suite(c, [](const Json& line) {
    if (!g.json_out.empty()) {
      if (!json_out_stream.is_open()) json_out_stream.open(g.json_out);
      json_out_stream << line.dump() << '\n';
    }
  });
  std::cout << to_json(s).dump(2) << '\n';
  return s.exit_code();
}

template <typename S>
int cmd_volume(const std::string& polytope, const std::string& halfspaces) {
  Polytope<S> p;
  if (!halfspaces.empty())
    p = halfspace_intersection(halfspaces_from_json<S>(read_json_file(halfspaces)));
  else
    p = load_polytope<S>(polytope);
  emit({{"volume", scalar_to_json(volume(p))}, {"vertices", p.num_vertices()}, {"polytope", to_json(p)}});
  return 0;
}

template <typename S>
int cmd_mixed(const std::vector<std::string>& paths, const std::vector<int>& mult) {
  std::vector<Polytope<S>> bodies;
  const auto loaded = load_polytopes<S>(paths);
  if (!mult.empty()) {
    if (mult.size() != loaded.size()) throw Error(ErrorCode::SchemaError, "--multiplicities must match --polytopes");
    for (std::size_t i = 0; i < loaded.size(); ++i)
      for (int j = 0; j < mult[i]; ++j) bodies.push_back(loaded[i]);
  } else {
    bodies = loaded;
  }
  const S v = mixed_volume(bodies);
  Json out = {{"mixed_volume", scalar_to_json(v)}};
  std::vector<Polytope<S>> head(bodies.begin(), bodies.end() - 1);
  out["via_measure"] = scalar_to_json(mixed_volume_via_measure(head, bodies.back()));
  emit(out);
  return 0;
}

template <typename S>
int cmd_measure(const std::vector<std::string>& paths) {
  const auto bodies = load_polytopes<S>(paths);
  if (bodies.size() == 1)
    emit(to_json(area_measure(bodies.front())));
  else
    emit(to_json(mixed_area_measure(bodies)));
  return 0;
}

int emit_solution(const MinkowskiSolution& s) {
  emit({{"body", to_json(s.body)}, {"volume", volume(s.body)}, {"diagnostics", to_json(s.diagnostics)}});
  return 0;
}

template <typename S>
int cmd_solve(const std::string& path) {
  const Json j = read_json_file(path);
  SurfaceMeasure<S> target(1);
  try {
    target = measure_from_json<S>(j, true);
  } catch (const Error& e) {
    rethrow_in(path, e);
  }
  return emit_solution(solve_minkowski(target, solver_options()));
}

template <typename S>
int cmd_blaschke(const std::vector<std::string>& paths) {
  need(paths, 2, "blaschke");
  const auto p = load_polytopes<S>(paths);
  return emit_solution(blaschke_add(p[0], p[1], solver_options()));
}

template <typename S>
int cmd_mixed_body(const std::vector<std::string>& paths, const std::string& k, const std::string& l, int index) {
  if (!k.empty()) {
    return emit_solution(mixed_body(load_polytope<S>(k), load_polytope<S>(l), index, solver_options()));
  }
  return emit_solution(mixed_body(load_polytopes<S>(paths), solver_options()));
}

template <typename S>
SupportSample<S> load_sample(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return sample_from_json<S>(j);
  } catch (const Error& e) {
    rethrow_in(path, e);
  }
}

template <typename S>
int cmd_alexandrov(const std::string& action, const std::string& f, const std::string& gpath,
                   const std::vector<std::string>& candidates) {
  const SupportSample<S> fs = load_sample<S>(f);
  if (action == "decompose") {
    emit(to_json(decompose(fs)));
  } else if (action == "volume") {
    emit({{"volume", scalar_to_json(volume_of_function(fs))}});
  } else if (action == "polar") {
    const PolarVolume<S> pv = polar_volume(fs, load_polytopes<S>(candidates));
    emit({{"polar_volume", pv.value}, {"argmin", pv.argmin}, {"quotients", pv.quotients}, {"minimizer", to_json(pv.minimizer)}});
  } else {
    const VolumeDerivative<S> d = derivative_of_volume(fs, load_sample<S>(gpath));
    emit({{"analytic", scalar_to_json(d.analytic)}, {"numeric", scalar_to_json(d.numeric)}, {"step", scalar_to_json(d.step)}});
  }
  return 0;
}

Json rational_json(const Rational& q) { return format_rational(q); }

int cmd_toric_flop(long a, long b, bool check_volume) {
  const FlopDivisor d{a, b};
  Json out = {{"a", a},
              {"b", b},
              {"sections", section_count_flop(d).str()},
              {"sections_closed_form", rational_json(section_count_closed_form(d))}};
  int code = Rational(section_count_flop(d)) == section_count_closed_form(d) ? 0 : 1;
  if (a != 0 || b != 0) {
    const FlopVolume v = volume_flop(d);
    out["volume"] = rational_json(v.closed_form);
    if (check_volume) {
      const double closed = to_double(v.closed_form), asym = to_double(v.asymptotic);
      const double rel = closed == 0.0 ? std::abs(asym) : std::abs(asym - closed) / closed;
      out["asymptotic"] = rational_json(v.asymptotic);
      out["raw_m64"] = to_double(v.raw);
      out["relative_error"] = rel;
      out["pass"] = rel <= 0.01;
      if (rel > 0.01) code = 1;
    }
  }
  emit(out);
  return code;
}

int cmd_toric_wall(long b, long h) {
  const WallWitness w = flop_wall_witness(b, h);
  emit({{"b", b},
        {"h", h},
        {"second_difference_left", rational_json(w.measured_left)},
        {"second_difference_right", rational_json(w.measured_right)},
        {"measured_jump", rational_json(w.measured_jump())},
        {"predicted_jump", rational_json(w.predicted_jump())},
        {"third_difference_left", rational_json(w.third_left)},
        {"third_difference_right", rational_json(w.third_right)},
        {"locally_polynomial", w.locally_polynomial()}});
  return w.measured_jump() == w.predicted_jump() ? 0 : 1;
}

int cmd_toric_count(const std::string& path, bool check_volume) {
  const Polytope<Rational> p = polytope_from_json<Rational>(read_json_file(path), !check_volume);
  Json out = {{"lattice_points", lattice_point_count(p).str()}};
  int code = 0;
  if (check_volume) {
    const CheckReport r = check_volume_correspondence(p);
    out["correspondence"] = to_json(r);
    code = r.pass ? 0 : 1;
  }
  emit(out);
  return code;
}

template <typename F>
int dispatch(F&& f) {
  if (exact_mode()) return f(Rational{});
  return f(double{});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed volumes, Minkowski problems and convex inequality checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--mode", g.mode, "Arithmetic: exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--seed", g.seed, "Seed for randomized runs");
  app.add_option("--dim", g.dim, "Dimension N or range LO-HI for randomized runs");
  app.add_option("--count", g.count, "Instances per check for randomized runs");
  app.add_option("--tolerance", g.tolerance, "Solver tolerance (relative facet-area error)");
  app.add_option("--max-iterations", g.max_iterations, "Solver iteration cap");
  app.add_option("--damping", g.damping, "Initial Newton step length");
  app.add_option("--json-out", g.json_out, "Also write JSON output to this path");

  std::function<int()> action;

  std::string polytope, halfspaces;
  auto* volume_cmd = app.add_subcommand("volume", "Volume of a polytope");
  auto* vsrc = volume_cmd->add_option("--polytope", polytope, "Polytope JSON");
  volume_cmd->add_option("--halfspaces", halfspaces, "HalfspaceSystem JSON")->excludes(vsrc);
  volume_cmd->callback([&] {
    if (polytope.empty() && halfspaces.empty()) throw CLI::RequiredError("--polytope or --halfspaces");
    action = [&] { return dispatch([&](auto s) { return cmd_volume<decltype(s)>(polytope, halfspaces); }); };
  });

  std::vector<std::string> paths;
  std::vector<int> multiplicities;
  auto* mixed_cmd = app.add_subcommand("mixed", "Mixed volume V(K_1, ..., K_n)");
  mixed_cmd->add_option("--polytopes", paths, "Polytope JSON files")->required();
  mixed_cmd->add_option("--multiplicities", multiplicities, "Repeat counts per file");
  mixed_cmd->callback([&] {
    action = [&] { return dispatch([&](auto s) { return cmd_mixed<decltype(s)>(paths, multiplicities); }); };
  });

  auto* measure_cmd = app.add_subcommand("measure", "Area measure of one body or mixed area measure of n-1 bodies");
  measure_cmd->add_option("--polytopes", paths, "Polytope JSON files")->required();
  measure_cmd->callback([&] { action = [&] { return dispatch([&](auto s) { return cmd_measure<decltype(s)>(paths); }); }; });

  std::string measure_path;
  auto* solve_cmd = app.add_subcommand("solve", "Polytope with a prescribed area measure");
  solve_cmd->add_option("--measure", measure_path, "SurfaceMeasure JSON")->required();
  solve_cmd->callback([&] { action = [&] { return dispatch([&](auto s) { return cmd_solve<decltype(s)>(measure_path); }); }; });

  auto* blaschke_cmd = app.add_subcommand("blaschke", "Blaschke sum K # L");
  blaschke_cmd->add_option("--inputs", paths, "Two polytope JSON files")->required();
  blaschke_cmd->callback([&] { action = [&] { return dispatch([&](auto s) { return cmd_blaschke<decltype(s)>(paths); }); }; });

  std::string kpath, lpath;
  int index = 1;
  auto* mb_cmd = app.add_subcommand("mixed-body", "Mixed body [K_1, ..., K_{n-1}] or [K^{n-1-i}, L^i]");
  mb_cmd->add_option("--polytopes", paths, "n-1 polytope JSON files");
  mb_cmd->add_option("--k", kpath, "K for [K^{n-1-i}, L^i]");
  mb_cmd->add_option("--l", lpath, "L for [K^{n-1-i}, L^i]");
  mb_cmd->add_option("--index", index, "i for [K^{n-1-i}, L^i]");
  mb_cmd->callback([&] {
    if (paths.empty() && (kpath.empty() || lpath.empty())) throw CLI::RequiredError("--polytopes or --k/--l");
    action = [&] { return dispatch([&](auto s) { return cmd_mixed_body<decltype(s)>(paths, kpath, lpath, index); }); };
  });

  std::string fpath, gpath, alex_action;
  auto* alex_cmd = app.add_subcommand("alexandrov", "Alexandrov body of a sampled function");
  alex_cmd->require_subcommand(1);
  const std::pair<const char*, const char*> alex_subs[] = {
      {"decompose", "f = P(f) + N(f) with the orthogonality defect"},
      {"volume", "vol(f), the volume of the Alexandrov body"},
      {"polar", "Minimum polar quotient over candidates and the Alexandrov body"},
      {"derivative", "d/dt vol(f + t g) at t = 0, analytic and numeric"}};
  for (const auto& entry : alex_subs) {
    const char* name = entry.first;
    auto* sub = alex_cmd->add_subcommand(name, entry.second);
    sub->add_option("--function", fpath, "SupportSample JSON")->required();
    if (std::string(name) == "polar") sub->add_option("--candidates", paths, "Candidate polytope JSON files");
    if (std::string(name) == "derivative") sub->add_option("--g", gpath, "Direction SupportSample JSON")->required();
    sub->callback([&, name] {
      alex_action = name;
      action = [&] {
        return dispatch([&](auto s) { return cmd_alexandrov<decltype(s)>(alex_action, fpath, gpath, paths); });
      };
    });
  }

  std::string check_name;
  int k_index = 1;
  std::optional<int> random_count;
  auto* verify_cmd = app.add_subcommand("verify", "Evaluate one inequality check, or all of them");
  verify_cmd->add_option("check", check_name, "Check name, or 'all'")->required();
  verify_cmd->add_option("--inputs", paths, "Input JSON files");
  verify_cmd->add_option("--k", k_index, "Index k for the Khovanskii-Teissier type checks");
  verify_cmd->add_option("--random", random_count, "Run N seeded random instances instead of inputs");
  verify_cmd->callback([&] {
    action = [&] {
      const std::string check = normalize(check_name);
      if (check == "all") return run_suite_cli(suite_config(random_count.value_or(g.count)));
      if (random_count) {
        const auto& names = suite_check_names();
        if (std::find(names.begin(), names.end(), check) == names.end())
          throw Error(ErrorCode::SchemaError, "unknown check '" + check_name + "'");
        SuiteConfig c = suite_config(*random_count);
        c.checks = {check};
        int code = 0;
        const SuiteSummary s = run_suite(c, [](const Json& line) { emit(line, true); });
        code = s.exit_code();
        return code;
      }
      return dispatch([&](auto s) {
        const CheckReport r = verify_inputs<decltype(s)>(check, paths, k_index);
        Json line = to_json(r);
        line["inputs"] = paths;
        emit(line, true);
        return r.pass ? 0 : 1;
      });
    };
  });

  long a = 0, b = 0, h = 1;
  bool check_volume = false;
  auto* toric_cmd = app.add_subcommand("toric", "Section counts and volumes on the toric side");
  toric_cmd->require_subcommand(1);
  auto* flop_cmd = toric_cmd->add_subcommand("flop", "h^0 and volume of a xi + b f on the flop example");
  flop_cmd->add_option("--a", a)->required()->check(CLI::NonNegativeNumber);
  flop_cmd->add_option("--b", b)->required()->check(CLI::NonNegativeNumber);
  flop_cmd->add_flag("--check-volume", check_volume, "Compare with the extrapolated section-count asymptotics");
  flop_cmd->callback([&] { action = [&] { return cmd_toric_flop(a, b, check_volume); }; });
  auto* wall_cmd = toric_cmd->add_subcommand("wall", "Finite differences of the flop volume across a = b");
  wall_cmd->add_option("--b", b)->required()->check(CLI::PositiveNumber);
  wall_cmd->add_option("--step", h, "Step h")->check(CLI::PositiveNumber);
  wall_cmd->callback([&] { action = [&] { return cmd_toric_wall(b, h); }; });
  auto* count_cmd = toric_cmd->add_subcommand("count", "Lattice points of a lattice polytope");
  count_cmd->add_option("--polytope", polytope, "Polytope JSON with integer vertices")->required();
  count_cmd->add_flag("--check-volume", check_volume, "Also compare #(mP)/m^n with vol(P)");
  count_cmd->callback([&] { action = [&] { return cmd_toric_count(polytope, check_volume); }; });

  auto* suite_cmd = app.add_subcommand("suite", "Randomized run of every check");
  suite_cmd->callback([&] { action = [&] { return run_suite_cli(suite_config(g.count)); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const SolverError& e) {
    std::cerr << Json{{"error", to_string(e.code())}, {"message", e.what()}, {"diagnostics", to_json(e.diagnostics())}}.dump()
              << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << Json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
    return e.code() == ErrorCode::NoConvergence ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "InternalError"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
}
