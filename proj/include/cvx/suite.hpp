#ifndef CVX_SUITE_HPP
#define CVX_SUITE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "cvx/io.hpp"
#include "cvx/random.hpp"

namespace cvx {

enum class Mode { Exact, Float };

struct SuiteConfig {
  std::uint64_t seed = 1;
  /// Instances per check unless overridden in `counts`.
  int count = 50;
  std::map<std::string, int> counts;
  int min_dim = 2;
  int max_dim = 3;
  Mode mode = Mode::Float;
  SolverOptions solver;
  /// Subset of suite_check_names() to run; empty runs everything.
  std::vector<std::string> checks;
};

struct CheckSummary {
  int pass = 0;
  int fail = 0;
  int equality = 0;
  int errors = 0;
  int no_convergence = 0;
  /// Smallest slack / max(1, |lhs|, |rhs|) seen.
  double worst_relative_slack = std::numeric_limits<double>::infinity();

  int total() const { return pass + fail; }
};

struct SolverAggregate {
  int runs = 0;
  int max_iterations = 0;
  double worst_area_error = 0.0;
};

struct SuiteSummary {
  std::map<std::string, CheckSummary> checks;
  SolverAggregate solver;
  int reports = 0;

  bool all_pass() const;
  /// 0 all pass, 1 any failure, 3 any solver non-convergence.
  int exit_code() const;
};

/// Every check the suite knows, in execution order.
const std::vector<std::string>& suite_check_names();

/// Dimension used for instance i of a check under the configured range.
int suite_dimension(const std::string& check, int instance, const SuiteConfig& config);

/// One seeded instance, evaluated. Errors propagate.
CheckReport run_suite_instance(const std::string& check, int instance, const SuiteConfig& config);

/// Runs every configured instance. Each report (or error) is passed to `sink`
/// as one JSON object, in a fixed order.
SuiteSummary run_suite(const SuiteConfig& config, const std::function<void(const Json&)>& sink = {});

Json to_json(const SuiteSummary& s);

}  // namespace cvx

#endif
