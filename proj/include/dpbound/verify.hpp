#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace dpbound::verify {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  /// threshold - value for "value <= threshold" checks; positive means slack.
  double margin = 0.0;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

struct Options {
  std::uint64_t seed = 0xD121C4;
  /// Monte Carlo sample count; each suite has its own default.
  std::optional<int> samples;
  /// Overrides the suite's main tolerance (gap for duality, relative slack for
  /// superadd, number of standard errors for moments and mc-bound, relative
  /// band for ldp).
  std::optional<double> tol;
};

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs one of "moments", "superadd", "duality", "mc-bound", "ldp". Throws
/// std::invalid_argument for any other name.
Report run_suite(const std::string& name, const Options& opts);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic critical value of the two-sample KS statistic at level 1%.
double ks_critical_1pct(std::size_t n, std::size_t m);

}  // namespace dpbound::verify
