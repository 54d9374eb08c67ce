// Command-line front end: bounds, tail probabilities, confidence regions,
// verification suites and semi-bandit experiments.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpbound/bandit.hpp"
#include "dpbound/cgfbound.hpp"
#include "dpbound/io.hpp"
#include "dpbound/kinf.hpp"
#include "dpbound/sums.hpp"
#include "dpbound/verify.hpp"

namespace {

using nlohmann::json;
using namespace dpbound;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;

struct RunConfig {
  std::uint64_t seed = 0xD121C4;
  std::optional<int> samples;
  std::string format = "json";
  int precision = 9;
  std::optional<double> tol;
};

std::string fmt_number(double x, int precision) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

// Rounded to the requested significant digits; non-finite values become null.
json num(double x, int precision) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(fmt_number(x, precision));
}

void emit(const RunConfig& cfg, const std::vector<std::pair<std::string, double>>& scalars,
          json object) {
  if (cfg.format == "csv") {
    std::string header, row;
    for (std::size_t i = 0; i < scalars.size(); ++i) {
      header += (i ? "," : "") + scalars[i].first;
      row += (i ? "," : "") + fmt_number(scalars[i].second, cfg.precision);
    }
    std::cout << header << "\n" << row << "\n";
    return;
  }
  for (const auto& [k, v] : scalars) object[k] = num(v, cfg.precision);
  std::cout << object.dump(2) << "\n";
}

int cmd_kinf(const RunConfig& cfg, const std::string& path, double u) {
  auto base = io::measure_from_json(io::load_json_file(path));
  auto r = kinf(base, u);
  emit(cfg, {{"value", r.value}, {"lambda_star", r.lambda_star}, {"diagnostic", r.diagnostic}},
       {{"at_boundary", r.at_boundary}});
  return kExitOk;
}

int cmd_bound(const RunConfig& cfg, const std::string& path, double alpha) {
  auto base = io::measure_from_json(io::load_json_file(path));
  auto r = cgf_bound(DPSpec(alpha, base));
  emit(cfg,
       {{"value", r.value},
        {"c_star", r.c_star},
        {"boundary_mass", r.boundary_mass},
        {"divergence", r.divergence}},
       {{"witness", io::measure_to_json(r.witness)}});
  return kExitOk;
}

int cmd_tail(const RunConfig& cfg, const std::string& path, double alpha, double u) {
  auto base = io::measure_from_json(io::load_json_file(path));
  DPSpec dp(alpha, base);
  auto k = kinf(base, u);
  emit(cfg, {{"bound", tail_bound_single(dp, u)}, {"kinf", k.value}, {"lambda_star", k.lambda_star}},
       json::object());
  return kExitOk;
}

int cmd_region(const RunConfig& cfg, const std::string& path, double delta) {
  auto spec = io::sumspec_from_json(io::load_json_file(path));
  auto r = region_radius(spec, delta);
  json witnesses = json::array();
  double budget_used = 0.0;
  for (std::size_t j = 0; j < r.witnesses.size(); ++j) {
    witnesses.push_back(io::measure_to_json(r.witnesses[j]));
    budget_used += spec.components[j].alpha * kl_discrete(spec.components[j].base, r.witnesses[j]);
  }
  emit(cfg, {{"radius", r.radius}, {"lambda_star", r.lambda_star}, {"budget_used", budget_used}},
       {{"trivial", r.trivial}, {"witnesses", witnesses}});
  return kExitOk;
}

int cmd_sumtail(const RunConfig& cfg, const std::string& path, double u) {
  auto spec = io::sumspec_from_json(io::load_json_file(path));
  const double bound = sum_tail_bound(spec, u);
  json split = nullptr;
  if (u >= spec.sum_means() && u <= spec.sum_vmax()) {
    split = json::array();
    for (double x : optimal_split(spec, u)) split.push_back(num(x, cfg.precision));
  }
  emit(cfg, {{"bound", bound}}, {{"split", split}});
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  verify::Options opts;
  opts.seed = cfg.seed;
  opts.samples = cfg.samples;
  opts.tol = cfg.tol;
  auto report = verify::run_suite(suite, opts);
  if (cfg.format == "csv") {
    std::cout << "name,passed,value,threshold,margin\n";
    for (const auto& c : report.checks) {
      std::cout << c.name << "," << (c.passed ? 1 : 0) << "," << fmt_number(c.value, cfg.precision)
                << "," << fmt_number(c.threshold, cfg.precision) << ","
                << fmt_number(c.margin, cfg.precision) << "\n";
    }
  } else {
    std::cout << report.to_json().dump(2) << "\n";
  }
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

void write_trace(std::ostream& out, const std::vector<bandit::RegretTrace>& traces, int precision) {
  out << "rep,t,action,cum_regret\n";
  for (std::size_t r = 0; r < traces.size(); ++r) {
    const auto& tr = traces[r];
    for (std::size_t t = 0; t < tr.actions.size(); ++t) {
      out << r << "," << (t + 1) << "," << tr.actions[t] << ","
          << fmt_number(tr.cum_regret[t], precision) << "\n";
    }
  }
}

int cmd_bandit(const RunConfig& cfg, const std::string& path, const std::string& policy_name,
               long horizon, int reps, const std::string& trace_path) {
  auto inst = io::instance_from_json(io::load_json_file(path));
  auto policy = bandit::parse_policy(policy_name);
  auto traces = bandit::run_experiment(inst, policy, horizon, reps, cfg.seed);

  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw io::InputError("cannot write trace to '" + trace_path + "'");
    write_trace(out, traces, cfg.precision);
  }
  if (cfg.format == "csv") {
    write_trace(std::cout, traces, cfg.precision);
    return kExitOk;
  }

  double mean_rt = 0.0;
  for (const auto& tr : traces) mean_rt += tr.cum_regret.back();
  mean_rt /= static_cast<double>(traces.size());
  const double log_t = std::log(static_cast<double>(horizon));
  json summary = {{"policy", std::string(bandit::policy_name(policy))},
                  {"horizon", horizon},
                  {"reps", reps},
                  {"seed", cfg.seed}};
  summary["mean_RT"] = num(mean_rt, cfg.precision);
  summary["RT_over_logT"] = log_t > 0.0 ? num(mean_rt / log_t, cfg.precision) : json(nullptr);
  try {
    const double c = bandit::lower_bound_constant(inst);
    summary["lower_bound_constant"] = num(c, cfg.precision);
    summary["ratio"] = log_t > 0.0 ? num(mean_rt / log_t / c, cfg.precision) : json(nullptr);
  } catch (const std::invalid_argument&) {
    summary["lower_bound_constant"] = nullptr;
    summary["ratio"] = nullptr;
  }
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet-process concentration bounds and semi-bandit experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Monte Carlo sample count for verify suites");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--precision", cfg.precision, "Significant digits in printed numbers")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "Override the verify suite tolerance")
      ->check(CLI::PositiveNumber);

  std::string path, policy, suite, trace_path;
  double u = 0.0, alpha = 1.0, delta = 0.05;
  long horizon = 10000;
  int reps = 1;

  auto* kinf_cmd = app.add_subcommand("kinf", "Kinf(base, u) and its dual multiplier");
  kinf_cmd->add_option("measure", path, "Measure JSON file")->required();
  kinf_cmd->add_option("u", u, "Threshold")->required();

  auto* bound_cmd = app.add_subcommand("bound", "CGF bound for DP(alpha base)");
  bound_cmd->add_option("measure", path, "Measure JSON file")->required();
  bound_cmd->add_option("alpha", alpha, "Concentration")->required();

  auto* tail_cmd = app.add_subcommand("tail", "Chernoff bound on P(E_X[f] >= u)");
  tail_cmd->add_option("measure", path, "Measure JSON file")->required();
  tail_cmd->add_option("alpha", alpha, "Concentration")->required();
  tail_cmd->add_option("u", u, "Threshold")->required();

  auto* region_cmd = app.add_subcommand("region", "Confidence radius for a sum of independent DPs");
  region_cmd->add_option("spec", path, "Sum specification JSON file")->required();
  region_cmd->add_option("delta", delta, "Confidence level in (0,1)")->required();

  auto* sumtail_cmd = app.add_subcommand("sumtail", "Tail bound for a sum of independent DPs");
  sumtail_cmd->add_option("spec", path, "Sum specification JSON file")->required();
  sumtail_cmd->add_option("u", u, "Threshold")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", suite, "moments|superadd|duality|mc-bound|ldp")->required();

  auto* bandit_cmd = app.add_subcommand("bandit", "Run a semi-bandit experiment");
  bandit_cmd->add_option("instance", path, "Instance JSON file")->required();
  bandit_cmd->add_option("policy", policy, "cts|cucb|escb|oracle|worst")->required();
  bandit_cmd->add_option("-T,--horizon", horizon, "Rounds per run")->capture_default_str();
  bandit_cmd->add_option("--reps", reps, "Independent runs")->capture_default_str();
  bandit_cmd->add_option("--trace", trace_path, "Write the per-round trace CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*kinf_cmd) return cmd_kinf(cfg, path, u);
    if (*bound_cmd) return cmd_bound(cfg, path, alpha);
    if (*tail_cmd) return cmd_tail(cfg, path, alpha, u);
    if (*region_cmd) return cmd_region(cfg, path, delta);
    if (*sumtail_cmd) return cmd_sumtail(cfg, path, u);
    if (*verify_cmd) return cmd_verify(cfg, suite);
    if (*bandit_cmd) return cmd_bandit(cfg, path, policy, horizon, reps, trace_path);
  } catch (const io::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
