// Command-line front end: solve | oracle | sweep | estimate | validate-sim.
// Exit codes: 0 success, 1 runtime failure, 2 usage or config error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "d2dcache/baselines.hpp"
#include "d2dcache/model.hpp"
#include "d2dcache/objective.hpp"
#include "d2dcache/scenario_io.hpp"
#include "d2dcache/sim.hpp"
#include "d2dcache/solver.hpp"

namespace {

using d2dcache::ValidationError;
using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("cannot write output file: " + path);
}

std::string placement_path_for(const std::string& out_path,
                               const std::string& override_path) {
  return override_path.empty() ? out_path + ".placement.json" : override_path;
}

int run_placement_report(const d2dcache::Scenario& scenario,
                         const d2dcache::SolverReport& report,
                         const std::string& out_path,
                         const std::string& placement_out) {
  write_text_file(out_path,
                  d2dcache::report_to_json(report, scenario).dump(2) + "\n");
  write_text_file(placement_path_for(out_path, placement_out),
                  d2dcache::placement_to_json(report.solution).dump() + "\n");
  std::printf("normalized_cost %.6f\n", report.total_cost / scenario.q1());
  return 0;
}

struct SweepArgs {
  std::string config_path;
  std::string out_path;
  std::string axis;
  std::vector<double> values;
  std::vector<std::string> strategies;
  int replications = 20;
  std::uint64_t seed = 1;
};

json scenario_config_for(const json& base, const std::string& axis,
                         double value) {
  json cfg = base;
  if (axis == "n_users") {
    const double rounded = std::round(value);
    if (!(value >= 1) || rounded != value)
      throw ValidationError("values", "n_users values must be integers >= 1");
    if (!cfg.contains("users") || !cfg["users"].is_array() ||
        cfg["users"].empty())
      throw ValidationError("users", "must be a non-empty array");
    const json prototype = cfg["users"][0];
    json users = json::array();
    for (long k = 0; k < static_cast<long>(rounded); ++k)
      users.push_back(prototype);
    cfg["users"] = std::move(users);
    if (!cfg.contains("mobility") || !cfg["mobility"].is_object() ||
        !cfg["mobility"].contains("gamma"))
      throw ValidationError(
          "mobility", "sweeping n_users needs the \"gamma\" generator form");
    if (!cfg.contains("demand") || !cfg["demand"].is_object() ||
        !cfg["demand"].contains("zipf"))
      throw ValidationError("demand",
                            "sweeping n_users needs the \"zipf\" form");
  } else if (axis == "gamma_r") {
    if (!cfg.contains("demand") || !cfg["demand"].is_object() ||
        !cfg["demand"].contains("zipf"))
      throw ValidationError("demand",
                            "sweeping gamma_r needs the \"zipf\" form");
    cfg["demand"]["zipf"]["gamma"] = value;
  } else if (axis == "td") {
    if (!cfg.contains("sim") || !cfg["sim"].is_object())
      throw ValidationError("sim", "missing");
    cfg["sim"]["td_seconds"] = value;
  } else {
    throw ValidationError("axis", "must be one of n_users, gamma_r, td");
  }
  return cfg;
}

int run_sweep(const SweepArgs& args) {
  const std::set<std::string> known = {"local_search", "oracle", "popular",
                                       "random"};
  std::vector<std::string> strategies = args.strategies;
  std::sort(strategies.begin(), strategies.end());
  strategies.erase(std::unique(strategies.begin(), strategies.end()),
                   strategies.end());
  for (const std::string& s : strategies)
    if (!known.count(s))
      throw ValidationError("strategies", "unknown strategy \"" + s + "\"");
  if (strategies.empty())
    throw ValidationError("strategies", "need at least one strategy");
  if (args.values.empty())
    throw ValidationError("values", "need at least one value");
  if (args.replications < 1)
    throw ValidationError("replications", "must be at least 1");

  const json base = d2dcache::read_json_file(args.config_path);
  std::vector<double> values = args.values;
  std::sort(values.begin(), values.end());

  std::ostringstream csv;
  csv << "axis_value,strategy,normalized_cost,seed\n";
  for (const double value : values) {
    const d2dcache::Scenario scenario = d2dcache::load_scenario_json(
        scenario_config_for(base, args.axis, value), args.seed);
    const double q1 = scenario.q1();
    for (const std::string& strategy : strategies) {
      double cost = 0.0;
      if (strategy == "local_search") {
        cost = d2dcache::local_search(scenario).total_cost;
      } else if (strategy == "oracle") {
        const long ground =
            static_cast<long>(scenario.n_users()) * scenario.n_files();
        if (ground > d2dcache::kDefaultOracleBound) {
          std::fprintf(stderr,
                       "warning: skipping oracle at %s=%s: ground set %ld "
                       "exceeds %ld\n",
                       args.axis.c_str(), format_number(value).c_str(),
                       ground, d2dcache::kDefaultOracleBound);
          continue;
        }
        cost = d2dcache::exhaustive_oracle(scenario).total_cost;
      } else if (strategy == "popular") {
        cost = d2dcache::line_search_uniform(scenario,
                                             d2dcache::BaselineStrategy::popular,
                                             1, args.seed)
                   .expected_cost;
      } else {
        cost = d2dcache::line_search_uniform(scenario,
                                             d2dcache::BaselineStrategy::random,
                                             args.replications, args.seed)
                   .expected_cost;
      }
      csv << format_number(value) << ',' << strategy << ','
          << format_number(cost / q1) << ',' << args.seed << '\n';
    }
  }
  write_text_file(args.out_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incentive-aware device caching planner"};
  app.require_subcommand(1);

  std::string config_path, out_path, placement_out, placement_path, trace_path;
  std::uint64_t seed = 1;
  long max_ground = d2dcache::kDefaultOracleBound;
  long replications = 0;
  bool best_improvement = false;
  double window_start = 0.0, window_end = 0.0;
  SweepArgs sweep_args;

  CLI::App* solve = app.add_subcommand(
      "solve", "compute a placement by two-pass local search");
  solve->add_option("--config", config_path, "scenario JSON")->required();
  solve->add_option("--out", out_path, "report JSON path")->required();
  solve->add_option("--placement-out", placement_out,
                    "placement JSON path (default: <out>.placement.json)");
  solve->add_option("--seed", seed, "seed for generated scenario parts");
  solve->add_flag("--best-improvement", best_improvement,
                  "take the best move per phase instead of the first");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "exact minimizer by exhaustive enumeration");
  oracle->add_option("--config", config_path, "scenario JSON")->required();
  oracle->add_option("--out", out_path, "report JSON path")->required();
  oracle->add_option("--placement-out", placement_out,
                     "placement JSON path (default: <out>.placement.json)");
  oracle->add_option("--seed", seed, "seed for generated scenario parts");
  oracle->add_option("--max-ground", max_ground,
                     "refuse ground sets larger than this");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "cost curves over an axis, one CSV row per strategy");
  sweep->add_option("--config", sweep_args.config_path, "scenario JSON")
      ->required();
  sweep->add_option("--out", sweep_args.out_path, "CSV path")->required();
  sweep->add_option("--axis", sweep_args.axis, "n_users | gamma_r | td")
      ->required();
  sweep->add_option("--values", sweep_args.values, "axis values")
      ->required()
      ->delimiter(',');
  sweep
      ->add_option("--strategies", sweep_args.strategies,
                   "local_search | oracle | popular | random")
      ->required()
      ->delimiter(',');
  sweep->add_option("--replications", sweep_args.replications,
                    "draws per m for the random strategy");
  sweep->add_option("--seed", sweep_args.seed, "master seed");

  CLI::App* estimate = app.add_subcommand(
      "estimate", "contact rates from a trace CSV (header i,j,t)");
  estimate->add_option("trace", trace_path, "trace CSV path")->required();
  estimate->add_option("--window-start", window_start, "window start, seconds")
      ->required();
  estimate->add_option("--window-end", window_end, "window end, seconds")
      ->required();
  estimate->add_option("--out", out_path, "mobility JSON path")->required();

  CLI::App* validate_sim = app.add_subcommand(
      "validate-sim", "compare analytic and simulated cellular fractions");
  validate_sim->add_option("--config", config_path, "scenario JSON")
      ->required();
  validate_sim->add_option("placement", placement_path, "placement JSON path")
      ->required();
  validate_sim->add_option("--replications", replications,
                           "simulated requests (default 100000)");
  validate_sim->add_option("--seed", seed, "simulation seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      const d2dcache::Scenario scenario =
          d2dcache::load_scenario_file(config_path, seed);
      d2dcache::LocalSearchOptions options;
      options.best_improvement = best_improvement;
      return run_placement_report(scenario,
                                  d2dcache::local_search(scenario, options),
                                  out_path, placement_out);
    }
    if (oracle->parsed()) {
      const d2dcache::Scenario scenario =
          d2dcache::load_scenario_file(config_path, seed);
      return run_placement_report(
          scenario, d2dcache::exhaustive_oracle(scenario, max_ground),
          out_path, placement_out);
    }
    if (sweep->parsed()) return run_sweep(sweep_args);
    if (estimate->parsed()) {
      const d2dcache::ContactTrace trace =
          d2dcache::load_trace_csv(trace_path, window_start, window_end);
      const d2dcache::MobilityModel model = d2dcache::estimate_rates(trace);
      write_text_file(out_path,
                      d2dcache::mobility_to_json(model).dump(2) + "\n");
      std::printf("users %d\nevents %zu\n", model.n_users(),
                  trace.events().size());
      return 0;
    }
    if (validate_sim->parsed()) {
      const d2dcache::Scenario scenario =
          d2dcache::load_scenario_file(config_path, seed);
      const d2dcache::Placement placement = d2dcache::load_placement_file(
          placement_path, scenario.n_users(), scenario.n_files());
      const long requests = replications > 0 ? replications : 100000;
      const double analytic = d2dcache::cellular_fraction(
          placement, scenario.mobility, scenario.demand,
          scenario.delay_budget_s);
      const d2dcache::OffloadEstimate estimate_result =
          d2dcache::simulate_offload(placement, scenario, requests, seed);
      const bool pass =
          std::abs(estimate_result.cellular_fraction - analytic) <=
          3.0 * estimate_result.standard_error + 1e-12;
      std::printf("analytic_pc %.6f\n", analytic);
      std::printf("simulated_pc %.6f\n", estimate_result.cellular_fraction);
      std::printf("standard_error %.6f\n", estimate_result.standard_error);
      std::printf("result %s\n", pass ? "PASS" : "FAIL");
      return pass ? 0 : 1;
    }
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
