#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "d2dcache/model.hpp"
#include "d2dcache/placement.hpp"
#include "d2dcache/solver.hpp"

namespace d2dcache {

// Scenario JSON schema (all keys checked strictly; unknown keys are
// rejected at every level):
//   users    : [{"a": .., "b": .., "rho": .., "c": ..}, ...]
//   mobility : {"pairs": [[i, j, rate], ...]}           explicit rates, or
//              {"gamma": {"shape": .., "scale": ..}}    sampled with `seed`
//   demand   : {"zipf": {"gamma": .., "n_files": ..}}   shared Zipf, or
//              {"matrix": [[..], ...]}                  explicit rows
//   cost     : {"linear": {"slope_dollars_per_mb": ..}} or
//              {"piecewise": {"points": [[x, y], ...]}},
//              plus optional "requests_per_user_per_day" (default 1)
//   sim      : {"td_seconds": .., "file_size_gb": ..}
//   solver   : {"epsilon": ..}                          optional
Scenario load_scenario_json(const nlohmann::json& config, std::uint64_t seed);
Scenario load_scenario_file(const std::string& path, std::uint64_t seed);

// Parses a JSON file; parse and I/O failures surface as ValidationError.
nlohmann::json read_json_file(const std::string& path);

// Canonical serialization: mobility as explicit nonzero pairs, demand as an
// explicit matrix.
nlohmann::json scenario_to_json(const Scenario& scenario);

// Placements serialize as a lexicographically sorted array of
// [user, file] pairs, 0-based.
nlohmann::json placement_to_json(const Placement& y);
Placement placement_from_json(const nlohmann::json& j, int n_users,
                              int n_files);
Placement load_placement_file(const std::string& path, int n_users,
                              int n_files);

// {"pairs": [[i, j, rate], ...]} with only nonzero rates, usable as the
// mobility entry of a scenario.
nlohmann::json mobility_to_json(const MobilityModel& mobility);

nlohmann::json report_to_json(const SolverReport& report,
                              const Scenario& scenario);

}  // namespace d2dcache
