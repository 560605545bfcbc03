#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d2dcache/model.hpp"
#include "d2dcache/placement.hpp"
#include "d2dcache/solver.hpp"

namespace d2dcache {

enum class BaselineStrategy { popular, random };

// Largest n_users * n_files the exhaustive search accepts by default.
inline constexpr long kDefaultOracleBound = 20;

// Every user caches the m files with the highest aggregate popularity
// (sum of p(i, f) over users), ties broken toward the lower file index.
// Throws when m files do not fit within some user's quota.
Placement popular_placement(const Scenario& scenario, int files_per_user);

// Every user independently draws m distinct files by sequential
// proportional sampling without replacement, weights p(i, f). Should a
// user's remaining weight be exhausted, the rest are drawn uniformly.
// Deterministic given the seed. Throws when m violates a quota.
Placement random_placement(const Scenario& scenario, int files_per_user,
                           std::uint64_t seed);

struct LineSearchPoint {
  int m = 0;
  double expected_cost = 0.0;
};

struct LineSearchResult {
  int best_m = 0;
  double expected_cost = 0.0;
  std::vector<LineSearchPoint> table;  // every feasible m, ascending
};

// Evaluates the strategy's total cost at every quota-feasible uniform
// files-per-user count m in {0, ..., n_files} and keeps the cheapest (ties
// toward smaller m). The random strategy is scored by its mean cost over
// `replications` seeded draws; replication r uses substream r of `seed`
// for every m, so the search compares m values on common draws.
LineSearchResult line_search_uniform(const Scenario& scenario,
                                     BaselineStrategy strategy,
                                     int replications, std::uint64_t seed);

// CSV rendering of a line-search table:
// strategy,m,expected_cost,normalized_cost
std::string line_search_csv(const Scenario& scenario,
                            const LineSearchResult& result,
                            BaselineStrategy strategy);

// Exact minimizer of total_cost over all quota-feasible placements by
// depth-first enumeration of per-user file combinations. Refuses ground
// sets larger than max_ground. Ties keep the first minimizer in
// enumeration order. The report carries the number of sets enumerated.
SolverReport exhaustive_oracle(const Scenario& scenario,
                               long max_ground = kDefaultOracleBound);

const char* to_string(BaselineStrategy strategy);

}  // namespace d2dcache
