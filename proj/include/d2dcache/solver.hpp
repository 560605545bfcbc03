#pragma once

#include <string>
#include <vector>

#include "d2dcache/model.hpp"
#include "d2dcache/objective.hpp"
#include "d2dcache/placement.hpp"

namespace d2dcache {

struct MoveCounts {
  long adds = 0;
  long deletes = 0;
  long swaps = 0;
  long total() const { return adds + deletes + swaps; }
};

struct SolverReport {
  Placement solution;
  double g = 0.0;
  double total_cost = 0.0;
  double theta = 0.0;
  double threshold_factor = 0.0;
  std::vector<double> pass_g;  // g of each restricted run, in order
  MoveCounts iterations;       // accepted moves, summed over runs
  long sets_enumerated = 0;    // exhaustive search only
  std::string method;
};

struct LocalSearchOptions {
  // Default scans take the first improving move in lexicographic order;
  // with best_improvement each phase applies its largest improvement
  // instead (ties resolved by scan order).
  bool best_improvement = false;
};

// One local-search run restricted to the ground elements in `ground`.
// Starts from the best feasible singleton (ties to the lowest (user, file)
// index), then repeatedly tries one add, one delete, and one swap per
// sweep, accepting a move only when it improves g by the relative factor
// 1 + epsilon / (n_users^4 * n_files^4). Returns a quota-feasible local
// optimum; an empty ground set or all-zero quotas give the empty placement.
Placement local_search_procedure(const std::vector<Element>& ground,
                                 const PartitionMatroid& matroid,
                                 const Scenario& scenario, double epsilon,
                                 MoveCounts* counts = nullptr,
                                 const LocalSearchOptions& options = {});

// Full solver: one run on the whole ground set, a second on the
// complement of the first solution, keeping whichever scores higher
// (ties to the first). The winner's surplus is within a 1 / (4 + epsilon)
// factor of the best quota-feasible placement.
SolverReport local_search(const Scenario& scenario,
                          const LocalSearchOptions& options = {});

}  // namespace d2dcache
