#pragma once
// Shared instance builders for the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "d2dcache/model.hpp"
#include "d2dcache/placement.hpp"
#include "d2dcache/rng.hpp"

namespace testutil {

// Economic constants shared by the randomized suites: 0.2 GB files billed
// at 0.01 $/MB, a 300 s delivery budget, and the utility weight calibrated
// so a device holding nothing gets 0.015 $/day of utility headroom.
inline constexpr double kSlope = 0.01;          // dollars per MB
inline constexpr double kFileGb = 0.2;          // GB per file
inline constexpr double kDelayBudget = 300.0;   // seconds
inline constexpr double kGammaShape = 4.43;     // contact-rate shape
inline constexpr double kGammaScale = 1.0 / 1088.0;  // contact-rate scale
inline const double kUtilityWeight = 0.015 / std::log(100.0);  // ~0.0032572

// The two-user instance whose numbers were checked by hand: one contact
// pair at rate 1/300 per second, uniform demand over two 0.2 GB files,
// a 300 s budget, and 1 GB devices.
inline d2dcache::Scenario worked_scenario() {
  d2dcache::Scenario s;
  s.profiles = {{0.0032572, 100.0, 0.0, 1.0}, {0.0032572, 100.0, 0.0, 1.0}};
  s.mobility = d2dcache::MobilityModel(2);
  s.mobility.set_rate(0, 1, 1.0 / 300.0);
  s.demand = d2dcache::DemandModel(2, 2, {0.5, 0.5, 0.5, 0.5});
  s.cost.kind = d2dcache::CostModel::Kind::linear;
  s.cost.slope_dollars_per_mb = kSlope;
  s.cost.file_size_mb = 200.0;
  s.cost.requests_per_user_per_day = 1.0;
  s.file_size_gb = kFileGb;
  s.delay_budget_s = kDelayBudget;
  s.epsilon = 0.01;
  return s;
}

// The placement evaluated by hand for worked_scenario: user 1 caches
// file 0.
inline d2dcache::Placement worked_placement() {
  d2dcache::Placement y(2, 2);
  y.add({1, 0});
  return y;
}

// Hand-checked values for worked_placement on worked_scenario. The second
// user's request for file 0 is served from its own cache; the first user
// reaches the cacher within budget with probability 1 - e^-1; file 1 is
// always cellular. Cost adds the payment for 0.2 GB at 0.0032572/0.8 $/GB.
inline const double kWorkedCellular = 0.25 * std::exp(-1.0) + 0.5;
inline const double kWorkedTotalCost =
    4.0 * kWorkedCellular + 0.0032572 * 0.25;

// Homogeneous benchmark fleet: 1 GB devices, shared Zipf demand, and
// Gamma-distributed contact rates drawn from substream 1 of `seed`.
inline d2dcache::Scenario benchmark_scenario(int n_users, int n_files,
                                             double zipf_gamma,
                                             std::uint64_t seed) {
  d2dcache::Scenario s;
  s.profiles.assign(n_users, {kUtilityWeight, 100.0, 0.0, 1.0});
  s.mobility = d2dcache::sample_gamma_mobility(
      n_users, kGammaShape, kGammaScale, d2dcache::derive_seed(seed, 1));
  s.demand = d2dcache::zipf_demand(n_files, zipf_gamma, n_users);
  s.cost.kind = d2dcache::CostModel::Kind::linear;
  s.cost.slope_dollars_per_mb = kSlope;
  s.cost.file_size_mb = 1000.0 * kFileGb;
  s.cost.requests_per_user_per_day = 1.0;
  s.file_size_gb = kFileGb;
  s.delay_budget_s = kDelayBudget;
  s.epsilon = 0.01;
  return s;
}

// Heterogeneous random instance: utility weights, storage costs, device
// capacities, and the Zipf exponent all vary, so quotas range from 0 to 6.
inline d2dcache::Scenario random_scenario(int n_users, int n_files,
                                          std::uint64_t seed) {
  std::mt19937_64 rng = d2dcache::make_engine(seed);
  std::uniform_real_distribution<double> a_dist(0.002, 0.008);
  std::uniform_real_distribution<double> rho_dist(0.0, 0.003);
  std::uniform_real_distribution<double> c_dist(0.15, 1.25);
  std::uniform_real_distribution<double> zipf_dist(0.3, 1.2);

  d2dcache::Scenario s;
  s.profiles.resize(n_users);
  for (d2dcache::UserProfile& p : s.profiles)
    p = {a_dist(rng), 100.0, rho_dist(rng), c_dist(rng)};
  s.mobility = d2dcache::sample_gamma_mobility(
      n_users, kGammaShape, kGammaScale, d2dcache::derive_seed(seed, 1));
  s.demand = d2dcache::zipf_demand(n_files, zipf_dist(rng), n_users);
  s.cost.kind = d2dcache::CostModel::Kind::linear;
  s.cost.slope_dollars_per_mb = kSlope;
  s.cost.file_size_mb = 1000.0 * kFileGb;
  s.cost.requests_per_user_per_day = 1.0;
  s.file_size_gb = kFileGb;
  s.delay_budget_s = kDelayBudget;
  s.epsilon = 0.01;
  return s;
}

// Uniform random subset of the ground set: each element kept with
// probability `keep`.
inline d2dcache::Placement random_subset(int n_users, int n_files,
                                         double keep, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  d2dcache::Placement y(n_users, n_files);
  for (int u = 0; u < n_users; ++u)
    for (int f = 0; f < n_files; ++f)
      if (unit(rng) < keep) y.add({u, f});
  return y;
}

}  // namespace testutil
