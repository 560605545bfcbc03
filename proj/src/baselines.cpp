#include "d2dcache/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "d2dcache/objective.hpp"
#include "d2dcache/rng.hpp"

namespace d2dcache {

namespace {

void check_files_per_user(const Scenario& scenario, int m) {
  if (m < 0 || m > scenario.n_files())
    throw std::invalid_argument("files per user out of range");
  const PartitionMatroid matroid = matroid_for(scenario);
  for (int u = 0; u < scenario.n_users(); ++u)
    if (m > matroid.quota(u))
      throw std::domain_error(
          "infeasible files per user: " + std::to_string(m) +
          " whole files leave user " + std::to_string(u) +
          " no usable storage");
}

std::vector<int> popularity_ranking(const Scenario& scenario) {
  const int nf = scenario.n_files();
  std::vector<double> aggregate(nf, 0.0);
  for (int u = 0; u < scenario.n_users(); ++u)
    for (int f = 0; f < nf; ++f) aggregate[f] += scenario.demand.p(u, f);
  std::vector<int> order(nf);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (aggregate[a] != aggregate[b]) return aggregate[a] > aggregate[b];
    return a < b;
  });
  return order;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

const char* to_string(BaselineStrategy strategy) {
  return strategy == BaselineStrategy::popular ? "popular" : "random";
}

Placement popular_placement(const Scenario& scenario, int files_per_user) {
  check_files_per_user(scenario, files_per_user);
  const std::vector<int> ranking = popularity_ranking(scenario);
  Placement y(scenario.n_users(), scenario.n_files());
  for (int u = 0; u < scenario.n_users(); ++u)
    for (int k = 0; k < files_per_user; ++k) y.add({u, ranking[k]});
  return y;
}

Placement random_placement(const Scenario& scenario, int files_per_user,
                           std::uint64_t seed) {
  check_files_per_user(scenario, files_per_user);
  const int nu = scenario.n_users();
  const int nf = scenario.n_files();
  Placement y(nu, nf);
  std::mt19937_64 engine = make_engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> weight(nf);
  for (int u = 0; u < nu; ++u) {
    for (int f = 0; f < nf; ++f) weight[f] = scenario.demand.p(u, f);
    for (int draw = 0; draw < files_per_user; ++draw) {
      double total = 0.0;
      for (int f = 0; f < nf; ++f)
        if (weight[f] >= 0.0) total += weight[f];
      int picked = -1;
      if (total > 0.0) {
        const double x = unit(engine) * total;
        double cum = 0.0;
        for (int f = 0; f < nf; ++f) {
          if (weight[f] < 0.0) continue;
          cum += weight[f];
          picked = f;  // keeps the last eligible file if x lands on total
          if (x < cum) break;
        }
      } else {
        // Remaining demand mass is zero: fall back to a uniform draw over
        // the files not yet chosen.
        int remaining = 0;
        for (int f = 0; f < nf; ++f)
          if (weight[f] >= 0.0) ++remaining;
        std::uniform_int_distribution<int> pick(0, remaining - 1);
        int skip = pick(engine);
        for (int f = 0; f < nf; ++f) {
          if (weight[f] < 0.0) continue;
          if (skip-- == 0) {
            picked = f;
            break;
          }
        }
      }
      y.add({u, picked});
      weight[picked] = -1.0;  // drawn without replacement
    }
  }
  return y;
}

LineSearchResult line_search_uniform(const Scenario& scenario,
                                     BaselineStrategy strategy,
                                     int replications, std::uint64_t seed) {
  if (replications < 1)
    throw std::invalid_argument("need at least one replication");
  const PartitionMatroid matroid = matroid_for(scenario);
  int max_m = scenario.n_files();
  for (int u = 0; u < scenario.n_users(); ++u)
    max_m = std::min(max_m, matroid.quota(u));

  LineSearchResult result;
  double best = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= max_m; ++m) {
    double cost;
    if (strategy == BaselineStrategy::popular) {
      cost = total_cost(popular_placement(scenario, m), scenario);
    } else {
      // Replication r reuses substream r for every m, so the search
      // compares m values on common draws.
      double sum = 0.0;
      for (int r = 0; r < replications; ++r)
        sum += total_cost(random_placement(scenario, m, derive_seed(seed, r)),
                          scenario);
      cost = sum / replications;
    }
    result.table.push_back({m, cost});
    if (cost < best) {  // strict: ties keep the smaller m
      best = cost;
      result.best_m = m;
      result.expected_cost = cost;
    }
  }
  return result;
}

std::string line_search_csv(const Scenario& scenario,
                            const LineSearchResult& result,
                            BaselineStrategy strategy) {
  std::ostringstream os;
  os << "strategy,m,expected_cost,normalized_cost\n";
  const double q1 = scenario.q1();
  for (const LineSearchPoint& row : result.table)
    os << to_string(strategy) << ',' << row.m << ','
       << format_number(row.expected_cost) << ','
       << format_number(row.expected_cost / q1) << '\n';
  return os.str();
}

SolverReport exhaustive_oracle(const Scenario& scenario, long max_ground) {
  validate(scenario);
  const int nu = scenario.n_users();
  const int nf = scenario.n_files();
  const long ground = static_cast<long>(nu) * nf;
  if (ground > max_ground)
    throw std::domain_error("ground set has " + std::to_string(ground) +
                            " elements; exhaustive search refuses above " +
                            std::to_string(max_ground));

  const PartitionMatroid matroid = matroid_for(scenario);
  Placement current(nu, nf);
  Placement best(nu, nf);
  double best_cost = std::numeric_limits<double>::infinity();
  long enumerated = 0;

  const auto visit = [&](const auto& self, int user, int file,
                         int used) -> void {
    if (user == nu) {
      ++enumerated;
      const double cost = total_cost(current, scenario);
      if (cost < best_cost) {  // strict: ties keep the first enumerated
        best_cost = cost;
        best = current;
      }
      return;
    }
    if (file == nf) {
      self(self, user + 1, 0, 0);
      return;
    }
    self(self, user, file + 1, used);  // skip this file first
    if (used < matroid.quota(user)) {
      current.add({user, file});
      self(self, user, file + 1, used + 1);
      current.remove({user, file});
    }
  };
  visit(visit, 0, 0, 0);

  SolverReport report;
  report.solution = best;
  report.total_cost = best_cost;
  report.g = g_value(best, scenario);
  report.theta = theta(scenario);
  report.sets_enumerated = enumerated;
  report.method = "exhaustive";
  return report;
}

}  // namespace d2dcache
