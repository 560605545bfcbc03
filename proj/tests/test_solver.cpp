#include <cmath>
#include <vector>

#include <doctest.h>

#include "d2dcache/baselines.hpp"
#include "d2dcache/objective.hpp"
#include "d2dcache/solver.hpp"
#include "test_util.hpp"

using d2dcache::Element;
using d2dcache::Placement;

namespace {

// Verifies that no single add, delete, or swap within `ground` improves g
// by the acceptance factor — the contract of a finished local search.
void check_locally_optimal(const Placement& y,
                           const std::vector<Element>& ground,
                           const d2dcache::PartitionMatroid& matroid,
                           const d2dcache::Scenario& scenario) {
  const double nu = scenario.n_users();
  const double nf = scenario.n_files();
  const double threshold =
      1.0 + scenario.epsilon / (std::pow(nu, 4) * std::pow(nf, 4));
  const double g_y = d2dcache::g_value(y, scenario);
  const double limit = threshold * g_y * (1.0 + 1e-12);

  for (const Element& e : ground) {
    if (y.contains(e)) continue;
    if (matroid.can_add(y, e)) {
      Placement cand = y;
      cand.add(e);
      CHECK(d2dcache::g_value(cand, scenario) < limit);
    }
    for (const Element& out : y.elements()) {
      if (!matroid.can_add(y, e) && out.user != e.user) continue;
      Placement cand = y;
      cand.remove(out);
      cand.add(e);
      CHECK(d2dcache::g_value(cand, scenario) < limit);
    }
  }
  for (const Element& out : y.elements()) {
    Placement cand = y;
    cand.remove(out);
    CHECK(d2dcache::g_value(cand, scenario) < limit);
  }
}

}  // namespace

TEST_CASE("all-zero quotas give the empty placement at full service cost") {
  d2dcache::Scenario s = testutil::worked_scenario();
  s.profiles[0].c = 0.2;
  s.profiles[1].c = 0.15;
  const d2dcache::SolverReport report = d2dcache::local_search(s);
  CHECK(report.solution.size() == 0);
  CHECK(report.total_cost == doctest::Approx(s.q1()).epsilon(1e-15));
  CHECK(report.method == "local_search");
  CHECK(report.pass_g.size() == 2);
  CHECK(report.iterations.total() == 0);
}

TEST_CASE("zero service cost makes caching pointless") {
  d2dcache::Scenario s = testutil::worked_scenario();
  s.cost.slope_dollars_per_mb = 0.0;
  const d2dcache::SolverReport report = d2dcache::local_search(s);
  CHECK(report.solution.size() == 0);
  CHECK(report.total_cost == 0.0);
}

TEST_CASE("single user caches its popular file") {
  // One user, two files at 90/10 demand, room for one file: the solver
  // must self-cache the popular file, matching exhaustive enumeration.
  d2dcache::Scenario s;
  s.profiles = {{0.0032572, 100.0, 0.0, 0.4}};
  s.mobility = d2dcache::MobilityModel(1);
  s.demand = d2dcache::DemandModel(1, 2, {0.9, 0.1});
  s.cost.kind = d2dcache::CostModel::Kind::linear;
  s.cost.slope_dollars_per_mb = 0.01;
  s.cost.file_size_mb = 200.0;
  s.file_size_gb = 0.2;
  s.delay_budget_s = 300.0;

  const d2dcache::SolverReport report = d2dcache::local_search(s);
  CHECK(report.solution.size() == 1);
  CHECK(report.solution.contains(0, 0));
  const d2dcache::SolverReport oracle = d2dcache::exhaustive_oracle(s);
  CHECK(oracle.solution == report.solution);
  CHECK(report.total_cost ==
        doctest::Approx(oracle.total_cost).epsilon(1e-12));
}

TEST_CASE("deterministic given the scenario") {
  const d2dcache::Scenario s = testutil::benchmark_scenario(6, 8, 0.8, 99);
  const d2dcache::SolverReport a = d2dcache::local_search(s);
  const d2dcache::SolverReport b = d2dcache::local_search(s);
  CHECK(a.solution == b.solution);
  CHECK(a.g == b.g);
  CHECK(a.iterations.total() == b.iterations.total());
}

TEST_CASE("each restricted run ends locally optimal") {
  for (std::uint64_t seed = 100; seed < 112; ++seed) {
    const d2dcache::Scenario s = testutil::random_scenario(
        2 + static_cast<int>(seed % 2), 3, seed);
    const d2dcache::PartitionMatroid matroid = d2dcache::matroid_for(s);
    const std::vector<Element> ground =
        d2dcache::ground_set(s.n_users(), s.n_files());
    const Placement y = d2dcache::local_search_procedure(
        ground, matroid, s, s.epsilon);
    CHECK(matroid.is_independent(y));
    check_locally_optimal(y, ground, matroid, s);
  }
}

TEST_CASE("best-improvement variant also lands on a local optimum") {
  d2dcache::LocalSearchOptions options;
  options.best_improvement = true;
  for (std::uint64_t seed = 120; seed < 126; ++seed) {
    const d2dcache::Scenario s = testutil::random_scenario(3, 3, seed);
    const d2dcache::PartitionMatroid matroid = d2dcache::matroid_for(s);
    const std::vector<Element> ground = d2dcache::ground_set(3, 3);
    const Placement y = d2dcache::local_search_procedure(
        ground, matroid, s, s.epsilon, nullptr, options);
    CHECK(matroid.is_independent(y));
    check_locally_optimal(y, ground, matroid, s);

    const d2dcache::SolverReport report = d2dcache::local_search(s, options);
    CHECK(d2dcache::matroid_for(s).is_independent(report.solution));
  }
}

TEST_CASE("two-pass surplus stays within a quarter of optimal") {
  int instances = 0;
  for (std::uint64_t seed = 200; instances < 25; ++seed) {
    const int nu = 2 + static_cast<int>(seed % 2);
    const int nf = 2 + static_cast<int>((seed / 2) % 3);
    const d2dcache::Scenario s = testutil::random_scenario(nu, nf, seed);
    ++instances;
    const d2dcache::SolverReport ls = d2dcache::local_search(s);
    const d2dcache::SolverReport best = d2dcache::exhaustive_oracle(s);
    CHECK(ls.g >= best.g / (4.0 + s.epsilon) - 1e-12);
    CHECK(ls.total_cost >= best.total_cost - 1e-12);
  }
}

TEST_CASE("report fields are internally consistent") {
  const d2dcache::Scenario s = testutil::benchmark_scenario(5, 6, 0.8, 7);
  const d2dcache::SolverReport report = d2dcache::local_search(s);
  CHECK(report.g ==
        doctest::Approx(report.theta - report.total_cost).epsilon(1e-12));
  CHECK(report.theta == doctest::Approx(d2dcache::theta(s)).epsilon(1e-15));
  const double expected_factor =
      1.0 + s.epsilon / (std::pow(5.0, 4) * std::pow(6.0, 4));
  CHECK(report.threshold_factor == expected_factor);
  REQUIRE(report.pass_g.size() == 2);
  CHECK(report.g == std::max(report.pass_g[0], report.pass_g[1]));
  CHECK(d2dcache::matroid_for(s).is_independent(report.solution));
  CHECK(report.method == "local_search");
  CHECK(report.iterations.adds >= 0);
  CHECK(report.sets_enumerated == 0);
}

TEST_CASE("restricted ground sets are honored") {
  const d2dcache::Scenario s = testutil::benchmark_scenario(3, 4, 0.8, 55);
  const d2dcache::PartitionMatroid matroid = d2dcache::matroid_for(s);
  std::vector<Element> half;
  for (const Element& e : d2dcache::ground_set(3, 4))
    if (e.file < 2) half.push_back(e);
  const Placement y =
      d2dcache::local_search_procedure(half, matroid, s, 0.01);
  for (const Element& e : y.elements()) CHECK(e.file < 2);

  const Placement empty = d2dcache::local_search_procedure(
      std::vector<Element>{}, matroid, s, 0.01);
  CHECK(empty.size() == 0);
}
