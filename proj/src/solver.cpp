#include "d2dcache/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace d2dcache {

namespace {

double threshold_for(const Scenario& scenario) {
  const double nu = scenario.n_users();
  const double nf = scenario.n_files();
  return 1.0 + scenario.epsilon /
                   (std::pow(nu, 4.0) * std::pow(nf, 4.0));
}

}  // namespace

Placement local_search_procedure(const std::vector<Element>& ground,
                                 const PartitionMatroid& matroid,
                                 const Scenario& scenario, double epsilon,
                                 MoveCounts* counts,
                                 const LocalSearchOptions& options) {
  const int nu = scenario.n_users();
  const int nf = scenario.n_files();
  if (matroid.n_users() != nu)
    throw std::invalid_argument("matroid user count does not match scenario");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");

  std::vector<Element> v(ground);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  for (const Element& e : v)
    if (e.user < 0 || e.user >= nu || e.file < 0 || e.file >= nf)
      throw std::invalid_argument("ground element out of range");

  const double delta =
      epsilon / (std::pow(static_cast<double>(nu), 4.0) *
                 std::pow(static_cast<double>(nf), 4.0));
  const double threshold = 1.0 + delta;

  ObjectiveContext ctx(scenario);

  // Start from the best feasible singleton; scanning in lexicographic
  // order with a strict comparison breaks ties toward the lowest index.
  bool found = false;
  Element seed_element{};
  double seed_g = 0.0;
  for (const Element& e : v) {
    if (matroid.quota(e.user) < 1) continue;
    const double ge = ctx.g_with_add(e);
    if (!found || ge > seed_g) {
      found = true;
      seed_element = e;
      seed_g = ge;
    }
  }
  if (!found || !(seed_g > 0.0)) return Placement(nu, nf);
  ctx.apply_delta(seed_element, std::nullopt);

  // Every accepted move multiplies g by at least `threshold` and g never
  // exceeds theta, which bounds how many moves termination can take.
  const long safety = static_cast<long>(v.size()) + 16;
  const double ratio = ctx.theta() / ctx.g();
  const long move_budget =
      (ratio > 1.0)
          ? static_cast<long>(std::ceil(std::log(ratio) / std::log1p(delta))) +
                safety
          : safety;

  MoveCounts accepted;
  bool changed = true;
  while (changed) {
    changed = false;

    {  // Add one element.
      std::optional<Element> chosen;
      double chosen_g = 0.0;
      for (const Element& e : v) {
        const Placement& y = ctx.placement();
        if (y.contains(e) || !matroid.can_add(y, e)) continue;
        const double ge = ctx.g_with_add(e);
        if (ge < threshold * ctx.g()) continue;
        if (!options.best_improvement) {
          chosen = e;
          break;
        }
        if (!chosen || ge > chosen_g) {
          chosen = e;
          chosen_g = ge;
        }
      }
      if (chosen) {
        ctx.apply_delta(*chosen, std::nullopt);
        ++accepted.adds;
        changed = true;
      }
    }

    {  // Delete one element.
      std::optional<Element> chosen;
      double chosen_g = 0.0;
      for (const Element& e : ctx.placement().elements()) {
        const double ge = ctx.g_with_remove(e);
        if (ge < threshold * ctx.g()) continue;
        if (!options.best_improvement) {
          chosen = e;
          break;
        }
        if (!chosen || ge > chosen_g) {
          chosen = e;
          chosen_g = ge;
        }
      }
      if (chosen) {
        ctx.apply_delta(std::nullopt, *chosen);
        ++accepted.deletes;
        changed = true;
      }
    }

    {  // Swap one element in for one out. Scan order: incoming element
       // outer, outgoing inner, both lexicographic.
      std::optional<std::pair<Element, Element>> chosen;
      double chosen_g = 0.0;
      const std::vector<Element> members = ctx.placement().elements();
      for (const Element& incoming : v) {
        if (ctx.placement().contains(incoming)) continue;
        const bool needs_headroom =
            !matroid.can_add(ctx.placement(), incoming);
        for (const Element& outgoing : members) {
          // Same-user swaps keep the count; cross-user swaps need headroom
          // on the incoming user's quota.
          if (needs_headroom && incoming.user != outgoing.user) continue;
          const double ge = ctx.g_with_swap(incoming, outgoing);
          if (ge < threshold * ctx.g()) continue;
          if (!options.best_improvement) {
            chosen = {incoming, outgoing};
            break;
          }
          if (!chosen || ge > chosen_g) {
            chosen = {incoming, outgoing};
            chosen_g = ge;
          }
        }
        if (chosen && !options.best_improvement) break;
      }
      if (chosen) {
        ctx.apply_delta(chosen->first, chosen->second);
        ++accepted.swaps;
        changed = true;
      }
    }

    if (changed) {
      if (accepted.total() > move_budget)
        throw std::logic_error("local search exceeded its termination bound");
      if (!matroid.is_independent(ctx.placement()))
        throw std::logic_error("local search left the feasible region");
    }
  }

  if (counts) {
    counts->adds += accepted.adds;
    counts->deletes += accepted.deletes;
    counts->swaps += accepted.swaps;
  }
  return ctx.placement();
}

SolverReport local_search(const Scenario& scenario,
                          const LocalSearchOptions& options) {
  validate(scenario);
  const int nu = scenario.n_users();
  const int nf = scenario.n_files();
  const std::vector<Element> all = ground_set(nu, nf);
  const PartitionMatroid matroid = matroid_for(scenario);

  SolverReport report;
  const Placement y1 = local_search_procedure(all, matroid, scenario,
                                              scenario.epsilon,
                                              &report.iterations, options);
  std::vector<Element> rest;
  rest.reserve(all.size());
  for (const Element& e : all)
    if (!y1.contains(e)) rest.push_back(e);
  const Placement y2 = local_search_procedure(rest, matroid, scenario,
                                              scenario.epsilon,
                                              &report.iterations, options);

  const double g1 = g_value(y1, scenario);
  const double g2 = g_value(y2, scenario);
  const bool keep_first = g1 >= g2;  // ties keep the first run
  report.solution = keep_first ? y1 : y2;
  report.g = keep_first ? g1 : g2;
  report.total_cost = total_cost(report.solution, scenario);
  report.theta = theta(scenario);
  report.threshold_factor = threshold_for(scenario);
  report.pass_g = {g1, g2};
  report.method = "local_search";
  return report;
}

}  // namespace d2dcache
