#pragma once

#include <optional>
#include <vector>

#include "d2dcache/model.hpp"
#include "d2dcache/placement.hpp"

namespace d2dcache {

// Expected fraction of requests the cellular link must serve under
// placement y. A request by user i for file f is offloaded when i caches f
// (served instantly) or some cacher of f is met within the delay budget;
// meeting times are exponential, so the cellular probability of the pair
// is exp(-sum over cachers j != i of td * rate(i, j)), and 0 when i caches
// f itself.
double cellular_fraction(const Placement& y, const MobilityModel& mobility,
                         const DemandModel& demand, double td_seconds);

// Payment for a user caching `cached_files` whole files. Within the quota
// this is the exact price-times-storage payment; beyond it the payment
// continues linearly with the last within-quota increment, which keeps the
// function defined and increasing on every subset, not only feasible ones.
double extended_payment(const UserProfile& user, int cached_files, int quota,
                        double file_size_gb);

// Daily operator cost: Q(cellular fraction) plus the payments that elicit
// the placed storage. Throws when the placement violates a quota, since
// the payment for such storage is undefined.
double total_cost(const Placement& y, const Scenario& scenario);

// Offset making the surplus objective nonnegative everywhere:
// Q(1) + sum_i extended_payment(i, n_files).
double theta(const Scenario& scenario);

// Surplus objective g(y) = theta - Q(cellular fraction) - sum of extended
// payments. Nonnegative and submodular over all subsets of the ground set;
// on quota-feasible placements g + total_cost = theta.
double g_value(const Placement& y, const Scenario& scenario);

class ObjectiveContext;
double g_value(const Placement& y, const ObjectiveContext& context);

// Incremental evaluator for local search. Maintains, per (user, file), the
// summed exposure td * rate to the current cachers, per-file column sums of
// the cellular terms, and per-user payments, so single-element deltas cost
// O(n_users). The scenario must outlive the context.
class ObjectiveContext {
 public:
  explicit ObjectiveContext(const Scenario& scenario);
  ObjectiveContext(const Scenario& scenario, const Placement& y);

  const Scenario& scenario() const { return *scenario_; }
  const Placement& placement() const { return y_; }
  const std::vector<int>& quotas() const { return quotas_; }
  double theta() const { return theta_; }
  double g() const { return g_; }
  double cellular() const { return cell_sum_ / n_users_; }

  // Value after a hypothetical move, without mutating the context.
  double g_with_add(Element e) const;
  double g_with_remove(Element e) const;
  double g_with_swap(Element add, Element remove) const;

  // Commits a move and returns the new g. `add` must be absent and
  // `remove` present. Matches the corresponding peek bit for bit, and a
  // full recomputation happens every 10000 commits to stop drift.
  double apply_delta(std::optional<Element> add, std::optional<Element> remove);

  // From-scratch recomputation of all cached sums; returns g.
  double rebuild();

  // g of an arbitrary placement evaluated from scratch with this context's
  // theta; used as the independent check against the incremental path.
  double g_of(const Placement& y) const;

 private:
  double peek(const std::optional<Element>& add,
              const std::optional<Element>& remove) const;
  double column_sum(int file) const;
  double column_sum_with(int file, const std::optional<Element>& add,
                         const std::optional<Element>& remove) const;
  double user_payment(int user, int cached_files) const;

  const Scenario* scenario_ = nullptr;
  int n_users_ = 0;
  int n_files_ = 0;
  std::vector<int> quotas_;
  Placement y_;
  std::vector<double> exposure_;  // td * rate sums over cachers, per (i, f)
  std::vector<double> colsum_;    // per file: sum_i p(i, f) * cellular term
  std::vector<double> pay_;       // per user extended payment
  double cell_sum_ = 0.0;
  double pay_sum_ = 0.0;
  double theta_ = 0.0;
  double g_ = 0.0;
  long commits_since_rebuild_ = 0;
};

}  // namespace d2dcache
