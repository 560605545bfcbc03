#include "d2dcache/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "d2dcache/game.hpp"

namespace d2dcache {

double cellular_fraction(const Placement& y, const MobilityModel& mobility,
                         const DemandModel& demand, double td_seconds) {
  const int nu = demand.n_users();
  const int nf = demand.n_files();
  if (y.n_users() != nu || y.n_files() != nf)
    throw std::invalid_argument("placement shape does not match demand");
  if (mobility.n_users() != nu)
    throw std::invalid_argument("mobility user count does not match demand");
  if (td_seconds < 0) throw std::invalid_argument("negative delay budget");

  std::vector<double> exposure(static_cast<std::size_t>(nu) * nf, 0.0);
  for (const Element& e : y.elements())
    for (int i = 0; i < nu; ++i)
      if (i != e.user)
        exposure[static_cast<std::size_t>(i) * nf + e.file] +=
            td_seconds * mobility.rate(i, e.user);

  double total = 0.0;
  for (int i = 0; i < nu; ++i)
    for (int f = 0; f < nf; ++f) {
      if (y.contains(i, f)) continue;  // an own copy serves instantly
      total += demand.p(i, f) *
               std::exp(-exposure[static_cast<std::size_t>(i) * nf + f]);
    }
  return total / nu;
}

double extended_payment(const UserProfile& user, int cached_files, int quota,
                        double file_size_gb) {
  if (cached_files < 0) throw std::invalid_argument("negative file count");
  if (quota < 0) throw std::invalid_argument("negative quota");
  if (!(file_size_gb > 0))
    throw std::invalid_argument("file size must be positive");
  // A zero quota means no storage can be bought from this user at all, so
  // every subset costs the same: nothing.
  if (quota == 0) return 0.0;
  if (cached_files <= quota)
    return payment(user, file_size_gb * cached_files);
  const double hi = payment(user, file_size_gb * quota);
  const double lo = payment(user, file_size_gb * (quota - 1));
  return hi + (hi - lo) * (cached_files - quota);
}

double total_cost(const Placement& y, const Scenario& scenario) {
  const PartitionMatroid matroid = matroid_for(scenario);
  if (!matroid.is_independent(y))
    throw std::domain_error("placement violates cache quotas");
  const double pc = cellular_fraction(y, scenario.mobility, scenario.demand,
                                      scenario.delay_budget_s);
  double pays = 0.0;
  for (int u = 0; u < scenario.n_users(); ++u) {
    if (y.count(u) == 0) continue;  // no transaction, no payment
    pays += payment(scenario.profiles[u],
                    scenario.file_size_gb * y.count(u));
  }
  return scenario.q(pc) + pays;
}

double theta(const Scenario& scenario) {
  const PartitionMatroid matroid = matroid_for(scenario);
  double t = scenario.q1();
  for (int u = 0; u < scenario.n_users(); ++u)
    t += extended_payment(scenario.profiles[u], scenario.n_files(),
                          matroid.quota(u), scenario.file_size_gb);
  return t;
}

double g_value(const Placement& y, const Scenario& scenario) {
  const PartitionMatroid matroid = matroid_for(scenario);
  const double pc = cellular_fraction(y, scenario.mobility, scenario.demand,
                                      scenario.delay_budget_s);
  double pays = 0.0;
  for (int u = 0; u < scenario.n_users(); ++u)
    pays += extended_payment(scenario.profiles[u], y.count(u),
                             matroid.quota(u), scenario.file_size_gb);
  return theta(scenario) - scenario.q(pc) - pays;
}

double g_value(const Placement& y, const ObjectiveContext& context) {
  return context.g_of(y);
}

ObjectiveContext::ObjectiveContext(const Scenario& scenario)
    : ObjectiveContext(scenario,
                       Placement(scenario.n_users(), scenario.n_files())) {}

ObjectiveContext::ObjectiveContext(const Scenario& scenario,
                                   const Placement& y)
    : scenario_(&scenario),
      n_users_(scenario.n_users()),
      n_files_(scenario.n_files()),
      quotas_(matroid_for(scenario).quotas()),
      y_(y) {
  if (y.n_users() != n_users_ || y.n_files() != n_files_)
    throw std::invalid_argument("placement shape does not match scenario");
  exposure_.assign(static_cast<std::size_t>(n_users_) * n_files_, 0.0);
  colsum_.assign(n_files_, 0.0);
  pay_.assign(n_users_, 0.0);
  theta_ = d2dcache::theta(scenario);
  rebuild();
}

double ObjectiveContext::user_payment(int user, int cached_files) const {
  return extended_payment(scenario_->profiles[user], cached_files,
                          quotas_[user], scenario_->file_size_gb);
}

double ObjectiveContext::column_sum_with(
    int file, const std::optional<Element>& add,
    const std::optional<Element>& remove) const {
  const double td = scenario_->delay_budget_s;
  const MobilityModel& mobility = scenario_->mobility;
  double sum = 0.0;
  for (int i = 0; i < n_users_; ++i) {
    double e = exposure_[static_cast<std::size_t>(i) * n_files_ + file];
    if (add && add->file == file && add->user != i)
      e += td * mobility.rate(i, add->user);
    if (remove && remove->file == file && remove->user != i)
      e -= td * mobility.rate(i, remove->user);
    bool present = y_.contains(i, file);
    if (add && add->file == file && add->user == i) present = true;
    if (remove && remove->file == file && remove->user == i) present = false;
    if (!present) sum += scenario_->demand.p(i, file) * std::exp(-e);
  }
  return sum;
}

double ObjectiveContext::column_sum(int file) const {
  return column_sum_with(file, std::nullopt, std::nullopt);
}

double ObjectiveContext::rebuild() {
  std::fill(exposure_.begin(), exposure_.end(), 0.0);
  const double td = scenario_->delay_budget_s;
  for (const Element& e : y_.elements())
    for (int i = 0; i < n_users_; ++i)
      if (i != e.user)
        exposure_[static_cast<std::size_t>(i) * n_files_ + e.file] +=
            td * scenario_->mobility.rate(i, e.user);
  cell_sum_ = 0.0;
  for (int f = 0; f < n_files_; ++f) {
    colsum_[f] = column_sum(f);
    cell_sum_ += colsum_[f];
  }
  pay_sum_ = 0.0;
  for (int u = 0; u < n_users_; ++u) {
    pay_[u] = user_payment(u, y_.count(u));
    pay_sum_ += pay_[u];
  }
  g_ = theta_ - scenario_->q(cell_sum_ / n_users_) - pay_sum_;
  commits_since_rebuild_ = 0;
  return g_;
}

double ObjectiveContext::peek(const std::optional<Element>& add,
                              const std::optional<Element>& remove) const {
  double cell = cell_sum_;
  const int fa = add ? add->file : -1;
  const int fr = remove ? remove->file : -1;
  if (fa >= 0) cell += column_sum_with(fa, add, remove) - colsum_[fa];
  if (fr >= 0 && fr != fa)
    cell += column_sum_with(fr, add, remove) - colsum_[fr];

  double pays = pay_sum_;
  const int ua = add ? add->user : -1;
  const int ur = remove ? remove->user : -1;
  if (!(ua >= 0 && ua == ur)) {  // equal users leave the count unchanged
    if (ua >= 0) pays += user_payment(ua, y_.count(ua) + 1) - pay_[ua];
    if (ur >= 0) pays += user_payment(ur, y_.count(ur) - 1) - pay_[ur];
  }
  return theta_ - scenario_->q(cell / n_users_) - pays;
}

double ObjectiveContext::g_with_add(Element e) const {
  if (y_.contains(e)) throw std::invalid_argument("element already present");
  return peek(e, std::nullopt);
}

double ObjectiveContext::g_with_remove(Element e) const {
  if (!y_.contains(e)) throw std::invalid_argument("element absent");
  return peek(std::nullopt, e);
}

double ObjectiveContext::g_with_swap(Element add, Element remove) const {
  if (y_.contains(add)) throw std::invalid_argument("element already present");
  if (!y_.contains(remove)) throw std::invalid_argument("element absent");
  return peek(add, remove);
}

double ObjectiveContext::apply_delta(std::optional<Element> add,
                                     std::optional<Element> remove) {
  if (add && y_.contains(*add))
    throw std::invalid_argument("element already present");
  if (remove && !y_.contains(*remove))
    throw std::invalid_argument("element absent");

  const double td = scenario_->delay_budget_s;
  const MobilityModel& mobility = scenario_->mobility;
  const int fa = add ? add->file : -1;
  const int fr = remove ? remove->file : -1;

  // Exposure deltas in the same per-cell order as the peek: add, then
  // remove, so committed values match the previewed ones bit for bit.
  if (add) {
    for (int i = 0; i < n_users_; ++i)
      if (i != add->user)
        exposure_[static_cast<std::size_t>(i) * n_files_ + fa] +=
            td * mobility.rate(i, add->user);
    y_.add(*add);
  }
  if (remove) {
    for (int i = 0; i < n_users_; ++i)
      if (i != remove->user)
        exposure_[static_cast<std::size_t>(i) * n_files_ + fr] -=
            td * mobility.rate(i, remove->user);
    y_.remove(*remove);
  }

  if (fa >= 0) {
    const double fresh = column_sum(fa);
    cell_sum_ += fresh - colsum_[fa];
    colsum_[fa] = fresh;
  }
  if (fr >= 0 && fr != fa) {
    const double fresh = column_sum(fr);
    cell_sum_ += fresh - colsum_[fr];
    colsum_[fr] = fresh;
  }

  const auto refresh_pay = [&](int user) {
    const double fresh = user_payment(user, y_.count(user));
    pay_sum_ += fresh - pay_[user];
    pay_[user] = fresh;
  };
  if (add) refresh_pay(add->user);
  if (remove && (!add || remove->user != add->user))
    refresh_pay(remove->user);

  g_ = theta_ - scenario_->q(cell_sum_ / n_users_) - pay_sum_;
  if (++commits_since_rebuild_ >= 10000) rebuild();
  return g_;
}

double ObjectiveContext::g_of(const Placement& y) const {
  if (y.n_users() != n_users_ || y.n_files() != n_files_)
    throw std::invalid_argument("placement shape does not match scenario");
  const double pc = cellular_fraction(y, scenario_->mobility,
                                      scenario_->demand,
                                      scenario_->delay_budget_s);
  double pays = 0.0;
  for (int u = 0; u < n_users_; ++u) pays += user_payment(u, y.count(u));
  return theta_ - scenario_->q(pc) - pays;
}

}  // namespace d2dcache
