#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace d2dcache {

// Invariant violation detected while building or validating a scenario.
// `field` is the path of the offending entry, e.g. "users[3].a" or
// "demand[2]".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Per-user economics. a is the utility weight in dollars, b the utility
// scale (dimensionless), rho the storage cost in dollars per GB per day,
// c the device capacity in GB.
struct UserProfile {
  double a = 0.0;
  double b = 0.0;
  double rho = 0.0;
  double c = 0.0;
};

// Symmetric pairwise contact intensities in contacts per second. Rates are
// stored per unordered pair; a user's contact with itself is a symbolic
// convention handled by the callers (an own cache serves instantly) and is
// never stored as a number.
class MobilityModel {
 public:
  MobilityModel() = default;
  explicit MobilityModel(int n_users);

  int n_users() const { return n_users_; }
  double rate(int i, int j) const;
  void set_rate(int i, int j, double rate);
  const std::vector<double>& pair_rates() const { return rates_; }

  // Index of unordered pair {i, j}, i < j, in pair_rates().
  static std::size_t pair_index(int i, int j, int n_users);

 private:
  int n_users_ = 0;
  std::vector<double> rates_;
};

// Request probabilities p(i, f), one distribution per user, row-major.
class DemandModel {
 public:
  DemandModel() = default;
  DemandModel(int n_users, int n_files, std::vector<double> p);

  int n_users() const { return n_users_; }
  int n_files() const { return n_files_; }
  double p(int user, int file) const { return p_[index(user, file)]; }
  double row_sum(int user) const;
  const std::vector<double>& raw() const { return p_; }

 private:
  std::size_t index(int user, int file) const {
    return static_cast<std::size_t>(user) * n_files_ + file;
  }
  int n_users_ = 0;
  int n_files_ = 0;
  std::vector<double> p_;
};

// Daily cellular service cost Q as a function of the cellular fraction.
// Linear: Q(x) = slope * file_size_mb * n_users * requests_per_user_per_day
// * x. Piecewise: Q interpolates `points` (fraction, dollars per day),
// which must be increasing and convex over [0, 1]; the piecewise form is
// already an aggregate, so n_users does not rescale it.
struct CostModel {
  enum class Kind { linear, piecewise };

  Kind kind = Kind::linear;
  double slope_dollars_per_mb = 0.0;
  std::vector<std::pair<double, double>> points;
  double file_size_mb = 0.0;
  double requests_per_user_per_day = 1.0;

  double q(double cellular_fraction, int n_users) const;
};

// One problem instance. file_size_gb is the uniform file size s,
// delay_budget_s the tolerable wait before a request falls back to the
// cellular link, epsilon the solver accuracy knob.
struct Scenario {
  std::vector<UserProfile> profiles;
  MobilityModel mobility;
  DemandModel demand;
  CostModel cost;
  double file_size_gb = 0.0;
  double delay_budget_s = 0.0;
  double epsilon = 0.01;

  int n_users() const { return static_cast<int>(profiles.size()); }
  int n_files() const { return demand.n_files(); }
  double q(double cellular_fraction) const {
    return cost.q(cellular_fraction, n_users());
  }
  double q1() const { return q(1.0); }
};

// Checks every structural invariant and returns the scenario unchanged.
// Throws ValidationError naming the first violated field.
const Scenario& validate(const Scenario& scenario);

// Zipf request popularity with exponent gamma_r, identical for all users:
// p(f) = (f + 1)^-gamma_r / sum_k k^-gamma_r with files ranked 0-based.
DemandModel zipf_demand(int n_files, double gamma_r, int n_users);

// Independent per-pair contact rates drawn from Gamma(shape, scale)
// (mean = shape * scale). Pairs are drawn in (i, j) lexicographic order so
// the same seed reproduces the same model.
MobilityModel sample_gamma_mobility(int n_users, double shape, double scale,
                                    std::uint64_t seed);

}  // namespace d2dcache
