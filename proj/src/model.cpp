#include "d2dcache/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "d2dcache/rng.hpp"

namespace d2dcache {

namespace {

bool finite(double x) { return std::isfinite(x); }

std::string pair_name(int i, int j) {
  std::ostringstream os;
  os << "(" << i << "," << j << ")";
  return os.str();
}

}  // namespace

MobilityModel::MobilityModel(int n_users) : n_users_(n_users) {
  if (n_users < 0) throw std::invalid_argument("negative user count");
  rates_.assign(static_cast<std::size_t>(n_users) * (n_users - 1) / 2, 0.0);
}

std::size_t MobilityModel::pair_index(int i, int j, int n_users) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n_users || i == j)
    throw std::invalid_argument("bad user pair");
  // Row-major upper triangle without the diagonal.
  return static_cast<std::size_t>(i) * n_users - static_cast<std::size_t>(i) * (i + 1) / 2 +
         (j - i - 1);
}

double MobilityModel::rate(int i, int j) const {
  if (i == j)
    throw std::logic_error("self-contact rate is symbolic, not a number");
  return rates_[pair_index(i, j, n_users_)];
}

void MobilityModel::set_rate(int i, int j, double rate) {
  if (i == j) throw std::logic_error("cannot assign a self-contact rate");
  rates_[pair_index(i, j, n_users_)] = rate;
}

DemandModel::DemandModel(int n_users, int n_files, std::vector<double> p)
    : n_users_(n_users), n_files_(n_files), p_(std::move(p)) {
  if (n_users < 0 || n_files < 0)
    throw std::invalid_argument("negative demand dimensions");
  if (p_.size() != static_cast<std::size_t>(n_users) * n_files)
    throw std::invalid_argument("demand matrix size mismatch");
}

double DemandModel::row_sum(int user) const {
  double s = 0.0;
  for (int f = 0; f < n_files_; ++f) s += p(user, f);
  return s;
}

double CostModel::q(double cellular_fraction, int n_users) const {
  if (kind == Kind::linear) {
    return slope_dollars_per_mb * file_size_mb * n_users *
           requests_per_user_per_day * cellular_fraction;
  }
  const double x = cellular_fraction;
  if (points.size() < 2) throw std::logic_error("piecewise cost needs points");
  if (x <= points.front().first) return points.front().second;
  if (x >= points.back().first) return points.back().second;
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (x <= points[k].first) {
      const auto& [x0, y0] = points[k - 1];
      const auto& [x1, y1] = points[k];
      return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
  }
  return points.back().second;
}

const Scenario& validate(const Scenario& scenario) {
  const int nu = scenario.n_users();
  const int nf = scenario.n_files();
  if (nu < 1) throw ValidationError("users", "at least one user is required");
  if (nf < 1) throw ValidationError("demand", "at least one file is required");
  if (!(scenario.file_size_gb > 0) || !finite(scenario.file_size_gb))
    throw ValidationError("sim.file_size_gb", "must be positive");
  if (scenario.delay_budget_s < 0 || !finite(scenario.delay_budget_s))
    throw ValidationError("sim.td_seconds", "must be nonnegative");
  if (!(scenario.epsilon > 0) || !finite(scenario.epsilon))
    throw ValidationError("solver.epsilon", "must be positive");

  for (int i = 0; i < nu; ++i) {
    const UserProfile& u = scenario.profiles[i];
    const std::string base = "users[" + std::to_string(i) + "]";
    if (!(u.a > 0) || !finite(u.a))
      throw ValidationError(base + ".a", "must be positive");
    if (!(u.b > 0) || !finite(u.b))
      throw ValidationError(base + ".b", "must be positive");
    if (u.rho < 0 || !finite(u.rho))
      throw ValidationError(base + ".rho", "must be nonnegative");
    if (u.c < 0 || !finite(u.c))
      throw ValidationError(base + ".c", "must be nonnegative");
  }

  if (scenario.mobility.n_users() != nu)
    throw ValidationError("mobility", "user count does not match users");
  for (int i = 0; i < nu; ++i)
    for (int j = i + 1; j < nu; ++j) {
      const double r = scenario.mobility.rate(i, j);
      if (r < 0 || !finite(r))
        throw ValidationError("mobility.pairs" + pair_name(i, j),
                              "rate must be nonnegative and finite");
    }

  if (scenario.demand.n_users() != nu)
    throw ValidationError("demand", "row count does not match users");
  for (int i = 0; i < nu; ++i) {
    for (int f = 0; f < nf; ++f) {
      const double p = scenario.demand.p(i, f);
      if (!(p >= 0.0) || p > 1.0 || !finite(p))
        throw ValidationError(
            "demand[" + std::to_string(i) + "][" + std::to_string(f) + "]",
            "probability must lie in [0, 1]");
    }
    if (std::abs(scenario.demand.row_sum(i) - 1.0) > 1e-9)
      throw ValidationError("demand[" + std::to_string(i) + "]",
                            "row must sum to 1");
  }

  const CostModel& cost = scenario.cost;
  if (cost.requests_per_user_per_day < 0 ||
      !finite(cost.requests_per_user_per_day))
    throw ValidationError("cost.requests_per_user_per_day",
                          "must be nonnegative");
  if (std::abs(cost.file_size_mb - 1000.0 * scenario.file_size_gb) >
      1e-6 * std::max(1.0, cost.file_size_mb))
    throw ValidationError("cost.file_size_mb",
                          "inconsistent with sim.file_size_gb");
  if (cost.kind == CostModel::Kind::linear) {
    if (cost.slope_dollars_per_mb < 0 || !finite(cost.slope_dollars_per_mb))
      throw ValidationError("cost.linear.slope_dollars_per_mb",
                            "must be nonnegative");
  } else {
    const auto& pts = cost.points;
    if (pts.size() < 2)
      throw ValidationError("cost.piecewise.points",
                            "need at least two points");
    if (pts.front().first != 0.0 || pts.back().first != 1.0)
      throw ValidationError("cost.piecewise.points", "must span [0, 1]");
    if (pts.front().second < 0)
      throw ValidationError("cost.piecewise.points", "cost at 0 is negative");
    double prev_slope = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      if (!finite(pts[k].second) || !finite(pts[k + 1].second))
        throw ValidationError("cost.piecewise.points", "non-finite cost");
      if (!(pts[k + 1].first > pts[k].first))
        throw ValidationError("cost.piecewise.points",
                              "fractions must strictly increase");
      const double slope = (pts[k + 1].second - pts[k].second) /
                           (pts[k + 1].first - pts[k].first);
      if (slope < 0)
        throw ValidationError("cost.piecewise.points", "must be increasing");
      if (slope < prev_slope - 1e-12)
        throw ValidationError("cost.piecewise.points", "must be convex");
      prev_slope = slope;
    }
  }

  return scenario;
}

DemandModel zipf_demand(int n_files, double gamma_r, int n_users) {
  if (n_files < 1) throw std::invalid_argument("need at least one file");
  if (n_users < 1) throw std::invalid_argument("need at least one user");
  if (!(gamma_r >= 0) || !finite(gamma_r))
    throw std::invalid_argument("zipf exponent must be nonnegative");
  std::vector<double> row(n_files);
  double norm = 0.0;
  for (int f = 0; f < n_files; ++f) {
    row[f] = std::pow(static_cast<double>(f + 1), -gamma_r);
    norm += row[f];
  }
  for (double& p : row) p /= norm;
  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(n_users) * n_files);
  for (int i = 0; i < n_users; ++i)
    all.insert(all.end(), row.begin(), row.end());
  return DemandModel(n_users, n_files, std::move(all));
}

MobilityModel sample_gamma_mobility(int n_users, double shape, double scale,
                                    std::uint64_t seed) {
  if (n_users < 1) throw std::invalid_argument("need at least one user");
  if (!(shape > 0) || !(scale > 0))
    throw std::invalid_argument("gamma parameters must be positive");
  MobilityModel m(n_users);
  std::mt19937_64 engine = make_engine(seed);
  std::gamma_distribution<double> dist(shape, scale);
  for (int i = 0; i < n_users; ++i)
    for (int j = i + 1; j < n_users; ++j) m.set_rate(i, j, dist(engine));
  return m;
}

}  // namespace d2dcache
