#include "d2dcache/scenario_io.hpp"

#include <fstream>
#include <set>
#include <utility>

namespace d2dcache {

namespace {

using nlohmann::json;

std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known)
      throw ValidationError(join_path(path, it.key()), "unknown key");
  }
}

const json& get_member(const json& obj, const char* key,
                       const std::string& path) {
  if (!obj.contains(key))
    throw ValidationError(join_path(path, key), "missing");
  return obj.at(key);
}

const json& get_object(const json& obj, const char* key,
                       const std::string& path) {
  const json& v = get_member(obj, key, path);
  if (!v.is_object())
    throw ValidationError(join_path(path, key), "must be an object");
  return v;
}

const json& get_array(const json& obj, const char* key,
                      const std::string& path) {
  const json& v = get_member(obj, key, path);
  if (!v.is_array())
    throw ValidationError(join_path(path, key), "must be an array");
  return v;
}

double get_number(const json& obj, const char* key, const std::string& path) {
  const json& v = get_member(obj, key, path);
  if (!v.is_number())
    throw ValidationError(join_path(path, key), "must be a number");
  return v.get<double>();
}

long get_integer(const json& obj, const char* key, const std::string& path) {
  const json& v = get_member(obj, key, path);
  if (!v.is_number_integer())
    throw ValidationError(join_path(path, key), "must be an integer");
  return v.get<long>();
}

std::vector<UserProfile> parse_users(const json& config) {
  const json& users = get_member(config, "users", "");
  if (!users.is_array() || users.empty())
    throw ValidationError("users", "must be a non-empty array");
  std::vector<UserProfile> profiles;
  profiles.reserve(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    const std::string path = "users[" + std::to_string(i) + "]";
    const json& u = users[i];
    if (!u.is_object()) throw ValidationError(path, "must be an object");
    check_keys(u, {"a", "b", "rho", "c"}, path);
    UserProfile p;
    p.a = get_number(u, "a", path);
    p.b = get_number(u, "b", path);
    p.rho = get_number(u, "rho", path);
    p.c = get_number(u, "c", path);
    profiles.push_back(p);
  }
  return profiles;
}

MobilityModel parse_mobility(const json& config, int n_users,
                             std::uint64_t seed) {
  const json& m = get_object(config, "mobility", "");
  check_keys(m, {"pairs", "gamma"}, "mobility");
  if (m.contains("pairs") == m.contains("gamma"))
    throw ValidationError("mobility",
                          "needs exactly one of \"pairs\" or \"gamma\"");
  if (m.contains("gamma")) {
    const json& g = m.at("gamma");
    if (!g.is_object())
      throw ValidationError("mobility.gamma", "must be an object");
    check_keys(g, {"shape", "scale"}, "mobility.gamma");
    return sample_gamma_mobility(n_users, get_number(g, "shape", "mobility.gamma"),
                                 get_number(g, "scale", "mobility.gamma"),
                                 seed);
  }
  const json& pairs = get_array(m, "pairs", "mobility");
  MobilityModel model(n_users);
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string path = "mobility.pairs[" + std::to_string(k) + "]";
    const json& entry = pairs[k];
    if (!entry.is_array() || entry.size() != 3)
      throw ValidationError(path, "must be [i, j, rate]");
    if (!entry[0].is_number_integer() || !entry[1].is_number_integer())
      throw ValidationError(path, "user indices must be integers");
    if (!entry[2].is_number())
      throw ValidationError(path, "rate must be a number");
    int i = entry[0].get<int>();
    int j = entry[1].get<int>();
    const double rate = entry[2].get<double>();
    if (i == j) throw ValidationError(path, "self pairs are not allowed");
    if (i < 0 || j < 0 || i >= n_users || j >= n_users)
      throw ValidationError(path, "user index out of range");
    if (i > j) std::swap(i, j);
    if (!seen.insert({i, j}).second)
      throw ValidationError(path, "duplicate pair");
    model.set_rate(i, j, rate);
  }
  return model;
}

DemandModel parse_demand(const json& config, int n_users) {
  const json& d = get_object(config, "demand", "");
  check_keys(d, {"zipf", "matrix"}, "demand");
  if (d.contains("zipf") == d.contains("matrix"))
    throw ValidationError("demand",
                          "needs exactly one of \"zipf\" or \"matrix\"");
  if (d.contains("zipf")) {
    const json& z = d.at("zipf");
    if (!z.is_object())
      throw ValidationError("demand.zipf", "must be an object");
    check_keys(z, {"gamma", "n_files"}, "demand.zipf");
    const long n_files = get_integer(z, "n_files", "demand.zipf");
    if (n_files < 1)
      throw ValidationError("demand.zipf.n_files", "must be positive");
    return zipf_demand(static_cast<int>(n_files),
                       get_number(z, "gamma", "demand.zipf"), n_users);
  }
  const json& rows = get_array(d, "matrix", "demand");
  if (rows.size() != static_cast<std::size_t>(n_users))
    throw ValidationError("demand.matrix", "row count must equal users");
  std::size_t n_files = 0;
  std::vector<double> p;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string path = "demand.matrix[" + std::to_string(i) + "]";
    const json& row = rows[i];
    if (!row.is_array() || row.empty())
      throw ValidationError(path, "must be a non-empty array");
    if (i == 0)
      n_files = row.size();
    else if (row.size() != n_files)
      throw ValidationError(path, "ragged rows");
    for (std::size_t f = 0; f < row.size(); ++f) {
      if (!row[f].is_number())
        throw ValidationError(path + "[" + std::to_string(f) + "]",
                              "must be a number");
      p.push_back(row[f].get<double>());
    }
  }
  return DemandModel(n_users, static_cast<int>(n_files), std::move(p));
}

CostModel parse_cost(const json& config, double file_size_gb) {
  const json& c = get_object(config, "cost", "");
  check_keys(c, {"linear", "piecewise", "requests_per_user_per_day"}, "cost");
  if (c.contains("linear") == c.contains("piecewise"))
    throw ValidationError("cost",
                          "needs exactly one of \"linear\" or \"piecewise\"");
  CostModel cost;
  if (c.contains("linear")) {
    const json& lin = c.at("linear");
    if (!lin.is_object())
      throw ValidationError("cost.linear", "must be an object");
    check_keys(lin, {"slope_dollars_per_mb"}, "cost.linear");
    cost.kind = CostModel::Kind::linear;
    cost.slope_dollars_per_mb =
        get_number(lin, "slope_dollars_per_mb", "cost.linear");
  } else {
    const json& pw = c.at("piecewise");
    if (!pw.is_object())
      throw ValidationError("cost.piecewise", "must be an object");
    check_keys(pw, {"points"}, "cost.piecewise");
    const json& points = get_array(pw, "points", "cost.piecewise");
    cost.kind = CostModel::Kind::piecewise;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const std::string path =
          "cost.piecewise.points[" + std::to_string(k) + "]";
      const json& pt = points[k];
      if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() ||
          !pt[1].is_number())
        throw ValidationError(path, "must be [fraction, dollars]");
      cost.points.emplace_back(pt[0].get<double>(), pt[1].get<double>());
    }
  }
  if (c.contains("requests_per_user_per_day")) {
    cost.requests_per_user_per_day =
        get_number(c, "requests_per_user_per_day", "cost");
  }
  cost.file_size_mb = 1000.0 * file_size_gb;
  return cost;
}

}  // namespace

Scenario load_scenario_json(const json& config, std::uint64_t seed) {
  if (!config.is_object())
    throw ValidationError("config", "must be a JSON object");
  check_keys(config, {"users", "mobility", "demand", "cost", "sim", "solver"},
             "");

  Scenario scenario;
  scenario.profiles = parse_users(config);
  const int n_users = scenario.n_users();

  const json& sim = get_object(config, "sim", "");
  check_keys(sim, {"td_seconds", "file_size_gb"}, "sim");
  scenario.delay_budget_s = get_number(sim, "td_seconds", "sim");
  scenario.file_size_gb = get_number(sim, "file_size_gb", "sim");

  scenario.mobility = parse_mobility(config, n_users, seed);
  scenario.demand = parse_demand(config, n_users);
  scenario.cost = parse_cost(config, scenario.file_size_gb);

  if (config.contains("solver")) {
    const json& solver = config.at("solver");
    if (!solver.is_object())
      throw ValidationError("solver", "must be an object");
    check_keys(solver, {"epsilon"}, "solver");
    scenario.epsilon = get_number(solver, "epsilon", "solver");
  }

  validate(scenario);
  return scenario;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config", std::string("invalid JSON: ") + e.what());
  }
}

Scenario load_scenario_file(const std::string& path, std::uint64_t seed) {
  return load_scenario_json(read_json_file(path), seed);
}

json scenario_to_json(const Scenario& scenario) {
  json users = json::array();
  for (const UserProfile& u : scenario.profiles)
    users.push_back({{"a", u.a}, {"b", u.b}, {"rho", u.rho}, {"c", u.c}});

  json pairs = json::array();
  for (int i = 0; i < scenario.n_users(); ++i)
    for (int j = i + 1; j < scenario.n_users(); ++j) {
      const double rate = scenario.mobility.rate(i, j);
      if (rate != 0.0) pairs.push_back({i, j, rate});
    }

  json rows = json::array();
  for (int i = 0; i < scenario.n_users(); ++i) {
    json row = json::array();
    for (int f = 0; f < scenario.n_files(); ++f)
      row.push_back(scenario.demand.p(i, f));
    rows.push_back(std::move(row));
  }

  json cost;
  if (scenario.cost.kind == CostModel::Kind::linear) {
    cost["linear"] = {
        {"slope_dollars_per_mb", scenario.cost.slope_dollars_per_mb}};
  } else {
    json points = json::array();
    for (const auto& [x, y] : scenario.cost.points) points.push_back({x, y});
    cost["piecewise"] = {{"points", std::move(points)}};
  }
  cost["requests_per_user_per_day"] = scenario.cost.requests_per_user_per_day;

  return json{{"users", std::move(users)},
              {"mobility", {{"pairs", std::move(pairs)}}},
              {"demand", {{"matrix", std::move(rows)}}},
              {"cost", std::move(cost)},
              {"sim",
               {{"td_seconds", scenario.delay_budget_s},
                {"file_size_gb", scenario.file_size_gb}}},
              {"solver", {{"epsilon", scenario.epsilon}}}};
}

json placement_to_json(const Placement& y) {
  json out = json::array();
  for (const Element& e : y.elements()) out.push_back({e.user, e.file});
  return out;
}

Placement placement_from_json(const json& j, int n_users, int n_files) {
  if (!j.is_array())
    throw ValidationError("placement", "must be an array of [user, file]");
  Placement y(n_users, n_files);
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string path = "placement[" + std::to_string(k) + "]";
    const json& entry = j[k];
    if (!entry.is_array() || entry.size() != 2 ||
        !entry[0].is_number_integer() || !entry[1].is_number_integer())
      throw ValidationError(path, "must be [user, file]");
    const int user = entry[0].get<int>();
    const int file = entry[1].get<int>();
    if (user < 0 || user >= n_users || file < 0 || file >= n_files)
      throw ValidationError(path, "index out of range");
    if (y.contains(user, file))
      throw ValidationError(path, "duplicate element");
    y.add({user, file});
  }
  return y;
}

Placement load_placement_file(const std::string& path, int n_users,
                              int n_files) {
  std::ifstream in(path);
  if (!in) throw ValidationError("placement", "cannot open file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("placement",
                          std::string("invalid JSON: ") + e.what());
  }
  return placement_from_json(j, n_users, n_files);
}

json mobility_to_json(const MobilityModel& mobility) {
  json pairs = json::array();
  for (int i = 0; i < mobility.n_users(); ++i)
    for (int j = i + 1; j < mobility.n_users(); ++j) {
      const double rate = mobility.rate(i, j);
      if (rate != 0.0) pairs.push_back({i, j, rate});
    }
  return json{{"pairs", std::move(pairs)}};
}

json report_to_json(const SolverReport& report, const Scenario& scenario) {
  json j;
  j["method"] = report.method;
  j["g"] = report.g;
  j["total_cost"] = report.total_cost;
  const double q1 = scenario.q1();
  if (q1 > 0) j["normalized_cost"] = report.total_cost / q1;
  j["theta"] = report.theta;
  j["threshold_factor"] = report.threshold_factor;
  j["pass_g"] = report.pass_g;
  j["iterations"] = {{"adds", report.iterations.adds},
                     {"deletes", report.iterations.deletes},
                     {"swaps", report.iterations.swaps}};
  j["sets_enumerated"] = report.sets_enumerated;
  j["placement"] = placement_to_json(report.solution);
  return j;
}

}  // namespace d2dcache
