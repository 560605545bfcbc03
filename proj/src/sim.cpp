#include "d2dcache/sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "d2dcache/rng.hpp"

namespace d2dcache {

namespace {

[[noreturn]] void line_error(long line, const std::string& message) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + message);
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

bool parse_int(const std::string& s, int& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  try {
    std::size_t consumed = 0;
    out = std::stod(s, &consumed);
    return consumed == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

ContactTrace ContactTrace::make(std::vector<ContactEvent> events,
                                double window_start, double window_end) {
  if (!(window_end > window_start))
    throw std::invalid_argument("window length must be positive");
  for (ContactEvent& e : events) {
    if (e.i < 0 || e.j < 0)
      throw std::invalid_argument("negative user index in contact event");
    if (e.i == e.j)
      throw std::invalid_argument("self-contact events are not meaningful");
    if (e.t < window_start || e.t > window_end)
      throw std::invalid_argument("contact event outside the window");
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(events.begin(), events.end(),
            [](const ContactEvent& a, const ContactEvent& b) {
              if (a.t != b.t) return a.t < b.t;
              if (a.i != b.i) return a.i < b.i;
              return a.j < b.j;
            });
  ContactTrace trace;
  trace.events_ = std::move(events);
  trace.window_start_ = window_start;
  trace.window_end_ = window_end;
  return trace;
}

ContactTrace load_trace_csv(std::istream& in, double window_start,
                            double window_end) {
  std::string line;
  long lineno = 0;

  if (!std::getline(in, line)) line_error(1, "missing header \"i,j,t\"");
  ++lineno;
  if (strip_cr(line) != "i,j,t") line_error(lineno, "expected header \"i,j,t\"");

  std::vector<ContactEvent> events;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string fi, fj, ft, extra;
    if (!std::getline(fields, fi, ',') || !std::getline(fields, fj, ',') ||
        !std::getline(fields, ft, ','))
      line_error(lineno, "expected three comma-separated fields");
    if (std::getline(fields, extra, ','))
      line_error(lineno, "too many fields");
    ContactEvent e;
    if (!parse_int(fi, e.i)) line_error(lineno, "bad user index \"" + fi + "\"");
    if (!parse_int(fj, e.j)) line_error(lineno, "bad user index \"" + fj + "\"");
    if (!parse_double(ft, e.t))
      line_error(lineno, "bad timestamp \"" + ft + "\"");
    if (e.i < 0 || e.j < 0) line_error(lineno, "negative user index");
    if (e.i == e.j) line_error(lineno, "self-contact event");
    // The window selects the estimation period; events outside it are
    // not part of the sample.
    if (e.t < window_start || e.t > window_end) continue;
    events.push_back(e);
  }
  return ContactTrace::make(std::move(events), window_start, window_end);
}

ContactTrace load_trace_csv(const std::string& path, double window_start,
                            double window_end) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return load_trace_csv(in, window_start, window_end);
}

MobilityModel estimate_rates(const ContactTrace& trace) {
  const double length = trace.window_length();
  if (!(length > 0)) throw std::domain_error("empty estimation window");
  int n_users = 0;
  for (const ContactEvent& e : trace.events())
    n_users = std::max(n_users, e.j + 1);
  MobilityModel model(n_users);
  for (const ContactEvent& e : trace.events())
    model.set_rate(e.i, e.j, model.rate(e.i, e.j) + 1.0);
  for (int i = 0; i < n_users; ++i)
    for (int j = i + 1; j < n_users; ++j)
      model.set_rate(i, j, model.rate(i, j) / length);
  return model;
}

std::optional<double> sample_delay_with(std::mt19937_64& engine, int user,
                                        int file, const Placement& y,
                                        const MobilityModel& mobility) {
  if (y.n_users() != mobility.n_users())
    throw std::invalid_argument("placement and mobility disagree on users");
  if (y.contains(user, file)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  bool met = false;
  for (int j = 0; j < y.n_users(); ++j) {
    if (j == user || !y.contains(j, file)) continue;
    const double rate = mobility.rate(user, j);
    if (!(rate > 0.0)) continue;  // a zero-rate pair never meets
    std::exponential_distribution<double> wait(rate);
    const double w = wait(engine);
    if (!met || w < best) {
      best = w;
      met = true;
    }
  }
  if (!met) return std::nullopt;
  return best;
}

std::optional<double> sample_delay(int user, int file, const Placement& y,
                                   const MobilityModel& mobility,
                                   std::uint64_t seed) {
  std::mt19937_64 engine = make_engine(seed);
  return sample_delay_with(engine, user, file, y, mobility);
}

OffloadEstimate simulate_offload(const Placement& y, const Scenario& scenario,
                                 long n_requests, std::uint64_t seed) {
  if (n_requests < 1)
    throw std::invalid_argument("need at least one request");
  const int nu = scenario.n_users();
  const int nf = scenario.n_files();
  if (y.n_users() != nu || y.n_files() != nf)
    throw std::invalid_argument("placement shape does not match scenario");

  // Per-user cumulative demand for inverse-CDF file sampling.
  std::vector<double> cdf(static_cast<std::size_t>(nu) * nf);
  for (int u = 0; u < nu; ++u) {
    double cum = 0.0;
    for (int f = 0; f < nf; ++f) {
      cum += scenario.demand.p(u, f);
      cdf[static_cast<std::size_t>(u) * nf + f] = cum;
    }
  }

  // Fixed-size blocks on independent substreams keep the tally independent
  // of execution order.
  constexpr long kBlock = 8192;
  const double td = scenario.delay_budget_s;
  long cellular = 0;
  long block = 0;
  for (long start = 0; start < n_requests; start += kBlock, ++block) {
    const long count = std::min(kBlock, n_requests - start);
    std::mt19937_64 engine =
        make_engine(derive_seed(seed, static_cast<std::uint64_t>(block)));
    std::uniform_int_distribution<int> pick_user(0, nu - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long k = 0; k < count; ++k) {
      const int u = pick_user(engine);
      const double x = unit(engine);
      const double* row = cdf.data() + static_cast<std::size_t>(u) * nf;
      int f = static_cast<int>(std::upper_bound(row, row + nf, x) - row);
      if (f >= nf) f = nf - 1;
      const std::optional<double> delay =
          sample_delay_with(engine, u, f, y, scenario.mobility);
      if (!delay || *delay > td) ++cellular;
    }
  }

  OffloadEstimate estimate;
  estimate.cellular_fraction =
      static_cast<double>(cellular) / static_cast<double>(n_requests);
  estimate.replications = n_requests;
  estimate.standard_error =
      std::sqrt(estimate.cellular_fraction *
                (1.0 - estimate.cellular_fraction) / n_requests);
  return estimate;
}

}  // namespace d2dcache
