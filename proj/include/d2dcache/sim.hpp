#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "d2dcache/model.hpp"
#include "d2dcache/placement.hpp"

namespace d2dcache {

// One observed contact between users i and j at time t (seconds).
struct ContactEvent {
  int i = 0;
  int j = 0;
  double t = 0.0;
};

// A canonicalized contact log: pairs normalized to i < j, events sorted by
// (t, i, j), every timestamp inside the observation window.
class ContactTrace {
 public:
  // Validates and canonicalizes. Throws on i == j, a timestamp outside
  // [window_start, window_end], or a non-positive window length.
  static ContactTrace make(std::vector<ContactEvent> events,
                           double window_start, double window_end);

  const std::vector<ContactEvent>& events() const { return events_; }
  double window_start() const { return window_start_; }
  double window_end() const { return window_end_; }
  double window_length() const { return window_end_ - window_start_; }

 private:
  std::vector<ContactEvent> events_;
  double window_start_ = 0.0;
  double window_end_ = 0.0;
};

// Parses a contact CSV with header "i,j,t", keeping only events inside the
// window (the window selects the estimation period). Errors carry the
// 1-based line number.
ContactTrace load_trace_csv(const std::string& path, double window_start,
                            double window_end);
ContactTrace load_trace_csv(std::istream& in, double window_start,
                            double window_end);

// Maximum-likelihood contact rates: events per pair divided by the window
// length. Users are indexed up to the largest index seen; unseen pairs get
// rate zero. An empty trace yields an empty model.
MobilityModel estimate_rates(const ContactTrace& trace);

// One draw of the wait until user `user` can fetch `file` over a direct
// link: 0 if the user caches it, otherwise the minimum of independent
// exponential meeting times to each cacher with positive rate. nullopt
// means the file is never met.
std::optional<double> sample_delay(int user, int file, const Placement& y,
                                   const MobilityModel& mobility,
                                   std::uint64_t seed);
std::optional<double> sample_delay_with(std::mt19937_64& engine, int user,
                                        int file, const Placement& y,
                                        const MobilityModel& mobility);

struct OffloadEstimate {
  double cellular_fraction = 0.0;
  long replications = 0;
  double standard_error = 0.0;  // sqrt(p * (1 - p) / n)
};

// Monte Carlo estimate of the cellular fraction: each request picks a
// uniform user, a file from that user's demand, and falls back to the
// cellular link when the sampled delay exceeds the budget (or the file is
// never met). Requests run in fixed-size blocks, each on substream
// `block index` of the seed, so the estimate does not depend on execution
// order and is reproducible for a given seed.
OffloadEstimate simulate_offload(const Placement& y, const Scenario& scenario,
                                 long n_requests, std::uint64_t seed);

}  // namespace d2dcache
