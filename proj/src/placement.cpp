#include "d2dcache/placement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace d2dcache {

Placement::Placement(int n_users, int n_files)
    : n_users_(n_users), n_files_(n_files) {
  if (n_users < 0 || n_files < 0)
    throw std::invalid_argument("negative placement dimensions");
  mask_.assign(static_cast<std::size_t>(n_users) * n_files, 0);
  counts_.assign(n_users, 0);
}

void Placement::check_range(Element e) const {
  if (e.user < 0 || e.user >= n_users_ || e.file < 0 || e.file >= n_files_)
    throw std::invalid_argument("element (" + std::to_string(e.user) + "," +
                                std::to_string(e.file) + ") out of range");
}

bool Placement::contains(int user, int file) const {
  check_range({user, file});
  return mask_[index(user, file)] != 0;
}

void Placement::add(Element e) {
  check_range(e);
  char& cell = mask_[index(e.user, e.file)];
  if (cell) throw std::invalid_argument("element already present");
  cell = 1;
  ++counts_[e.user];
  ++size_;
}

void Placement::remove(Element e) {
  check_range(e);
  char& cell = mask_[index(e.user, e.file)];
  if (!cell) throw std::invalid_argument("element absent");
  cell = 0;
  --counts_[e.user];
  --size_;
}

std::vector<Element> Placement::elements() const {
  std::vector<Element> out;
  out.reserve(size_);
  for (int u = 0; u < n_users_; ++u)
    for (int f = 0; f < n_files_; ++f)
      if (mask_[index(u, f)]) out.push_back({u, f});
  return out;
}

PartitionMatroid::PartitionMatroid(std::vector<int> quotas)
    : quotas_(std::move(quotas)) {
  for (int q : quotas_)
    if (q < 0) throw std::invalid_argument("negative quota");
}

bool PartitionMatroid::is_independent(const Placement& y) const {
  if (y.n_users() != n_users())
    throw std::invalid_argument("placement user count does not match matroid");
  for (int u = 0; u < n_users(); ++u)
    if (y.count(u) > quotas_[u]) return false;
  return true;
}

bool PartitionMatroid::can_add(const Placement& y, Element e) const {
  return y.count(e.user) < quotas_[e.user];
}

int cache_quota(const UserProfile& user, double file_size_gb) {
  if (!(file_size_gb > 0))
    throw std::invalid_argument("file size must be positive");
  if (user.c < 0) throw std::invalid_argument("negative capacity");
  const double ratio = user.c / file_size_gb;
  const double nearest = std::round(ratio);
  long long quota;
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, std::abs(ratio))) {
    // c is an integer multiple of s (up to input rounding): quota c/s - 1.
    quota = static_cast<long long>(nearest) - 1;
  } else {
    quota = static_cast<long long>(std::ceil(ratio)) - 1;
  }
  return static_cast<int>(std::max(0LL, quota));
}

PartitionMatroid matroid_for(const Scenario& scenario) {
  std::vector<int> quotas(scenario.n_users());
  for (int i = 0; i < scenario.n_users(); ++i)
    quotas[i] = std::min(cache_quota(scenario.profiles[i], scenario.file_size_gb),
                         scenario.n_files());
  return PartitionMatroid(std::move(quotas));
}

std::vector<Element> ground_set(int n_users, int n_files) {
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(n_users) * n_files);
  for (int u = 0; u < n_users; ++u)
    for (int f = 0; f < n_files; ++f) out.push_back({u, f});
  return out;
}

}  // namespace d2dcache
