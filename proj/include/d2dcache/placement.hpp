#pragma once

#include <compare>
#include <vector>

#include "d2dcache/model.hpp"

namespace d2dcache {

// One ground element: user `user` caches file `file`.
struct Element {
  int user = 0;
  int file = 0;
  auto operator<=>(const Element&) const = default;
};

// A set of (user, file) cache assignments with O(1) membership and O(1)
// per-user counts.
class Placement {
 public:
  Placement() = default;
  Placement(int n_users, int n_files);

  int n_users() const { return n_users_; }
  int n_files() const { return n_files_; }
  int size() const { return size_; }
  int count(int user) const { return counts_[user]; }

  bool contains(int user, int file) const;
  bool contains(Element e) const { return contains(e.user, e.file); }
  void add(Element e);     // throws if out of range or already present
  void remove(Element e);  // throws if out of range or absent

  // Elements in (user, file) lexicographic order.
  std::vector<Element> elements() const;

  bool operator==(const Placement& other) const {
    return n_users_ == other.n_users_ && n_files_ == other.n_files_ &&
           mask_ == other.mask_;
  }

 private:
  std::size_t index(int user, int file) const {
    return static_cast<std::size_t>(user) * n_files_ + file;
  }
  void check_range(Element e) const;

  int n_users_ = 0;
  int n_files_ = 0;
  int size_ = 0;
  std::vector<char> mask_;
  std::vector<int> counts_;
};

// Partition matroid over the ground set of (user, file) elements: a
// placement is independent when every user caches at most their quota.
class PartitionMatroid {
 public:
  explicit PartitionMatroid(std::vector<int> quotas);

  int n_users() const { return static_cast<int>(quotas_.size()); }
  int quota(int user) const { return quotas_[user]; }
  const std::vector<int>& quotas() const { return quotas_; }

  bool is_independent(const Placement& y) const;
  bool can_add(const Placement& y, Element e) const;

 private:
  std::vector<int> quotas_;
};

// Largest number of whole files a user can cache while keeping some storage
// for their own needs: max(0, ceil(c / s - 1)). When c is an integer
// multiple of s the quota is exactly c / s - 1; the division is snapped to
// an integer when within a 1e-9 relative tolerance so binary rounding in
// the inputs cannot shift the boundary cases.
int cache_quota(const UserProfile& user, double file_size_gb);

// Matroid with the per-user quotas above, clamped to n_files (a user
// cannot cache the same file twice, so larger quotas are never binding).
PartitionMatroid matroid_for(const Scenario& scenario);

// All n_users * n_files elements in lexicographic order.
std::vector<Element> ground_set(int n_users, int n_files);

}  // namespace d2dcache
