#pragma once

#include "d2dcache/model.hpp"

namespace d2dcache {

// Unit price offered to one user, the storage that price elicits, and the
// resulting daily payment.
struct PriceQuote {
  double unit_price = 0.0;      // dollars per GB per day
  double shared_storage = 0.0;  // GB
  double payment = 0.0;         // dollars per day
};

// The user's daily utility when sharing v GB at unit reward r:
// a * ln(b * (1 - v / c)) - rho * v + r * v. Defined for 0 <= v < c;
// sharing the whole device (v >= c) leaves no usable storage and is a
// domain error.
double user_utility(const UserProfile& user, double v, double r);

// Storage a rational user shares at reward r: 0 when r <= rho, otherwise
// max(0, c - a / (r - rho)). The result always lies in [0, c).
double best_response(const UserProfile& user, double r);

// Cheapest unit reward that elicits storage v: a / (c - v) + rho.
// Defined for 0 <= v < c.
double required_price(const UserProfile& user, double v);

// Daily payment when buying exactly v GB: required_price(v) * v.
double payment(const UserProfile& user, double v);

// Bundles the price, storage, and payment for a target storage amount.
PriceQuote quote_for_storage(const UserProfile& user, double v);

}  // namespace d2dcache
