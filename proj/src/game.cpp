#include "d2dcache/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace d2dcache {

namespace {

void check_storage_domain(const UserProfile& user, double v) {
  if (!(v >= 0.0) || v >= user.c)
    throw std::domain_error("shared storage must lie in [0, c)");
}

}  // namespace

double user_utility(const UserProfile& user, double v, double r) {
  check_storage_domain(user, v);
  return user.a * std::log(user.b * (1.0 - v / user.c)) - user.rho * v + r * v;
}

double best_response(const UserProfile& user, double r) {
  if (r <= user.rho) return 0.0;
  return std::max(0.0, user.c - user.a / (r - user.rho));
}

double required_price(const UserProfile& user, double v) {
  check_storage_domain(user, v);
  return user.a / (user.c - v) + user.rho;
}

double payment(const UserProfile& user, double v) {
  return required_price(user, v) * v;
}

PriceQuote quote_for_storage(const UserProfile& user, double v) {
  PriceQuote q;
  q.unit_price = required_price(user, v);
  q.shared_storage = v;
  q.payment = q.unit_price * v;
  return q;
}

}  // namespace d2dcache
