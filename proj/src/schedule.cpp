#include "btiepi/schedule.hpp"

#include <stdexcept>

namespace btiepi {

Schedule::Schedule(std::vector<std::uint8_t> on_off) : on_(std::move(on_off)) {
  if (on_.empty()) throw std::invalid_argument("schedule: empty");
  for (auto b : on_)
    if (b != 0 && b != 1) throw std::invalid_argument("schedule: entries must be 0 or 1");
}

Schedule Schedule::zeros(int periods) {
  if (periods < 1) throw std::invalid_argument("schedule: needs at least one period");
  return Schedule(std::vector<std::uint8_t>(static_cast<std::size_t>(periods), 0));
}

Schedule Schedule::from_string(const std::string& bits) {
  std::vector<std::uint8_t> v;
  v.reserve(bits.size());
  for (char c : bits) {
    if (c == '0')
      v.push_back(0);
    else if (c == '1')
      v.push_back(1);
    else
      throw std::invalid_argument("schedule: string may contain only '0' and '1'");
  }
  return Schedule(std::move(v));
}

bool Schedule::on(int t) const {
  if (t < 1 || t > periods()) throw std::domain_error("schedule: period index out of range");
  return on_[static_cast<std::size_t>(t - 1)] != 0;
}

void Schedule::set(int t, bool value) {
  if (t < 1 || t > periods()) throw std::domain_error("schedule: period index out of range");
  on_[static_cast<std::size_t>(t - 1)] = value ? 1 : 0;
}

std::string Schedule::to_string() const {
  std::string s;
  s.reserve(on_.size());
  for (auto b : on_) s.push_back(b ? '1' : '0');
  return s;
}

int offline_before(const Schedule& u, int t) {
  if (t < 1 || t > u.periods()) throw std::domain_error("offline_before: period index out of range");
  int l = 0;
  while (t - 1 - l >= 1 && !u.on(t - 1 - l)) ++l;
  return l;
}

int offline_after(const Schedule& u, int t) {
  if (t < 1 || t > u.periods()) throw std::domain_error("offline_after: period index out of range");
  int r = 0;
  while (t + 1 + r <= u.periods() && !u.on(t + 1 + r)) ++r;
  return r;
}

double dcu_t(const StartupCost& cost, const TimeGrid& grid, const Schedule& u, int t) {
  if (!u.on(t)) return 0.0;
  return discrete_cost(cost, grid, t, offline_before(u, t));
}

double dcu_sum(const StartupCost& cost, const TimeGrid& grid, const Schedule& u) {
  double total = 0.0;
  for (int t = 1; t <= u.periods(); ++t) total += dcu_t(cost, grid, u, t);
  return total;
}

double delta_sum(const StartupCost& cost, const TimeGrid& grid, int t, int l, int r) {
  const int T = grid.periods();
  if (t < 1 || t > T) throw std::domain_error("delta_sum: period index out of range");
  if (l < 0 || l > t - 1) throw std::domain_error("delta_sum: l out of [0, t-1]");
  if (r < 0 || r > T - t) throw std::domain_error("delta_sum: r out of [0, T-t]");
  if (t + r < T) {
    return discrete_cost(cost, grid, t, l) + discrete_cost(cost, grid, t + r + 1, r) -
           discrete_cost(cost, grid, t + r + 1, l + r + 1);
  }
  return discrete_cost(cost, grid, t, l);
}

}  // namespace btiepi
