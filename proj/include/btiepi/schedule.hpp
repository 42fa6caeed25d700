#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "btiepi/cost.hpp"

namespace btiepi {

/// Binary operational schedule u over T periods. Period indices are 1-based.
class Schedule {
 public:
  explicit Schedule(std::vector<std::uint8_t> on_off);
  static Schedule zeros(int periods);
  /// Parses a 0/1 string, e.g. "0111100010".
  static Schedule from_string(const std::string& bits);

  int periods() const { return static_cast<int>(on_.size()); }
  bool on(int t) const;
  void set(int t, bool value);
  std::string to_string() const;

  bool operator==(const Schedule&) const = default;

 private:
  std::vector<std::uint8_t> on_;
};

/// Number of consecutive offline periods immediately before period t (0 when t = 1
/// or the unit runs in t - 1).
int offline_before(const Schedule& u, int t);

/// Number of consecutive offline periods immediately after period t.
int offline_after(const Schedule& u, int t);

/// DCU^t(u): start-up cost incurred in period t under schedule u.
double dcu_t(const StartupCost& cost, const TimeGrid& grid, const Schedule& u, int t);

/// DCU^Sigma(u): summed start-up costs of the whole schedule.
double dcu_sum(const StartupCost& cost, const TimeGrid& grid, const Schedule& u);

/// Change of the summed start-up costs when period t switches on with l offline
/// periods before and r after:
///   CU^{t,l} + CU^{t+r+1,r} - CU^{t+r+1,l+r+1}   if t + r < T,
///   CU^{t,l}                                     otherwise.
/// Nondecreasing in l and r for concave cost, strictly increasing for strictly
/// concave cost. Throws std::domain_error on l or r out of range.
double delta_sum(const StartupCost& cost, const TimeGrid& grid, int t, int l, int r);

}  // namespace btiepi
