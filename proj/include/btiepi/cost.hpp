#pragma once

#include <utility>
#include <variant>
#include <vector>

namespace btiepi {

/// Exponential start-up cost curve: V(1 - e^(-lambda L)) + f for L > 0, and 0 at L = 0.
/// The supremum is V + f; the curve is strictly concave on L > 0.
struct ExpCurve {
  double heating_cost;  // V > 0
  double fixed_cost;    // f >= 0
  double heat_loss;     // lambda > 0
};

/// Piecewise-linear curve through breakpoints sorted by offline time, flat beyond the
/// last one. Must start at (0, 0), be nondecreasing and concave.
struct TableCurve {
  std::vector<std::pair<double, double>> points;  // (offline time, cost)
};

/// A start-up cost function CU(L): nonnegative, nondecreasing, concave, CU(0) = 0.
class StartupCost {
 public:
  static StartupCost exponential(double heating_cost, double fixed_cost, double heat_loss);
  static StartupCost tabulated(std::vector<std::pair<double, double>> points);

  /// Cost after an offline time of length L. Throws std::domain_error for L < 0.
  double eval(double offline_time) const;

  /// True when every slope decrease between consecutive segments exceeds 1e-12.
  /// Exponential curves always qualify; a table with an affine stretch never does.
  /// Facet-count and irredundancy guarantees hold only in the strict regime.
  bool strictly_concave() const { return strictly_concave_; }

  bool is_exponential() const { return std::holds_alternative<ExpCurve>(curve_); }
  /// Throws std::logic_error when the curve is tabulated.
  const ExpCurve& exp_curve() const;
  const TableCurve& table_curve() const;

 private:
  StartupCost() = default;
  std::variant<ExpCurve, TableCurve> curve_;
  bool strictly_concave_ = false;
};

/// Discretization of the modeled time range: T periods with lengths delta(1..T) and
/// the unit's offline time prior to period 1.
class TimeGrid {
 public:
  TimeGrid(std::vector<double> period_lengths, double pre_offline);
  static TimeGrid uniform(int periods, double period_length = 1.0, double pre_offline = 0.0);

  int periods() const { return static_cast<int>(delta_.size()); }
  double delta(int t) const;  // t in [1, T]
  double pre_offline() const { return pre_offline_; }

  /// Offline time before a start-up in period t after l offline periods; includes the
  /// pre-model offline time exactly when l = t - 1. Throws std::domain_error when
  /// l is outside [0, t - 1].
  double offline_length(int t, int l) const;

  /// Prefix table D with D[t] = offline_length(t, t - 1), extended to D[T + 1].
  /// Index 0 is unused.
  std::vector<double> offline_prefix() const;

 private:
  std::vector<double> delta_;
  double pre_offline_;
};

/// CU^{t,l}: start-up cost in period t after l offline periods.
double discrete_cost(const StartupCost& cost, const TimeGrid& grid, int t, int l);

}  // namespace btiepi
