#include "btiepi/cost.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace btiepi {

namespace {
constexpr double kSlopeTol = 1e-12;
}

StartupCost StartupCost::exponential(double heating_cost, double fixed_cost, double heat_loss) {
  if (!(heating_cost > 0.0)) throw std::invalid_argument("exponential cost: heating cost must be > 0");
  if (!(fixed_cost >= 0.0)) throw std::invalid_argument("exponential cost: fixed cost must be >= 0");
  if (!(heat_loss > 0.0)) throw std::invalid_argument("exponential cost: heat loss must be > 0");
  StartupCost c;
  c.curve_ = ExpCurve{heating_cost, fixed_cost, heat_loss};
  c.strictly_concave_ = true;
  return c;
}

StartupCost StartupCost::tabulated(std::vector<std::pair<double, double>> points) {
  if (points.empty()) throw std::invalid_argument("tabulated cost: no breakpoints");
  if (points.front().first != 0.0 || points.front().second != 0.0)
    throw std::invalid_argument("tabulated cost: first breakpoint must be (0, 0)");
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (!(points[k].first > points[k - 1].first))
      throw std::invalid_argument("tabulated cost: offline times must be strictly increasing");
    if (points[k].second < points[k - 1].second)
      throw std::invalid_argument("tabulated cost: costs must be nondecreasing");
  }
  bool strict = points.size() > 1;
  double prev_slope = 0.0;
  for (std::size_t k = 1; k < points.size(); ++k) {
    double slope = (points[k].second - points[k - 1].second) / (points[k].first - points[k - 1].first);
    if (k > 1) {
      if (slope > prev_slope + kSlopeTol)
        throw std::invalid_argument("tabulated cost: not concave (slope increases at breakpoint " +
                                    std::to_string(k) + ")");
      if (prev_slope - slope <= kSlopeTol) strict = false;
    }
    prev_slope = slope;
  }
  // A final positive-slope segment would continue past the last breakpoint; the flat
  // extrapolation keeps the curve concave. A single affine segment is not strict.
  StartupCost c;
  c.curve_ = TableCurve{std::move(points)};
  c.strictly_concave_ = strict;
  return c;
}

double StartupCost::eval(double offline_time) const {
  if (offline_time < 0.0) throw std::domain_error("startup cost: negative offline time");
  if (offline_time == 0.0) return 0.0;
  if (const auto* e = std::get_if<ExpCurve>(&curve_)) {
    return e->heating_cost * (1.0 - std::exp(-e->heat_loss * offline_time)) + e->fixed_cost;
  }
  const auto& pts = std::get<TableCurve>(curve_).points;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (offline_time <= pts[k].first) {
      const auto& [x0, y0] = pts[k - 1];
      const auto& [x1, y1] = pts[k];
      return y0 + (y1 - y0) * (offline_time - x0) / (x1 - x0);
    }
  }
  return pts.back().second;
}

const ExpCurve& StartupCost::exp_curve() const {
  if (const auto* e = std::get_if<ExpCurve>(&curve_)) return *e;
  throw std::logic_error("startup cost is not exponential");
}

const TableCurve& StartupCost::table_curve() const {
  if (const auto* t = std::get_if<TableCurve>(&curve_)) return *t;
  throw std::logic_error("startup cost is not tabulated");
}

TimeGrid::TimeGrid(std::vector<double> period_lengths, double pre_offline)
    : delta_(std::move(period_lengths)), pre_offline_(pre_offline) {
  if (delta_.empty()) throw std::invalid_argument("time grid: needs at least one period");
  for (double d : delta_)
    if (!(d > 0.0)) throw std::invalid_argument("time grid: period lengths must be > 0");
  if (pre_offline_ < 0.0) throw std::invalid_argument("time grid: pre-model offline time must be >= 0");
}

TimeGrid TimeGrid::uniform(int periods, double period_length, double pre_offline) {
  if (periods < 1) throw std::invalid_argument("time grid: needs at least one period");
  return TimeGrid(std::vector<double>(static_cast<std::size_t>(periods), period_length), pre_offline);
}

double TimeGrid::delta(int t) const {
  if (t < 1 || t > periods()) throw std::domain_error("time grid: period index out of range");
  return delta_[static_cast<std::size_t>(t - 1)];
}

double TimeGrid::offline_length(int t, int l) const {
  if (t < 1 || t > periods()) throw std::domain_error("offline length: period index out of range");
  if (l < 0 || l > t - 1) throw std::domain_error("offline length: offline count out of [0, t-1]");
  double sum = 0.0;
  for (int j = 1; j <= l; ++j) sum += delta_[static_cast<std::size_t>(t - j - 1)];
  if (l == t - 1) sum += pre_offline_;
  return sum;
}

std::vector<double> TimeGrid::offline_prefix() const {
  const int T = periods();
  std::vector<double> D(static_cast<std::size_t>(T) + 2, 0.0);
  D[1] = pre_offline_;
  for (int t = 2; t <= T + 1; ++t) D[t] = D[t - 1] + delta_[static_cast<std::size_t>(t - 2)];
  return D;
}

double discrete_cost(const StartupCost& cost, const TimeGrid& grid, int t, int l) {
  return cost.eval(grid.offline_length(t, l));
}

}  // namespace btiepi
