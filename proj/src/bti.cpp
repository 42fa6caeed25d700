#include "btiepi/bti.hpp"

#include <stdexcept>
#include <string>

namespace btiepi {

namespace {
constexpr double kBoundsTol = 1e-9;

void check_unit_box(std::span<const double> u) {
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] < -kBoundsTol || u[k] > 1.0 + kBoundsTol)
      throw std::domain_error("point component " + std::to_string(k + 1) + " outside [0, 1]");
  }
}
}  // namespace

double BTICut::rhs_at(std::span<const double> u) const {
  if (u.size() != coefficients.size()) throw std::invalid_argument("BTI cut: length mismatch");
  double rhs = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) rhs += coefficients[k] * u[k];
  return rhs;
}

SubtreeOfflineLengths subtree_offline_lengths(const RankTree& tree, const TimeGrid& grid) {
  const int T = tree.n;
  if (T != grid.periods()) throw std::invalid_argument("subtree offline lengths: tree/grid size mismatch");
  const SubtreeSizes sizes = subtree_sizes(tree);
  const std::vector<double> D = grid.offline_prefix();

  SubtreeOfflineLengths out;
  out.left.assign(static_cast<std::size_t>(T) + 1, 0.0);
  out.right.assign(static_cast<std::size_t>(T) + 1, 0.0);
  out.principal.assign(static_cast<std::size_t>(T) + 1, 0.0);
  for (int t = 1; t <= T; ++t) {
    out.left[t] = D[t] - (sizes.left[t] < t - 1 ? D[t - sizes.left[t]] : 0.0);
    out.right[t] = D[t + sizes.right[t] + 1] - D[t + 1];
    out.principal[t] = out.left[t] + grid.delta(t) + out.right[t];
  }
  return out;
}

BTICut coefficients(const RankTree& tree, const StartupCost& cost, const TimeGrid& grid) {
  const int T = tree.n;
  const SubtreeSizes sizes = subtree_sizes(tree);
  const SubtreeOfflineLengths len = subtree_offline_lengths(tree, grid);

  BTICut cut;
  cut.coefficients.resize(static_cast<std::size_t>(T));
  for (int t = 1; t <= T; ++t) {
    if (t + sizes.right[t] < T) {
      cut.coefficients[t - 1] =
          cost.eval(len.left[t]) + cost.eval(len.right[t]) - cost.eval(len.principal[t]);
    } else {
      cut.coefficients[t - 1] = cost.eval(len.left[t]);
    }
  }
  cut.source_tree = tree;
  return cut;
}

EnvelopeResult envelope(std::span<const double> u, const StartupCost& cost, const TimeGrid& grid) {
  if (static_cast<int>(u.size()) != grid.periods())
    throw std::invalid_argument("envelope: point/grid size mismatch");
  check_unit_box(u);
  BTICut cut = coefficients(find_cartesian_tree(u), cost, grid);
  double value = cut.rhs_at(u);
  return {value, std::move(cut)};
}

Separation separate(std::span<const double> u, double c_sigma, const StartupCost& cost,
                    const TimeGrid& grid, const SeparationOptions& opts) {
  const int T = grid.periods();
  if (static_cast<int>(u.size()) != T) throw std::invalid_argument("separate: point/grid size mismatch");
  check_unit_box(u);

  CartesianStats stats;
  RankTree tree = find_cartesian_tree(u, &stats);

  // Subtree sizes, two sweeps.
  std::vector<int> lam(static_cast<std::size_t>(T) + 1, 0);
  std::vector<int> rho(static_cast<std::size_t>(T) + 1, 0);
  long long ops = stats.pushes + stats.pops;
  for (int t = 1; t <= T; ++t, ++ops)
    if (tree.left[t]) lam[t] = lam[tree.left[t]] + t - tree.left[t];
  for (int t = T; t >= 1; --t, ++ops)
    if (tree.right[t]) rho[t] = tree.right[t] - t + rho[tree.right[t]];

  // Offline-length prefixes D[t] = Delta(t, t-1), extended by one period.
  std::vector<double> D(static_cast<std::size_t>(T) + 2, 0.0);
  D[1] = grid.pre_offline();
  for (int t = 2; t <= T + 1; ++t, ++ops) D[t] = D[t - 1] + grid.delta(t - 1);

  Separation result;
  result.cut.coefficients.resize(static_cast<std::size_t>(T));
  double rhs = 0.0;
  for (int t = 1; t <= T; ++t, ++ops) {
    const double left = D[t] - (lam[t] < t - 1 ? D[t - lam[t]] : 0.0);
    double a;
    if (t + rho[t] < T) {
      const double right = D[t + rho[t] + 1] - D[t + 1];
      a = cost.eval(left) + cost.eval(right) - cost.eval(left + grid.delta(t) + right);
    } else {
      a = cost.eval(left);
    }
    result.cut.coefficients[t - 1] = a;
    rhs += a * u[t - 1];
  }
  result.cut.source_tree = std::move(tree);
  result.rhs_at_point = rhs;
  result.violation = rhs - c_sigma;
  const double tol = opts.relative ? opts.violation_tol * std::max(1.0, std::abs(c_sigma))
                                   : opts.violation_tol;
  result.in_epigraph = result.violation <= tol;
  result.operations = ops;
  return result;
}

}  // namespace btiepi
