#include "btiepi/cutting_plane.hpp"

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "btiepi/bti.hpp"
#include "btiepi/log.hpp"

namespace btiepi {

namespace {

std::vector<std::int64_t> quantized(int unit, const std::vector<double>& a) {
  std::vector<std::int64_t> key;
  key.reserve(a.size() + 1);
  key.push_back(unit);
  for (double v : a) key.push_back(static_cast<std::int64_t>(std::llround(v / 1e-12)));
  return key;
}

}  // namespace

CuttingPlaneResult cutting_plane_solve(UCModel& model, const UCInstance& instance,
                                       const CuttingPlaneOptions& opts) {
  if (model.formulation != Formulation::Bti || !model.startup_added)
    throw std::invalid_argument("cutting plane: model must be built in bti mode");
  const int T = model.periods;
  CuttingPlaneResult result;
  std::set<std::vector<std::int64_t>> seen;

  for (int round = 0;; ++round) {
    result.lp = solve_lp(model.lp, opts.simplex);
    if (result.lp.status != SolveStatus::Optimal) return result;
    if (round >= opts.max_rounds) {
      result.hit_round_cap = true;
      return result;
    }

    int added = 0;
    for (int i : model.bti_units) {
      const TimeGrid grid = unit_grid(instance, i);
      const Unit& un = instance.units[static_cast<std::size_t>(i - 1)];
      std::vector<double> u(static_cast<std::size_t>(T));
      for (int t = 1; t <= T; ++t) {
        double v = result.lp.x[static_cast<std::size_t>(model.u(i, t))];
        u[t - 1] = std::min(std::max(v, 0.0), 1.0);
      }
      const double c_sigma = result.lp.x[static_cast<std::size_t>(model.csum(i))];
      const Separation sep = separate(u, c_sigma, un.startup, grid);
      if (sep.violation <= opts.violation_tol) continue;
      if (!seen.insert(quantized(i, sep.cut.coefficients)).second) continue;

      std::vector<std::pair<int, double>> terms{{model.csum(i), 1.0}};
      for (int t = 1; t <= T; ++t) {
        const double a = sep.cut.coefficients[static_cast<std::size_t>(t - 1)];
        if (a != 0.0) terms.push_back({model.u(i, t), -a});
      }
      model.lp.add_row("bticut_" + std::to_string(i) + "_" + std::to_string(result.cuts_added + added),
                       std::move(terms), Sense::GE, 0.0);
      ++added;
    }
    if (added == 0) return result;
    result.cuts_added += added;
    ++result.rounds;
    log_debug("cutting plane round " + std::to_string(result.rounds) + ": added " +
              std::to_string(added) + " cuts, bound " + std::to_string(result.lp.objective));
  }
}

RelaxationBound relaxation_bound(const UCInstance& instance, Formulation formulation,
                                 const CuttingPlaneOptions& opts) {
  RelaxationBound out;
  UCModel model = build_model(instance, formulation);
  if (formulation == Formulation::Bti) {
    CuttingPlaneResult cp = cutting_plane_solve(model, instance, opts);
    out.value = cp.lp.objective;
    out.status = cp.lp.status;
    out.cuts = cp.cuts_added;
    out.rounds = cp.rounds;
  } else {
    SolveResult res = solve_lp(model.lp, opts.simplex);
    out.value = res.objective;
    out.status = res.status;
  }
  return out;
}

SolveResult mip_reference(const UCInstance& instance, const MipOptions& opts) {
  UCModel model = build_model(instance, Formulation::ThreeBin);
  return solve_mip(model.lp, opts);
}

GapReport integrality_gap(const UCInstance& instance, Formulation formulation,
                          const CuttingPlaneOptions& cp_opts, const MipOptions& mip_opts) {
  GapReport report;
  const RelaxationBound lp = relaxation_bound(instance, formulation, cp_opts);
  const SolveResult mip = mip_reference(instance, mip_opts);
  report.lp_bound = lp.value;
  report.lp_status = lp.status;
  report.cuts = lp.cuts;
  report.rounds = lp.rounds;
  report.mip_objective = mip.objective;
  report.mip_status = mip.status;
  report.gap = std::abs(mip.objective) < 1e-12 ? 0.0
                                               : (mip.objective - lp.value) / mip.objective;
  return report;
}

}  // namespace btiepi
