#include "btiepi/ucmodel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "btiepi/log.hpp"
#include "btiepi/lp_format.hpp"

namespace btiepi {

namespace {

std::string vname(const char* base, int i) { return std::string(base) + "_" + std::to_string(i); }
std::string vname(const char* base, int i, int t) {
  return std::string(base) + "_" + std::to_string(i) + "_" + std::to_string(t);
}
std::string vname(const char* base, int i, int t, int l) {
  return vname(base, i, t) + "_" + std::to_string(l);
}

}  // namespace

void validate_unit(const Unit& unit) {
  if (!(unit.p_min >= 0.0) || !(unit.p_min <= unit.p_max))
    throw std::invalid_argument("unit: requires 0 <= p_min <= p_max");
  if (!(unit.ramp_up > 0.0) || !(unit.ramp_down > 0.0))
    throw std::invalid_argument("unit: ramp rates must be positive");
  if (unit.startup_ramp < unit.p_min)
    throw std::invalid_argument("unit: startup ramp below minimal production");
  if (unit.shutdown_ramp < unit.p_min)
    throw std::invalid_argument("unit: shutdown ramp below minimal production");
  if (unit.pre_offline < 0.0) throw std::invalid_argument("unit: pre-model offline time negative");
}

TimeGrid unit_grid(const UCInstance& instance, int unit) {
  std::vector<double> delta(static_cast<std::size_t>(instance.grid.periods()));
  for (int t = 1; t <= instance.grid.periods(); ++t) delta[t - 1] = instance.grid.delta(t);
  return TimeGrid(std::move(delta), instance.units.at(static_cast<std::size_t>(unit - 1)).pre_offline);
}

void validate_instance(const UCInstance& instance) {
  if (instance.units.empty()) throw std::invalid_argument("instance: needs at least one unit");
  if (static_cast<int>(instance.demand.size()) != instance.grid.periods())
    throw std::invalid_argument("instance: demand length must match the number of periods");
  for (const Unit& u : instance.units) validate_unit(u);
  double cap = 0.0;
  for (const Unit& u : instance.units) cap += u.p_max;
  const double peak = *std::max_element(instance.demand.begin(), instance.demand.end());
  if (cap < peak)
    log_warn("instance: combined capacity " + std::to_string(cap) + " below peak demand " +
             std::to_string(peak));
}

Formulation formulation_from_string(const std::string& name) {
  if (name == "1bin") return Formulation::OneBin;
  if (name == "1bin-star" || name == "1bin*") return Formulation::OneBinStar;
  if (name == "3bin") return Formulation::ThreeBin;
  if (name == "temp") return Formulation::Temp;
  if (name == "bti") return Formulation::Bti;
  throw std::invalid_argument("unknown formulation: " + name);
}

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::OneBin: return "1bin";
    case Formulation::OneBinStar: return "1bin-star";
    case Formulation::ThreeBin: return "3bin";
    case Formulation::Temp: return "temp";
    case Formulation::Bti: return "bti";
  }
  return "?";
}

int UCModel::u(int i, int t) const { return lp.column(vname("u", i, t)); }
int UCModel::p(int i, int t) const { return lp.column(vname("p", i, t)); }
int UCModel::cp(int i, int t) const { return lp.column(vname("cp", i, t)); }
int UCModel::csum(int i) const { return lp.column(vname("csum", i)); }

UCModel build_base(const UCInstance& instance) {
  validate_instance(instance);
  UCModel model;
  model.units = static_cast<int>(instance.units.size());
  model.periods = instance.grid.periods();
  model.lp.name = "uc";
  const int I = model.units;
  const int T = model.periods;

  for (int i = 1; i <= I; ++i) {
    for (int t = 1; t <= T; ++t) model.lp.add_column(vname("u", i, t), 0.0, 1.0, 0.0, true);
    for (int t = 1; t <= T; ++t) model.lp.add_column(vname("p", i, t), 0.0, kInf, 0.0);
    for (int t = 1; t <= T; ++t) model.lp.add_column(vname("cp", i, t), 0.0, kInf, 1.0);
    model.lp.add_column(vname("csum", i), 0.0, kInf, 1.0);
  }

  for (int t = 1; t <= T; ++t) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 1; i <= I; ++i) terms.push_back({model.p(i, t), 1.0});
    model.lp.add_row("demand_" + std::to_string(t), std::move(terms), Sense::EQ,
                     instance.demand[static_cast<std::size_t>(t - 1)]);
  }
  for (int i = 1; i <= I; ++i) {
    const Unit& un = instance.units[static_cast<std::size_t>(i - 1)];
    for (int t = 1; t <= T; ++t) {
      model.lp.add_row(vname("prodcost", i, t),
                       {{model.cp(i, t), 1.0}, {model.p(i, t), -un.var_cost}, {model.u(i, t), -un.fixed_cost}},
                       Sense::EQ, 0.0);
    }
    for (int t = 1; t <= T; ++t) {
      model.lp.add_row(vname("pmin", i, t), {{model.p(i, t), 1.0}, {model.u(i, t), -un.p_min}},
                       Sense::GE, 0.0);
      model.lp.add_row(vname("pmax", i, t), {{model.p(i, t), 1.0}, {model.u(i, t), -un.p_max}},
                       Sense::LE, 0.0);
    }
    for (int t = 2; t <= T; ++t) {
      model.lp.add_row(vname("rampup", i, t),
                       {{model.p(i, t), 1.0},
                        {model.p(i, t - 1), -1.0},
                        {model.u(i, t - 1), un.startup_ramp - un.ramp_up},
                        {model.u(i, t), un.p_max - un.startup_ramp}},
                       Sense::LE, un.p_max);
    }
    for (int t = 2; t <= T; ++t) {
      model.lp.add_row(vname("rampdown", i, t),
                       {{model.p(i, t - 1), 1.0},
                        {model.p(i, t), -1.0},
                        {model.u(i, t - 1), un.p_max - un.shutdown_ramp},
                        {model.u(i, t), un.shutdown_ramp - un.ramp_down}},
                       Sense::LE, un.p_max);
    }
    for (int t = 1; t <= T - 1; ++t) {
      model.lp.add_row(vname("shutdown", i, t),
                       {{model.p(i, t), 1.0},
                        {model.u(i, t), -un.shutdown_ramp},
                        {model.u(i, t + 1), un.shutdown_ramp - un.p_max}},
                       Sense::LE, 0.0);
    }
  }
  return model;
}

namespace {

void require_clean(const UCModel& model) {
  if (model.startup_added)
    throw std::logic_error("model already carries a start-up formulation");
}

}  // namespace

void add_startup_1bin(UCModel& model, const UCInstance& instance) {
  require_clean(model);
  const int T = model.periods;
  for (int i = 1; i <= model.units; ++i) {
    const Unit& un = instance.units[static_cast<std::size_t>(i - 1)];
    const TimeGrid grid = unit_grid(instance, i);
    std::vector<int> cu(static_cast<std::size_t>(T) + 1);
    for (int t = 1; t <= T; ++t) cu[t] = model.lp.add_column(vname("cu", i, t), 0.0, kInf, 0.0);
    for (int t = 1; t <= T; ++t) {
      for (int l = 0; l <= t - 1; ++l) {
        const double c = discrete_cost(un.startup, grid, t, l);
        std::vector<std::pair<int, double>> terms{{cu[t], 1.0}, {model.u(i, t), -c}};
        for (int j = 1; j <= l; ++j) terms.push_back({model.u(i, t - j), c});
        model.lp.add_row(vname("su1b", i, t, l), std::move(terms), Sense::GE, 0.0);
      }
    }
    std::vector<std::pair<int, double>> def{{model.csum(i), 1.0}};
    for (int t = 1; t <= T; ++t) def.push_back({cu[t], -1.0});
    model.lp.add_row(vname("csumdef", i), std::move(def), Sense::EQ, 0.0);
  }
  model.formulation = Formulation::OneBin;
  model.startup_added = true;
}

void add_startup_1bin_star(UCModel& model, const UCInstance& instance) {
  require_clean(model);
  const int T = model.periods;
  for (int i = 1; i <= model.units; ++i) {
    const Unit& un = instance.units[static_cast<std::size_t>(i - 1)];
    const TimeGrid grid = unit_grid(instance, i);
    std::vector<int> cu(static_cast<std::size_t>(T) + 1);
    for (int t = 1; t <= T; ++t) cu[t] = model.lp.add_column(vname("cu", i, t), 0.0, kInf, 0.0);
    for (int t = 1; t <= T; ++t) {
      for (int l = 0; l <= t - 1; ++l) {
        const double c = discrete_cost(un.startup, grid, t, l);
        std::vector<std::pair<int, double>> terms{{cu[t], 1.0}, {model.u(i, t), -c}};
        for (int j = 1; j <= l; ++j)
          terms.push_back({model.u(i, t - j), c - discrete_cost(un.startup, grid, t, j - 1)});
        model.lp.add_row(vname("su1bs", i, t, l), std::move(terms), Sense::GE, 0.0);
      }
    }
    std::vector<std::pair<int, double>> def{{model.csum(i), 1.0}};
    for (int t = 1; t <= T; ++t) def.push_back({cu[t], -1.0});
    model.lp.add_row(vname("csumdef", i), std::move(def), Sense::EQ, 0.0);
  }
  model.formulation = Formulation::OneBinStar;
  model.startup_added = true;
}

namespace {

/// Start-up type counts per period: period 1 only the pre-model type l = 0, later
/// periods the in-model offline runs l = 1..t-1 (l = t-1 reaches back to period 1).
std::vector<int> startup_types(int t) {
  if (t == 1) return {0};
  std::vector<int> out;
  for (int l = 1; l <= t - 1; ++l) out.push_back(l);
  return out;
}

/// Indicator linking rows (start-up/shutdown vs. state changes), shared by the
/// 3-Bin and temperature formulations. Returns the v and w column indices.
std::pair<std::vector<int>, std::vector<int>> add_indicators(UCModel& model, const Unit& un,
                                                             int i) {
  const int T = model.periods;
  std::vector<int> v(static_cast<std::size_t>(T) + 1), w(static_cast<std::size_t>(T) + 1);
  for (int t = 1; t <= T; ++t) {
    v[t] = model.lp.add_column(vname("v", i, t), 0.0, kInf, 0.0);
    w[t] = model.lp.add_column(vname("w", i, t), 0.0, kInf, 0.0);
  }
  // v_1 - w_1 = u_1 when the unit starts offline, u_1 - 1 when it was running.
  model.lp.add_row(vname("ind", i, 1), {{v[1], 1.0}, {w[1], -1.0}, {model.u(i, 1), -1.0}},
                   Sense::EQ, un.pre_offline > 0.0 ? 0.0 : -1.0);
  for (int t = 2; t <= T; ++t) {
    model.lp.add_row(vname("ind", i, t),
                     {{v[t], 1.0}, {w[t], -1.0}, {model.u(i, t), -1.0}, {model.u(i, t - 1), 1.0}},
                     Sense::EQ, 0.0);
  }
  return {v, w};
}

}  // namespace

void add_startup_3bin(UCModel& model, const UCInstance& instance) {
  require_clean(model);
  const int T = model.periods;
  for (int i = 1; i <= model.units; ++i) {
    const Unit& un = instance.units[static_cast<std::size_t>(i - 1)];
    const TimeGrid grid = unit_grid(instance, i);
    auto [v, w] = add_indicators(model, un, i);
    std::vector<std::vector<int>> delta(static_cast<std::size_t>(T) + 1);
    for (int t = 1; t <= T; ++t)
      for (int l : startup_types(t))
        delta[t].push_back(model.lp.add_column(vname("delta", i, t, l), 0.0, kInf, 0.0));
    for (int t = 1; t <= T; ++t) {
      std::vector<std::pair<int, double>> terms{{v[t], 1.0}};
      for (int d : delta[t]) terms.push_back({d, -1.0});
      model.lp.add_row(vname("vtype", i, t), std::move(terms), Sense::EQ, 0.0);
    }
    for (int t = 3; t <= T; ++t) {
      const auto types = startup_types(t);
      for (std::size_t k = 0; k < types.size(); ++k) {
        const int l = types[k];
        if (l > t - 2) continue;  // the oldest type has no witnessed shutdown
        model.lp.add_row(vname("dlink", i, t, l), {{delta[t][k], 1.0}, {w[t - l], -1.0}},
                         Sense::LE, 0.0);
      }
    }
    std::vector<std::pair<int, double>> def{{model.csum(i), 1.0}};
    for (int t = 1; t <= T; ++t) {
      const auto types = startup_types(t);
      for (std::size_t k = 0; k < types.size(); ++k)
        def.push_back({delta[t][k], -discrete_cost(un.startup, grid, t, types[k])});
    }
    model.lp.add_row(vname("csumdef", i), std::move(def), Sense::EQ, 0.0);
  }
  model.formulation = Formulation::ThreeBin;
  model.startup_added = true;
}

void add_startup_temp(UCModel& model, const UCInstance& instance) {
  require_clean(model);
  const int T = model.periods;
  for (const Unit& un : instance.units)
    if (!un.startup.is_exponential())
      throw std::invalid_argument(
          "temperature formulation requires exponential start-up costs (heat loss rate)");
  for (int i = 1; i <= model.units; ++i) {
    const Unit& un = instance.units[static_cast<std::size_t>(i - 1)];
    const TimeGrid grid = unit_grid(instance, i);
    const ExpCurve& curve = un.startup.exp_curve();
    const double lam = curve.heat_loss;
    auto [v, w] = add_indicators(model, un, i);
    (void)w;
    std::vector<int> tau(static_cast<std::size_t>(T) + 1);
    std::vector<int> gamma(static_cast<std::size_t>(T));  // gamma_0 .. gamma_{T-1}
    for (int t = 1; t <= T; ++t) tau[t] = model.lp.add_column(vname("tau", i, t), 0.0, 1.0, 0.0);
    for (int t = 0; t <= T - 1; ++t)
      gamma[t] = model.lp.add_column(vname("gamma", i, t), 0.0, kInf, 0.0);

    model.lp.add_row(vname("taudef", i, 1), {{tau[1], 1.0}, {gamma[0], -1.0}}, Sense::EQ,
                     std::exp(-lam * un.pre_offline));
    for (int t = 2; t <= T; ++t) {
      const double decay = std::exp(-lam * grid.delta(t - 1));
      model.lp.add_row(vname("taudef", i, t),
                       {{tau[t], 1.0},
                        {tau[t - 1], -decay},
                        {model.u(i, t - 1), -(1.0 - decay)},
                        {gamma[t - 1], -1.0}},
                       Sense::EQ, 0.0);
    }
    for (int t = 1; t <= T; ++t)
      model.lp.add_row(vname("taulb", i, t), {{tau[t], 1.0}, {model.u(i, t), -1.0}}, Sense::GE, 0.0);
    for (int t = 1; t <= T; ++t) {
      const double full = std::exp(-lam * grid.offline_length(t, t - 1));
      model.lp.add_row(vname("rti0", i, t), {{tau[t], 1.0}, {model.u(i, t), -(1.0 - full)}},
                       Sense::GE, full);
      for (int l = 1; l <= t - 2; ++l) {
        const double part = std::exp(-lam * grid.offline_length(t, l));
        model.lp.add_row(vname("rti", i, t, l),
                         {{tau[t], 1.0}, {tau[t - l], -part}, {model.u(i, t), -(1.0 - part)}},
                         Sense::GE, 0.0);
      }
    }
    std::vector<std::pair<int, double>> def{{model.csum(i), 1.0}};
    for (int t = 1; t <= T; ++t) def.push_back({v[t], -curve.fixed_cost});
    for (int t = 0; t <= T - 1; ++t) def.push_back({gamma[t], -curve.heating_cost});
    model.lp.add_row(vname("csumdef", i), std::move(def), Sense::EQ, 0.0);
  }
  model.formulation = Formulation::Temp;
  model.startup_added = true;
}

void add_startup_bti_mode(UCModel& model, const UCInstance& instance) {
  require_clean(model);
  (void)instance;
  for (int i = 1; i <= model.units; ++i) model.bti_units.push_back(i);
  model.formulation = Formulation::Bti;
  model.startup_added = true;
}

UCModel build_model(const UCInstance& instance, Formulation formulation) {
  UCModel model = build_base(instance);
  switch (formulation) {
    case Formulation::OneBin: add_startup_1bin(model, instance); break;
    case Formulation::OneBinStar: add_startup_1bin_star(model, instance); break;
    case Formulation::ThreeBin: add_startup_3bin(model, instance); break;
    case Formulation::Temp: add_startup_temp(model, instance); break;
    case Formulation::Bti: add_startup_bti_mode(model, instance); break;
  }
  return model;
}

void emit_lp(const UCModel& model, std::ostream& out) { write_lp(out, model.lp); }

}  // namespace btiepi
