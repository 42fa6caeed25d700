#include "btiepi/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace btiepi {

json to_json(const StartupCost& cost) {
  json j;
  if (cost.is_exponential()) {
    const ExpCurve& e = cost.exp_curve();
    j["type"] = "exp";
    j["V"] = e.heating_cost;
    j["f"] = e.fixed_cost;
    j["lambda"] = e.heat_loss;
  } else {
    j["type"] = "table";
    json pts = json::array();
    for (const auto& [L, c] : cost.table_curve().points) pts.push_back({L, c});
    j["points"] = std::move(pts);
  }
  return j;
}

StartupCost cost_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "exp")
    return StartupCost::exponential(j.at("V").get<double>(), j.at("f").get<double>(),
                                    j.at("lambda").get<double>());
  if (type == "table") {
    std::vector<std::pair<double, double>> points;
    for (const auto& p : j.at("points"))
      points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return StartupCost::tabulated(std::move(points));
  }
  throw std::invalid_argument("cost model: unknown type '" + type + "'");
}

json to_json(const TimeGrid& grid) {
  json j;
  j["T"] = grid.periods();
  json delta = json::array();
  for (int t = 1; t <= grid.periods(); ++t) delta.push_back(grid.delta(t));
  j["delta"] = std::move(delta);
  j["pre_offline"] = grid.pre_offline();
  return j;
}

TimeGrid grid_from_json(const json& j) {
  const int T = j.at("T").get<int>();
  std::vector<double> delta;
  if (j.contains("delta")) {
    delta = j.at("delta").get<std::vector<double>>();
    if (static_cast<int>(delta.size()) != T)
      throw std::invalid_argument("grid: delta length must equal T");
  } else {
    delta.assign(static_cast<std::size_t>(T), 1.0);
  }
  const double pre = j.value("pre_offline", 0.0);
  return TimeGrid(std::move(delta), pre);
}

json to_json(const Unit& unit) {
  json j;
  j["A"] = unit.var_cost;
  j["B"] = unit.fixed_cost;
  j["Pmin"] = unit.p_min;
  j["Pmax"] = unit.p_max;
  j["RU"] = unit.ramp_up;
  j["SU"] = unit.startup_ramp;
  j["RD"] = unit.ramp_down;
  j["SD"] = unit.shutdown_ramp;
  j["startup"] = to_json(unit.startup);
  j["pre_offline"] = unit.pre_offline;
  return j;
}

Unit unit_from_json(const json& j) {
  Unit u;
  u.var_cost = j.at("A").get<double>();
  u.fixed_cost = j.at("B").get<double>();
  u.p_min = j.at("Pmin").get<double>();
  u.p_max = j.at("Pmax").get<double>();
  u.ramp_up = j.at("RU").get<double>();
  u.startup_ramp = j.at("SU").get<double>();
  u.ramp_down = j.at("RD").get<double>();
  u.shutdown_ramp = j.at("SD").get<double>();
  u.startup = cost_from_json(j.at("startup"));
  u.pre_offline = j.value("pre_offline", 0.0);
  validate_unit(u);
  return u;
}

json to_json(const UCInstance& instance) {
  json j;
  j["grid"] = to_json(instance.grid);
  json units = json::array();
  for (const Unit& u : instance.units) units.push_back(to_json(u));
  j["units"] = std::move(units);
  j["demand"] = instance.demand;
  return j;
}

UCInstance instance_from_json(const json& j) {
  UCInstance inst;
  inst.grid = grid_from_json(j.at("grid"));
  for (const auto& u : j.at("units")) inst.units.push_back(unit_from_json(u));
  inst.demand = j.at("demand").get<std::vector<double>>();
  validate_instance(inst);
  return inst;
}

json load_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::invalid_argument("cannot open file: " + arg.substr(1));
    return json::parse(in);
  }
  return json::parse(arg);
}

StartupCost parse_cost_spec(const std::string& spec) {
  if (spec.rfind("exp:", 0) == 0) {
    std::istringstream in(spec.substr(4));
    double V, f, lambda;
    char c1, c2;
    if (!(in >> V >> c1 >> f >> c2 >> lambda) || c1 != ',' || c2 != ',')
      throw std::invalid_argument("cost spec: expected exp:V,f,lambda");
    return StartupCost::exponential(V, f, lambda);
  }
  if (spec.rfind("table:", 0) == 0) {
    std::vector<std::pair<double, double>> points;
    std::istringstream in(spec.substr(6));
    std::string pair;
    while (std::getline(in, pair, ';')) {
      std::istringstream p(pair);
      double L, c;
      char comma;
      if (!(p >> L >> comma >> c) || comma != ',')
        throw std::invalid_argument("cost spec: expected table:L,c;L,c;...");
      points.push_back({L, c});
    }
    return StartupCost::tabulated(std::move(points));
  }
  return cost_from_json(load_json_arg(spec));
}

std::vector<double> load_demand_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open demand file: " + path);
  std::vector<double> demand;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    demand.push_back(std::stod(line.substr(a)));
  }
  if (demand.empty()) throw std::invalid_argument("demand file is empty: " + path);
  return demand;
}

}  // namespace btiepi
