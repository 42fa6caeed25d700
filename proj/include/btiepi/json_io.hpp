#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "btiepi/cost.hpp"
#include "btiepi/ucmodel.hpp"

namespace btiepi {

using json = nlohmann::ordered_json;

// Cost models: {"type":"exp","V":..,"f":..,"lambda":..} or
//              {"type":"table","points":[[L,c],..]}.
json to_json(const StartupCost& cost);
StartupCost cost_from_json(const json& j);

// Grids: {"T":..,"delta":[..],"pre_offline":..}; delta defaults to unit lengths,
// pre_offline to 0.
json to_json(const TimeGrid& grid);
TimeGrid grid_from_json(const json& j);

// Units carry the symbol names of the experiment section:
// {"A","B","Pmin","Pmax","RU","SU","RD","SD","startup","pre_offline"}.
json to_json(const Unit& unit);
Unit unit_from_json(const json& j);

// Instances: {"grid":..,"units":[..],"demand":[..]}.
json to_json(const UCInstance& instance);
UCInstance instance_from_json(const json& j);

/// Inline JSON, or @path to read a file.
json load_json_arg(const std::string& arg);

/// Cost spec: inline JSON, @file, or the shorthands "exp:V,f,lambda" and
/// "table:L,c;L,c;...".
StartupCost parse_cost_spec(const std::string& spec);

/// One demand value per line.
std::vector<double> load_demand_csv(const std::string& path);

}  // namespace btiepi
