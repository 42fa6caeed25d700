#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "btiepi/cost.hpp"
#include "btiepi/lp.hpp"

namespace btiepi {

/// Thermal unit parameters for the desk-scale Unit Commitment experiment.
struct Unit {
  double var_cost = 0.0;       // A: cost per MWh
  double fixed_cost = 0.0;     // B: cost per online period
  double p_min = 0.0;          // minimal production while online
  double p_max = 0.0;          // maximal production
  double ramp_up = 0.0;        // RU
  double startup_ramp = 0.0;   // SU >= p_min
  double ramp_down = 0.0;      // RD
  double shutdown_ramp = 0.0;  // SD >= p_min
  StartupCost startup = StartupCost::exponential(1.0, 0.0, 1.0);
  double pre_offline = 0.0;  // offline time before period 1
};

void validate_unit(const Unit& unit);

struct UCInstance {
  std::vector<Unit> units;
  TimeGrid grid = TimeGrid::uniform(1);  // per-unit pre_offline overrides the grid's
  std::vector<double> demand;
};

/// Grid seen by unit i: shared period lengths, the unit's own pre-model offline time.
TimeGrid unit_grid(const UCInstance& instance, int unit);

/// Checks dimensions and unit invariants; logs a warning when the combined capacity
/// cannot cover the peak demand.
void validate_instance(const UCInstance& instance);

enum class Formulation { OneBin, OneBinStar, ThreeBin, Temp, Bti };

Formulation formulation_from_string(const std::string& name);
std::string to_string(Formulation f);

/// A built model: the LP plus name-based access to the decision variables.
/// Variables are named u_i_t, p_i_t, cp_i_t, csum_i (1-based indices); start-up
/// formulations add their own blocks.
struct UCModel {
  LinearProgram lp;
  int units = 0;
  int periods = 0;
  Formulation formulation = Formulation::Bti;
  bool startup_added = false;
  std::vector<int> bti_units;  // units marked for lazy BTI separation

  int u(int i, int t) const;
  int p(int i, int t) const;
  int cp(int i, int t) const;
  int csum(int i) const;
};

/// Base model: demand balance, production cost definition, production limits,
/// ramping and shutdown-ramp rows, binary u markers. No start-up rows yet.
UCModel build_base(const UCInstance& instance);

void add_startup_1bin(UCModel& model, const UCInstance& instance);
void add_startup_1bin_star(UCModel& model, const UCInstance& instance);
void add_startup_3bin(UCModel& model, const UCInstance& instance);
/// Temperature-based formulation; requires exponential start-up costs.
void add_startup_temp(UCModel& model, const UCInstance& instance);
/// No static rows; marks every unit for lazy separation by the cutting-plane driver.
void add_startup_bti_mode(UCModel& model, const UCInstance& instance);

UCModel build_model(const UCInstance& instance, Formulation formulation);

/// Writes the model in LP text format; round-trips through parse_lp.
void emit_lp(const UCModel& model, std::ostream& out);

}  // namespace btiepi
