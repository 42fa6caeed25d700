#include "btiepi/cli.hpp"

#include <fstream>
#include <iostream>
#include <ostream>

#include <CLI11.hpp>

#include "btiepi/bti.hpp"
#include "btiepi/cutting_plane.hpp"
#include "btiepi/json_io.hpp"
#include "btiepi/log.hpp"
#include "btiepi/oracle.hpp"

namespace btiepi {

namespace {

struct GlobalOpts {
  bool pretty = false;
  std::uint64_t seed = 12345;
  int jobs = 1;
};

void print(std::ostream& out, const json& j, const GlobalOpts& opts) {
  out << (opts.pretty ? j.dump(2) : j.dump()) << "\n";
}

TimeGrid resolve_grid(const std::string& grid_arg, int T, double pre) {
  if (!grid_arg.empty()) return grid_from_json(load_json_arg(grid_arg));
  if (T < 1) throw std::invalid_argument("either --grid or --T is required");
  return TimeGrid::uniform(T, 1.0, pre);
}

UCInstance load_instance(const std::string& path, const std::string& demand_csv) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  json j = json::parse(in);
  if (!demand_csv.empty()) j["demand"] = load_demand_csv(demand_csv);
  return instance_from_json(j);
}

json census_to_json(const FacetCensus& census) {
  json j;
  j["distinct_btis"] = census.distinct_btis;
  j["facet_confirmed"] = census.facet_confirmed;
  j["trivial"] = census.trivial_facets;
  j["total"] = census.total_facets;
  j["trees"] = census.tree_count;
  j["duplicates"] = census.duplicates;
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Start-up cost epigraph toolkit: exact separation, envelope evaluation, "
               "brute-force verification, and a desk-scale unit commitment harness"};
  app.require_subcommand(1);
  GlobalOpts global;
  app.add_flag("--pretty", global.pretty, "indent JSON output");
  app.add_option("--seed", global.seed, "seed for randomized checks");
  app.add_option("--jobs", global.jobs, "worker cap for enumeration sweeps")
      ->check(CLI::Range(1, 64));

  // Shared option storage; each subcommand registers the flags it needs.
  std::string cost_arg, grid_arg, point_arg, u_arg, check_name, instance_path, demand_csv;
  std::string formulation_name, output_path = "-";
  int T = 0, n = 0, samples = 200;
  double pre = 0.0, tol = 1e-9;
  bool relative = false, certify = false, want_list = false, want_count = false;
  long long node_limit = 100000;
  int max_rounds = 200;

  auto add_cost_grid = [&](CLI::App* cmd, bool need_cost = true) {
    if (need_cost)
      cmd->add_option("--cost", cost_arg, "cost model: JSON, @file, exp:V,f,lambda or table:L,c;...")
          ->required();
    cmd->add_option("--grid", grid_arg, "grid JSON {\"T\":..,\"delta\":[..],\"pre_offline\":..}");
    cmd->add_option("--T", T, "periods of a unit-length grid (alternative to --grid)");
    cmd->add_option("--pre", pre, "pre-model offline time for --T grids");
  };

  CLI::App* sep = app.add_subcommand("separate", "separate a point from the epigraph");
  add_cost_grid(sep);
  sep->add_option("--point", point_arg, "point JSON {\"u\":[..],\"c\":..}")->required();
  sep->add_option("--tol", tol, "violation tolerance");
  sep->add_flag("--relative", relative, "scale the tolerance by max(1,|c|)");

  CLI::App* env = app.add_subcommand("envelope", "evaluate the convex envelope");
  add_cost_grid(env);
  env->add_option("--u", u_arg, "fractional point JSON array")->required();
  env->add_flag("--certify", certify, "include the certifying tree and coefficients");

  CLI::App* tre = app.add_subcommand("tree", "Cartesian tree of a vector");
  tre->add_option("--u", u_arg, "vector JSON array")->required();

  CLI::App* trs = app.add_subcommand("trees", "enumerate rank-labeled binary trees");
  trs->add_option("--n", n, "number of nodes")->required();
  trs->add_flag("--count", want_count, "report the count only (default)");
  trs->add_flag("--list", want_list, "include the tree list");

  CLI::App* fac = app.add_subcommand("facets", "facet census of the epigraph");
  add_cost_grid(fac);

  CLI::App* ora = app.add_subcommand("oracle", "brute-force verification reports");
  add_cost_grid(ora);
  ora->add_option("--check", check_name, "validity | equality | irredundancy | hrep")->required();
  ora->add_option("--samples", samples, "sample count for randomized checks");

  CLI::App* bld = app.add_subcommand("build", "build a unit commitment model and emit LP text");
  bld->add_option("--instance", instance_path, "instance JSON file")->required();
  bld->add_option("--demand", demand_csv, "demand CSV (one value per line) overriding the instance");
  bld->add_option("--formulation", formulation_name, "1bin | 1bin-star | 3bin | temp | bti")
      ->required();
  bld->add_option("--output", output_path, "output path, or - for stdout");

  CLI::App* gap = app.add_subcommand("gap", "integrality gap of a formulation");
  gap->add_option("--instance", instance_path, "instance JSON file")->required();
  gap->add_option("--demand", demand_csv, "demand CSV overriding the instance");
  gap->add_option("--formulation", formulation_name, "1bin | 1bin-star | 3bin | temp | bti")
      ->required();
  gap->add_option("--node-limit", node_limit, "branch-and-bound node limit");
  gap->add_option("--rounds", max_rounds, "cutting-plane round cap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (sep->parsed()) {
      const json point = load_json_arg(point_arg);
      const std::vector<double> u = point.at("u").get<std::vector<double>>();
      const double c = point.at("c").get<double>();
      const StartupCost cost = parse_cost_spec(cost_arg);
      TimeGrid grid = resolve_grid(grid_arg, T > 0 ? T : static_cast<int>(u.size()), pre);
      const Separation s = separate(u, c, cost, grid, {tol, relative});
      json j;
      if (s.in_epigraph) {
        j["in_epigraph"] = true;
      } else {
        j["cut"] = {{"a", s.cut.coefficients},
                    {"rhs_at_point", s.rhs_at_point},
                    {"violation", s.violation},
                    {"tree", format_tree(s.cut.source_tree)}};
      }
      print(out, j, global);
      return s.in_epigraph ? 0 : 1;
    }
    if (env->parsed()) {
      const std::vector<double> u = load_json_arg(u_arg).get<std::vector<double>>();
      const StartupCost cost = parse_cost_spec(cost_arg);
      TimeGrid grid = resolve_grid(grid_arg, T > 0 ? T : static_cast<int>(u.size()), pre);
      const EnvelopeResult res = envelope(u, cost, grid);
      json j;
      j["value"] = res.value;
      if (certify) {
        j["tree"] = format_tree(res.cut.source_tree);
        j["a"] = res.cut.coefficients;
      }
      print(out, j, global);
      return 0;
    }
    if (tre->parsed()) {
      const std::vector<double> u = load_json_arg(u_arg).get<std::vector<double>>();
      CartesianStats stats;
      const RankTree tree = find_cartesian_tree(u, &stats);
      json j;
      j["tree"] = format_tree(tree);
      j["stack_ops"] = stats.pushes + stats.pops;
      print(out, j, global);
      return 0;
    }
    if (trs->parsed()) {
      json j;
      j["n"] = n;
      j["count"] = catalan(n);
      if (want_list) {
        json list = json::array();
        for_each_tree(n, [&](const RankTree& t) { list.push_back(format_tree(t)); });
        j["trees"] = std::move(list);
      }
      print(out, j, global);
      return 0;
    }
    if (fac->parsed()) {
      const StartupCost cost = parse_cost_spec(cost_arg);
      const TimeGrid grid = resolve_grid(grid_arg, T, pre);
      print(out, census_to_json(facet_census(cost, grid, global.jobs)), global);
      return 0;
    }
    if (ora->parsed()) {
      const StartupCost cost = parse_cost_spec(cost_arg);
      const TimeGrid grid = resolve_grid(grid_arg, T, pre);
      json j;
      bool ok = false;
      if (check_name == "validity") {
        const ValidityReport r = verify_validity(cost, grid, global.jobs);
        j = {{"check", "validity"}, {"cases", r.checks}, {"violations", r.violations}};
        if (!r.ok()) j["first_counterexample"] = r.first_counterexample;
        ok = r.ok();
      } else if (check_name == "equality") {
        const EqualityReport r = verify_equality_characterization(cost, grid, global.jobs);
        j = {{"check", "equality"},
             {"cases", r.checks},
             {"if_violations", r.if_violations},
             {"only_if_violations", r.only_if_violations}};
        if (!r.ok()) j["first_counterexample"] = r.first_counterexample;
        ok = r.ok();
      } else if (check_name == "irredundancy") {
        const IrredundancyReport r = verify_irredundancy(cost, grid);
        j = {{"check", "irredundancy"}, {"ordered_pairs", r.ordered_pairs}, {"failures", r.failures}};
        if (!r.ok()) j["first_failure"] = r.first_failure;
        ok = r.ok();
      } else if (check_name == "hrep") {
        const HrepReport r = verify_hrep_completeness(cost, grid, samples, global.seed);
        j = {{"check", "hrep"}, {"samples", r.samples}, {"mismatches", r.mismatches}};
        if (!r.ok()) j["first_mismatch"] = r.first_mismatch;
        ok = r.ok();
      } else {
        throw std::invalid_argument("unknown oracle check: " + check_name);
      }
      print(out, j, global);
      return ok ? 0 : 1;
    }
    if (bld->parsed()) {
      const UCInstance instance = load_instance(instance_path, demand_csv);
      const UCModel model = build_model(instance, formulation_from_string(formulation_name));
      if (output_path == "-") {
        emit_lp(model, out);
      } else {
        std::ofstream file(output_path);
        if (!file) throw std::invalid_argument("cannot open output file: " + output_path);
        emit_lp(model, file);
        json j;
        j["columns"] = model.lp.cols.size();
        j["rows"] = model.lp.rows.size();
        j["formulation"] = to_string(model.formulation);
        j["output"] = output_path;
        print(out, j, global);
      }
      return 0;
    }
    if (gap->parsed()) {
      const UCInstance instance = load_instance(instance_path, demand_csv);
      CuttingPlaneOptions cp;
      cp.max_rounds = max_rounds;
      MipOptions mip;
      mip.node_limit = node_limit;
      const GapReport r =
          integrality_gap(instance, formulation_from_string(formulation_name), cp, mip);
      json j;
      j["lp"] = r.lp_bound;
      j["mip"] = r.mip_objective;
      j["gap"] = r.gap;
      j["cuts"] = r.cuts;
      j["rounds"] = r.rounds;
      j["lp_status"] = to_string(r.lp_status);
      j["mip_status"] = to_string(r.mip_status);
      print(out, j, global);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace btiepi
