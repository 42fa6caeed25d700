#pragma once

#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace btiepi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { LE, GE, EQ };

struct Column {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double objective = 0.0;
  bool integer = false;
};

struct Row {
  std::string name;
  std::vector<std::pair<int, double>> terms;  // (column index, coefficient)
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

struct LinearProgram {
  std::string name = "model";
  bool maximize = false;
  std::vector<Column> cols;
  std::vector<Row> rows;

  int add_column(const std::string& name, double lower, double upper, double objective,
                 bool integer = false);
  int add_row(const std::string& name, std::vector<std::pair<int, double>> terms, Sense sense,
              double rhs);
  /// Index of a column by name, -1 when absent.
  int column(const std::string& name) const;

 private:
  std::unordered_map<std::string, int> index_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> x;  // one value per column when Optimal / best incumbent
  long long iterations = 0;
  long long nodes = 0;  // branch-and-bound only
};

struct SimplexOptions {
  long long max_iterations = 0;  // 0: scaled with problem size
  double feas_tol = 1e-7;
  double opt_tol = 1e-9;
  double pivot_tol = 1e-9;
  int bland_after_degenerate = 40;
};

/// Bounded-variable two-phase primal simplex on a dense tableau. Integrality flags
/// are ignored. Deterministic given the column and row order.
SolveResult solve_lp(const LinearProgram& lp, const SimplexOptions& opts = {});

struct MipOptions {
  long long node_limit = 100000;
  double integrality_tol = 1e-6;
  SimplexOptions simplex;
};

/// Best-first branch-and-bound, branching on the most fractional integer column.
SolveResult solve_mip(const LinearProgram& lp, const MipOptions& opts = {});

}  // namespace btiepi
