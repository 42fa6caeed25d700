#include "btiepi/lp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace btiepi {

int LinearProgram::add_column(const std::string& name, double lower, double upper,
                              double objective, bool integer) {
  if (index_.count(name)) throw std::invalid_argument("duplicate column name: " + name);
  if (lower > upper) throw std::invalid_argument("column " + name + ": lower bound above upper");
  cols.push_back({name, lower, upper, objective, integer});
  const int idx = static_cast<int>(cols.size()) - 1;
  index_.emplace(name, idx);
  return idx;
}

int LinearProgram::add_row(const std::string& name, std::vector<std::pair<int, double>> terms,
                           Sense sense, double rhs) {
  for (const auto& [col, coef] : terms) {
    (void)coef;
    if (col < 0 || col >= static_cast<int>(cols.size()))
      throw std::invalid_argument("row " + name + ": column index out of range");
  }
  rows.push_back({name, std::move(terms), sense, rhs});
  return static_cast<int>(rows.size()) - 1;
}

int LinearProgram::column(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

enum class VarStatus : unsigned char { Basic, AtLower, AtUpper, Free };

// Dense bounded-variable simplex working storage. Columns: structural, then one
// slack per row (coefficient +1, bounds encode the sense), then artificials for
// rows whose initial slack value is out of bounds.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& opts) : lp_(lp), opts_(opts) {
    n_ = static_cast<int>(lp.cols.size());
    m_ = static_cast<int>(lp.rows.size());
  }

  SolveResult run() {
    build();
    if (iterate(/*phase1=*/true) == Step::Limit) return limit_result();
    double infeas = 0.0;
    for (int j = first_artificial_; j < total_; ++j) infeas += current_value(j);
    if (infeas > opts_.feas_tol) return {SolveStatus::Infeasible, 0.0, {}, iterations_, 0};
    for (int j = first_artificial_; j < total_; ++j) lower_[j] = upper_[j] = 0.0;

    switch (iterate(/*phase1=*/false)) {
      case Step::Limit: return limit_result();
      case Step::Unbounded: return {SolveStatus::Unbounded, 0.0, {}, iterations_, 0};
      case Step::Done: break;
    }
    SolveResult res;
    res.status = SolveStatus::Optimal;
    res.iterations = iterations_;
    res.x.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      double v = current_value(j);
      v = std::min(std::max(v, lp_.cols[j].lower), lp_.cols[j].upper);
      res.x[j] = v;
    }
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += lp_.cols[j].objective * res.x[j];
    res.objective = obj;  // user sense; only the internal costs were sign-flipped
    return res;
  }

 private:
  enum class Step { Done, Unbounded, Limit };

  const LinearProgram& lp_;
  SimplexOptions opts_;
  int n_ = 0, m_ = 0;
  int total_ = 0;            // structural + slacks + artificials
  int first_artificial_ = 0;
  std::vector<double> tab_;  // m x total, row-major; always B^{-1} [A | I | R]
  std::vector<double> xb_;   // basic values per row
  std::vector<double> value_;  // nonbasic values per column
  std::vector<double> lower_, upper_, cost_;
  std::vector<VarStatus> status_;
  std::vector<int> basic_;  // column basic in each row
  std::vector<double> red_;
  long long iterations_ = 0;

  double* row(int i) { return tab_.data() + static_cast<std::size_t>(i) * total_; }

  double current_value(int j) const {
    if (status_[j] == VarStatus::Basic) {
      for (int i = 0; i < m_; ++i)
        if (basic_[i] == j) return xb_[i];
      return 0.0;
    }
    return value_[j];
  }

  void build() {
    // Row equilibration; positive scaling keeps slack bounds valid.
    std::vector<double> scale(static_cast<std::size_t>(m_), 1.0);
    for (int i = 0; i < m_; ++i) {
      double mx = 0.0;
      for (const auto& [col, coef] : lp_.rows[i].terms) {
        (void)col;
        mx = std::max(mx, std::abs(coef));
      }
      if (mx > 0.0) scale[i] = 1.0 / mx;
    }

    // First pass: residuals decide which rows need an artificial.
    const double sign = lp_.maximize ? -1.0 : 1.0;
    std::vector<double> start(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      const Column& c = lp_.cols[j];
      start[j] = std::isfinite(c.lower) ? c.lower : (std::isfinite(c.upper) ? c.upper : 0.0);
    }
    std::vector<double> residual(static_cast<std::size_t>(m_));
    std::vector<double> slack_lb(static_cast<std::size_t>(m_)), slack_ub(static_cast<std::size_t>(m_));
    std::vector<int> art_of_row(static_cast<std::size_t>(m_), -1);
    int artificials = 0;
    for (int i = 0; i < m_; ++i) {
      const Row& r = lp_.rows[i];
      double lhs = 0.0;
      for (const auto& [col, coef] : r.terms) lhs += coef * start[col];
      residual[i] = (r.rhs - lhs) * scale[i];
      slack_lb[i] = r.sense == Sense::GE ? -kInf : 0.0;
      slack_ub[i] = r.sense == Sense::LE ? kInf : 0.0;
      if (residual[i] < slack_lb[i] - opts_.feas_tol || residual[i] > slack_ub[i] + opts_.feas_tol)
        art_of_row[i] = artificials++;
    }

    first_artificial_ = n_ + m_;
    total_ = n_ + m_ + artificials;
    tab_.assign(static_cast<std::size_t>(m_) * total_, 0.0);
    lower_.resize(static_cast<std::size_t>(total_));
    upper_.resize(static_cast<std::size_t>(total_));
    cost_.assign(static_cast<std::size_t>(total_), 0.0);
    value_.assign(static_cast<std::size_t>(total_), 0.0);
    status_.assign(static_cast<std::size_t>(total_), VarStatus::AtLower);
    basic_.assign(static_cast<std::size_t>(m_), -1);
    xb_.assign(static_cast<std::size_t>(m_), 0.0);

    for (int j = 0; j < n_; ++j) {
      const Column& c = lp_.cols[j];
      lower_[j] = c.lower;
      upper_[j] = c.upper;
      cost_[j] = sign * c.objective;
      value_[j] = start[j];
      status_[j] = std::isfinite(c.lower) ? VarStatus::AtLower
                   : (std::isfinite(c.upper) ? VarStatus::AtUpper : VarStatus::Free);
    }
    for (int i = 0; i < m_; ++i) {
      for (const auto& [col, coef] : lp_.rows[i].terms) row(i)[col] += coef * scale[i];
      const int s = n_ + i;
      row(i)[s] = 1.0;
      lower_[s] = slack_lb[i];
      upper_[s] = slack_ub[i];
      if (art_of_row[i] < 0) {
        basic_[i] = s;
        status_[s] = VarStatus::Basic;
        xb_[i] = residual[i];
      } else {
        status_[s] = slack_ub[i] == 0.0 && residual[i] > 0.0 ? VarStatus::AtUpper : VarStatus::AtLower;
        if (status_[s] == VarStatus::AtUpper) value_[s] = slack_ub[i];
        else value_[s] = std::isfinite(slack_lb[i]) ? slack_lb[i] : slack_ub[i];
        const int a = first_artificial_ + art_of_row[i];
        const double viol = residual[i] - value_[s];
        row(i)[a] = viol >= 0.0 ? 1.0 : -1.0;
        if (viol < 0.0)
          for (int j = 0; j < total_; ++j) row(i)[j] = -row(i)[j];
        lower_[a] = 0.0;
        upper_[a] = kInf;
        basic_[i] = a;
        status_[a] = VarStatus::Basic;
        xb_[i] = std::abs(viol);
      }
    }
    for (int i = 0; i < m_; ++i)
      if (art_of_row[i] < 0) xb_[i] = residual[i];
  }

  void price(bool phase1) {
    red_.assign(static_cast<std::size_t>(total_), 0.0);
    std::vector<double> cb(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i)
      cb[i] = phase1 ? (basic_[i] >= first_artificial_ ? 1.0 : 0.0) : cost_[basic_[i]];
    for (int j = 0; j < total_; ++j) {
      double z = phase1 ? (j >= first_artificial_ ? 1.0 : 0.0) : cost_[j];
      for (int i = 0; i < m_; ++i) z -= cb[i] * row(i)[j];
      red_[j] = z;
    }
  }

  Step iterate(bool phase1) {
    price(phase1);
    long long max_iters = opts_.max_iterations > 0
                              ? opts_.max_iterations
                              : 100000 + 200LL * (static_cast<long long>(m_) + total_);
    int degenerate_streak = 0;
    bool bland = false;

    while (true) {
      if (iterations_++ > max_iters) return Step::Limit;

      // Entering column.
      int q = -1;
      double best_score = opts_.opt_tol;
      int direction = +1;
      for (int j = 0; j < total_; ++j) {
        if (status_[j] == VarStatus::Basic) continue;
        if (lower_[j] == upper_[j]) continue;  // fixed, includes pinned artificials
        const double r = red_[j];
        double score = 0.0;
        int dir = 0;
        if (status_[j] == VarStatus::AtLower && r < -opts_.opt_tol) {
          score = -r;
          dir = +1;
        } else if (status_[j] == VarStatus::AtUpper && r > opts_.opt_tol) {
          score = r;
          dir = -1;
        } else if (status_[j] == VarStatus::Free && std::abs(r) > opts_.opt_tol) {
          score = std::abs(r);
          dir = r < 0.0 ? +1 : -1;
        } else {
          continue;
        }
        if (bland) {
          q = j;
          direction = dir;
          break;
        }
        if (score > best_score) {
          best_score = score;
          q = j;
          direction = dir;
        }
      }
      if (q < 0) return Step::Done;

      // Ratio test: how far can x_q move in `direction`.
      double limit = kInf;
      int leave_row = -1;
      bool leave_to_upper = false;
      double own_range = (std::isfinite(lower_[q]) && std::isfinite(upper_[q]))
                             ? upper_[q] - lower_[q]
                             : kInf;
      double best_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double rate = direction * row(i)[q];
        if (std::abs(rate) <= opts_.pivot_tol) continue;
        const int k = basic_[i];
        double ratio;
        bool to_upper;
        if (rate > 0.0) {
          if (!std::isfinite(lower_[k])) continue;
          ratio = (xb_[i] - lower_[k]) / rate;
          to_upper = false;
        } else {
          if (!std::isfinite(upper_[k])) continue;
          ratio = (xb_[i] - upper_[k]) / rate;
          to_upper = true;
        }
        if (ratio < 0.0) ratio = 0.0;  // bound already crossed within tolerance
        const bool better =
            ratio < limit - 1e-12 ||
            (ratio < limit + 1e-12 &&
             (bland ? (leave_row >= 0 && k < basic_[leave_row])
                    : std::abs(rate) > best_pivot));
        if (leave_row < 0 ? ratio < limit : better) {
          limit = ratio;
          leave_row = i;
          leave_to_upper = to_upper;
          best_pivot = std::abs(rate);
        }
      }

      if (own_range < limit) {
        // Bound flip, no basis change.
        for (int i = 0; i < m_; ++i) xb_[i] -= direction * row(i)[q] * own_range;
        status_[q] = status_[q] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
        value_[q] = status_[q] == VarStatus::AtUpper ? upper_[q] : lower_[q];
        degenerate_streak = 0;
        continue;
      }
      if (leave_row < 0) return phase1 ? Step::Done : Step::Unbounded;

      const double step = limit;
      if (step <= 1e-12) {
        if (++degenerate_streak > opts_.bland_after_degenerate) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }

      // Move basics, swap q in and basic_[leave_row] out.
      for (int i = 0; i < m_; ++i) xb_[i] -= direction * row(i)[q] * step;
      const int k = basic_[leave_row];
      status_[k] = leave_to_upper ? VarStatus::AtUpper : VarStatus::AtLower;
      value_[k] = leave_to_upper ? upper_[k] : lower_[k];
      xb_[leave_row] = value_[q] + direction * step;
      basic_[leave_row] = q;
      status_[q] = VarStatus::Basic;

      // Gauss-Jordan update of the tableau and the pricing row.
      double* pr = row(leave_row);
      const double pivot = pr[q];
      for (int j = 0; j < total_; ++j) pr[j] /= pivot;
      pr[q] = 1.0;
      for (int i = 0; i < m_; ++i) {
        if (i == leave_row) continue;
        double* ri = row(i);
        const double f = ri[q];
        if (f == 0.0) continue;
        for (int j = 0; j < total_; ++j) ri[j] -= f * pr[j];
        ri[q] = 0.0;
      }
      const double rq = red_[q];
      if (rq != 0.0) {
        for (int j = 0; j < total_; ++j) red_[j] -= rq * pr[j];
      }
      red_[q] = 0.0;
    }
  }

  SolveResult limit_result() { return {SolveStatus::IterationLimit, 0.0, {}, iterations_, 0}; }
};

}  // namespace

SolveResult solve_lp(const LinearProgram& lp, const SimplexOptions& opts) {
  Simplex simplex(lp, opts);
  return simplex.run();
}

namespace {

struct BnbNode {
  double bound;
  int depth;
  long long seq;
  std::vector<std::pair<int, std::pair<double, double>>> fixes;  // col -> (lb, ub)
};

struct NodeOrder {
  bool operator()(const BnbNode& a, const BnbNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    if (a.depth != b.depth) return a.depth < b.depth;  // deeper first on ties
    return a.seq > b.seq;
  }
};

int most_fractional(const LinearProgram& lp, const std::vector<double>& x, double tol) {
  int best = -1;
  double best_dist = tol;
  for (int j = 0; j < static_cast<int>(lp.cols.size()); ++j) {
    if (!lp.cols[j].integer) continue;
    const double frac = x[j] - std::floor(x[j]);
    const double dist = std::min(frac, 1.0 - frac);
    if (dist > best_dist) {
      best_dist = dist;
      best = j;
    } else if (best >= 0 && dist == best_dist && j < best) {
      best = j;
    }
  }
  return best;
}

}  // namespace

SolveResult solve_mip(const LinearProgram& lp, const MipOptions& opts) {
  LinearProgram work = lp;
  work.maximize = false;
  if (lp.maximize)
    for (auto& c : work.cols) c.objective = -c.objective;

  SolveResult best;
  best.status = SolveStatus::Infeasible;
  bool have_incumbent = false;
  double incumbent = kInf;
  long long total_iters = 0;
  long long nodes = 0;
  long long seq = 0;

  auto apply = [&](const BnbNode& node) {
    LinearProgram sub = work;
    for (const auto& [col, bounds] : node.fixes) {
      sub.cols[col].lower = std::max(sub.cols[col].lower, bounds.first);
      sub.cols[col].upper = std::min(sub.cols[col].upper, bounds.second);
    }
    return sub;
  };

  auto try_incumbent = [&](double obj, const std::vector<double>& x) {
    if (!have_incumbent || obj < incumbent - 1e-12) {
      have_incumbent = true;
      incumbent = obj;
      best.objective = obj;
      best.x = x;
    }
  };

  // Round-and-fix heuristic: fix every integer column to the rounded relaxation
  // value and re-solve for the continuous part.
  auto round_fix = [&](const LinearProgram& sub, const std::vector<double>& x) {
    LinearProgram fixed = sub;
    for (int j = 0; j < static_cast<int>(fixed.cols.size()); ++j) {
      if (!fixed.cols[j].integer) continue;
      double v = std::round(x[j]);
      v = std::min(std::max(v, fixed.cols[j].lower), fixed.cols[j].upper);
      fixed.cols[j].lower = fixed.cols[j].upper = v;
    }
    SolveResult r = solve_lp(fixed, opts.simplex);
    total_iters += r.iterations;
    if (r.status == SolveStatus::Optimal) try_incumbent(r.objective, r.x);
  };

  std::priority_queue<BnbNode, std::vector<BnbNode>, NodeOrder> queue;
  queue.push({-kInf, 0, seq++, {}});
  bool hit_node_limit = false;

  while (!queue.empty()) {
    if (nodes >= opts.node_limit) {
      hit_node_limit = true;
      break;
    }
    BnbNode node = queue.top();
    queue.pop();
    if (have_incumbent && node.bound >= incumbent - 1e-9) continue;
    ++nodes;

    LinearProgram sub = apply(node);
    SolveResult rel = solve_lp(sub, opts.simplex);
    total_iters += rel.iterations;
    if (rel.status == SolveStatus::Infeasible) continue;
    if (rel.status == SolveStatus::Unbounded) {
      if (node.depth == 0) {
        best.status = SolveStatus::Unbounded;
        best.iterations = total_iters;
        best.nodes = nodes;
        return best;
      }
      continue;
    }
    if (rel.status == SolveStatus::IterationLimit) {
      hit_node_limit = true;
      break;
    }
    if (have_incumbent && rel.objective >= incumbent - 1e-9) continue;

    const int branch_col = most_fractional(sub, rel.x, opts.integrality_tol);
    if (branch_col < 0) {
      try_incumbent(rel.objective, rel.x);
      continue;
    }
    if (node.depth == 0) round_fix(sub, rel.x);

    const double v = rel.x[branch_col];
    BnbNode down{rel.objective, node.depth + 1, seq++, node.fixes};
    down.fixes.push_back({branch_col, {-kInf, std::floor(v)}});
    BnbNode up{rel.objective, node.depth + 1, seq++, node.fixes};
    up.fixes.push_back({branch_col, {std::ceil(v), kInf}});
    queue.push(std::move(down));
    queue.push(std::move(up));
  }

  best.iterations = total_iters;
  best.nodes = nodes;
  if (hit_node_limit) {
    best.status = SolveStatus::IterationLimit;
  } else if (have_incumbent) {
    best.status = SolveStatus::Optimal;
  }
  // `work` minimizes the (possibly negated) objective; map back to the user sense.
  if (have_incumbent) best.objective = lp.maximize ? -incumbent : incumbent;
  return best;
}

}  // namespace btiepi
