#include "mps/simplex.hpp"

#include <algorithm>
#include <ostream>

namespace mps {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

std::vector<double> StandardLP::to_original(std::span<const double> y) const {
  std::vector<double> x(shift.begin(), shift.end());
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (columns[k].kind == ColumnOrigin::Kind::kStructural)
      x[columns[k].index] += columns[k].sign * y[k];
  return x;
}

StandardLP to_standard_form(const LinearModel& model) {
  StandardLP lp;
  const auto& vars = model.variables();
  lp.num_original = vars.size();
  lp.shift.assign(vars.size(), 0.0);
  lp.constant = model.objective_constant();

  // Structural columns; each variable maps to one column, or two when free.
  std::vector<std::vector<std::size_t>> var_cols(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const Variable& v = vars[k];
    if (std::isfinite(v.lower)) {
      lp.shift[k] = v.lower;
      var_cols[k].push_back(lp.columns.size());
      lp.columns.push_back({ColumnOrigin::Kind::kStructural, k, 1.0});
    } else if (std::isfinite(v.upper)) {
      lp.shift[k] = v.upper;
      var_cols[k].push_back(lp.columns.size());
      lp.columns.push_back({ColumnOrigin::Kind::kStructural, k, -1.0});
    } else {
      var_cols[k].push_back(lp.columns.size());
      lp.columns.push_back({ColumnOrigin::Kind::kStructural, k, 1.0});
      var_cols[k].push_back(lp.columns.size());
      lp.columns.push_back({ColumnOrigin::Kind::kStructural, k, -1.0});
    }
  }
  const std::size_t n_struct = lp.columns.size();

  struct Row {
    std::vector<double> coef;
    Relation rel;
    double rhs;
    RowOrigin origin;
  };
  std::vector<Row> rows;

  for (std::size_t r = 0; r < model.constraints().size(); ++r) {
    const Constraint& c = model.constraints()[r];
    Row row{std::vector<double>(n_struct, 0.0), c.relation, c.rhs,
            {RowOrigin::Kind::kConstraint, r, false}};
    for (const Term& t : c.terms) {
      row.rhs -= t.coef * lp.shift[t.var];
      for (std::size_t col : var_cols[t.var]) row.coef[col] += t.coef * lp.columns[col].sign;
    }
    rows.push_back(std::move(row));
  }
  // A variable with both bounds finite keeps its lower-shifted column and
  // gains a row y <= upper - lower.
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (!std::isfinite(vars[k].lower) || !std::isfinite(vars[k].upper)) continue;
    Row row{std::vector<double>(n_struct, 0.0), Relation::kLessEqual, vars[k].upper - vars[k].lower,
            {RowOrigin::Kind::kUpperBound, k, false}};
    row.coef[var_cols[k][0]] = 1.0;
    rows.push_back(std::move(row));
  }

  for (Row& row : rows) {
    if (row.rhs < 0.0) {
      for (double& v : row.coef) v = -v;
      row.rhs = -row.rhs;
      row.origin.negated = true;
      if (row.rel == Relation::kLessEqual)
        row.rel = Relation::kGreaterEqual;
      else if (row.rel == Relation::kGreaterEqual)
        row.rel = Relation::kLessEqual;
    }
  }

  std::size_t n_slack = 0;
  for (const Row& row : rows) n_slack += row.rel != Relation::kEqual;
  const std::size_t n_cols = n_struct + n_slack;

  lp.a = Matrix(rows.size(), n_cols);
  lp.b.resize(rows.size());
  std::size_t slack_col = n_struct;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < n_struct; ++c) lp.a(r, c) = rows[r].coef[c];
    lp.b[r] = rows[r].rhs;
    lp.rows.push_back(rows[r].origin);
    if (rows[r].rel != Relation::kEqual) {
      lp.a(r, slack_col) = rows[r].rel == Relation::kLessEqual ? 1.0 : -1.0;
      lp.columns.push_back({ColumnOrigin::Kind::kSlack, r, 1.0});
      ++slack_col;
    }
  }

  lp.c.assign(n_cols, 0.0);
  const auto& obj = model.objective();
  for (std::size_t k = 0; k < vars.size(); ++k) {
    lp.constant += obj[k] * lp.shift[k];
    for (std::size_t col : var_cols[k]) lp.c[col] += obj[k] * lp.columns[col].sign;
  }
  return lp;
}

namespace {

/// Tableau with the objective row stored last, right-hand side in the last
/// column. Objective row entries are reduced costs in "z - c" form.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : t_(rows + 1, cols + 1), m_(rows), n_(cols) {}

  double& at(std::size_t r, std::size_t c) { return t_(r, c); }
  double& rhs(std::size_t r) { return t_(r, n_); }
  double& obj(std::size_t c) { return t_(m_, c); }
  double objective() const { return t_(m_, n_); }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = t_(pr, pc);
    auto prow = t_.row(pr);
    for (double& v : prow) v /= p;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      const double f = t_(r, pc);
      if (f == 0.0) continue;
      auto row = t_.row(r);
      for (std::size_t c = 0; c <= n_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
  }

 private:
  Matrix t_;
  std::size_t m_;
  std::size_t n_;
};

enum class PhaseResult { kOptimal, kUnbounded };

class Solver {
 public:
  Solver(const SimplexOptions& opts, Tableau& tab, std::vector<std::size_t>& basis)
      : opts_(opts), tab_(tab), basis_(basis) {}

  std::size_t iterations = 0;

  PhaseResult run(std::size_t eligible_cols, int phase) {
    bool bland = false;
    std::size_t stalled = 0;
    for (;;) {
      std::size_t enter = eligible_cols;
      if (bland) {
        for (std::size_t c = 0; c < eligible_cols; ++c)
          if (tab_.obj(c) < -opts_.pivot_tol) {
            enter = c;
            break;
          }
      } else {
        double best = -opts_.pivot_tol;
        for (std::size_t c = 0; c < eligible_cols; ++c)
          if (tab_.obj(c) < best) {
            best = tab_.obj(c);
            enter = c;
          }
      }
      if (enter == eligible_cols) return PhaseResult::kOptimal;

      std::size_t leave = tab_.rows();
      double best_ratio = kInf;
      for (std::size_t r = 0; r < tab_.rows(); ++r) {
        const double a = tab_.at(r, enter);
        if (a <= opts_.pivot_tol) continue;
        const double ratio = tab_.rhs(r) / a;
        // Ties go to the basic variable with the smallest index.
        if (leave == tab_.rows() || ratio < best_ratio - opts_.pivot_tol) {
          best_ratio = ratio;
          leave = r;
        } else if (ratio <= best_ratio + opts_.pivot_tol && basis_[r] < basis_[leave]) {
          best_ratio = std::min(best_ratio, ratio);
          leave = r;
        }
      }
      if (leave == tab_.rows()) return PhaseResult::kUnbounded;

      if (++iterations > opts_.max_iterations)
        fail(ErrorCode::kLimit, "simplex iteration limit (" + std::to_string(opts_.max_iterations) +
                                    ") exceeded");
      if (opts_.trace)
        *opts_.trace << "phase=" << phase << " iter=" << iterations << " enter=" << enter
                     << " leave=" << basis_[leave] << " row=" << leave << " step=" << best_ratio
                     << (bland ? " rule=bland" : " rule=dantzig") << "\n";

      tab_.pivot(leave, enter);
      basis_[leave] = enter;
      for (std::size_t r = 0; r < tab_.rows(); ++r)
        if (tab_.rhs(r) < 0.0 && tab_.rhs(r) > -opts_.pivot_tol) tab_.rhs(r) = 0.0;

      if (best_ratio <= opts_.pivot_tol) {
        if (++stalled >= opts_.stall_threshold) bland = true;
      } else {
        stalled = 0;
      }
    }
  }

 private:
  const SimplexOptions& opts_;
  Tableau& tab_;
  std::vector<std::size_t>& basis_;
};

}  // namespace

LpOutcome solve_lp(const StandardLP& lp, const SimplexOptions& opts) {
  if (!(opts.pivot_tol > 0.0) || !(opts.feasibility_tol > 0.0))
    fail(ErrorCode::kInvalidInput, "simplex tolerances must be > 0");
  const std::size_t m = lp.a.rows();
  const std::size_t n = lp.a.cols();

  // A slack with +1 already forms a unit column; other rows get an artificial.
  std::vector<std::size_t> basis(m, n);
  for (std::size_t k = 0; k < n; ++k) {
    const ColumnOrigin& co = lp.columns[k];
    if (co.kind == ColumnOrigin::Kind::kSlack && lp.a(co.index, k) > 0.0) basis[co.index] = k;
  }
  std::size_t n_art = 0;
  for (std::size_t r = 0; r < m; ++r) n_art += basis[r] == n;

  Tableau tab(m, n + n_art);
  std::size_t art = n;
  double b_scale = 1.0;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) tab.at(r, c) = lp.a(r, c);
    tab.rhs(r) = lp.b[r];
    b_scale = std::max(b_scale, std::abs(lp.b[r]));
    if (basis[r] == n) {
      tab.at(r, art) = 1.0;
      basis[r] = art++;
    }
  }

  Solver solver(opts, tab, basis);

  if (n_art > 0) {
    // Phase one: maximize -sum(artificials).
    for (std::size_t c = n; c < n + n_art; ++c) tab.obj(c) = 1.0;
    for (std::size_t r = 0; r < m; ++r)
      if (basis[r] >= n) {
        for (std::size_t c = 0; c < n + n_art; ++c) tab.obj(c) -= tab.at(r, c);
        tab.obj(n + n_art) -= tab.rhs(r);
      }
    solver.run(n + n_art, 1);
    if (tab.objective() < -opts.feasibility_tol * b_scale) {
      LpOutcome out;
      out.status = LpStatus::kInfeasible;
      out.iterations = solver.iterations;
      return out;
    }
    // Pivot zero-level artificials out where a structural entry allows it;
    // rows where none does are redundant and stay inert.
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < n) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (std::abs(tab.at(r, c)) > opts.pivot_tol) {
          tab.pivot(r, c);
          basis[r] = c;
          break;
        }
    }
  }

  // Phase two objective row.
  for (std::size_t c = 0; c <= n + n_art; ++c) tab.obj(c) = 0.0;
  for (std::size_t c = 0; c < n; ++c) tab.obj(c) = -lp.c[c];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t k = basis[r];
    const double ck = k < n ? lp.c[k] : 0.0;
    if (ck == 0.0) continue;
    for (std::size_t c = 0; c < n + n_art; ++c) tab.obj(c) += ck * tab.at(r, c);
    tab.obj(n + n_art) += ck * tab.rhs(r);
  }

  LpOutcome out;
  const PhaseResult res = solver.run(n, 2);
  out.iterations = solver.iterations;
  if (res == PhaseResult::kUnbounded) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  std::vector<double> y(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) y[basis[r]] = std::max(0.0, tab.rhs(r));
  out.status = LpStatus::kOptimal;
  out.values = lp.to_original(y);
  out.objective = lp.constant;
  for (std::size_t c = 0; c < n; ++c) out.objective += lp.c[c] * y[c];
  return out;
}

LpOutcome solve_lp(const LinearModel& model, const SimplexOptions& opts) {
  LpOutcome out = solve_lp(to_standard_form(model), opts);
  if (out.status == LpStatus::kOptimal) out.objective = model.evaluate(out.values);
  return out;
}

}  // namespace mps
