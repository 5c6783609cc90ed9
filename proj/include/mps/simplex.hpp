#pragma once

#include <iosfwd>
#include <vector>

#include "mps/linear_model.hpp"

namespace mps {

struct ColumnOrigin {
  enum class Kind { kStructural, kSlack };
  Kind kind;
  std::size_t index;  // variable index, or standard-form row index for slacks
  double sign = 1.0;  // structural: x = shift + sign * column
};

struct RowOrigin {
  enum class Kind { kConstraint, kUpperBound };
  Kind kind;
  std::size_t index;  // constraint index or variable index
  bool negated = false;
};

/// max c.y + constant  s.t.  A y = b, y >= 0, b >= 0.
struct StandardLP {
  Matrix a;
  std::vector<double> b;
  std::vector<double> c;
  double constant = 0.0;
  std::vector<ColumnOrigin> columns;
  std::vector<RowOrigin> rows;
  std::vector<double> shift;  // per original variable
  std::size_t num_original = 0;

  /// Maps a standard-form point back to the original variable space.
  std::vector<double> to_original(std::span<const double> y) const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus s);

struct SimplexOptions {
  double pivot_tol = 1e-9;       // reduced-cost and ratio-test eligibility
  double feasibility_tol = 1e-6; // phase-one residual, relative to max(1, |b|)
  std::size_t max_iterations = 200000;
  std::size_t stall_threshold = 50;  // degenerate pivots before Bland's rule
  std::ostream* trace = nullptr;
};

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;  // original variable space
  double objective = 0.0;
  std::size_t iterations = 0;
};

StandardLP to_standard_form(const LinearModel& model);

/// Dense two-phase primal simplex. Throws kLimit when the iteration budget is
/// exhausted.
LpOutcome solve_lp(const StandardLP& lp, const SimplexOptions& opts = {});

/// Convenience: standard form, solve, and re-evaluate the objective on the
/// original model.
LpOutcome solve_lp(const LinearModel& model, const SimplexOptions& opts = {});

}  // namespace mps
