#include "mps/material.hpp"

#include <algorithm>

#include "json_util.hpp"

namespace mps {

namespace {
constexpr double kSnapTol = 1e-9;
}

Matrix fractional_lots(const Instance& inst, const ProductionSchedule& sched) {
  Matrix e = material_requirements(inst, sched);
  for (std::size_t j = 0; j < e.rows(); ++j)
    for (double& v : e.row(j)) v /= inst.lot_weight[j];
  return e;
}

void purchase_chain(std::span<const double> need, std::span<double> purchased,
                    std::span<double> leftover, std::span<double> updated) {
  double carried = 0.0;
  for (std::size_t t = 0; t < need.size(); ++t) {
    const double net = need[t] - carried;
    const double buy = std::max(0.0, std::ceil(snap_to_integer(net, kSnapTol)));
    double left = buy + carried - need[t];
    if (left < 0.0 && left > -kSnapTol) left = 0.0;
    updated[t] = net;
    purchased[t] = buy;
    leftover[t] = left;
    carried = left;
  }
}

PurchasePlan purchase_plan(const Matrix& fractional_need) {
  for (double v : fractional_need.data())
    if (!(v >= 0.0)) fail(ErrorCode::kInvalidInput, "purchase plan: negative or undefined material need");
  const std::size_t m = fractional_need.rows();
  const std::size_t q = fractional_need.cols();
  PurchasePlan plan{fractional_need, Matrix(m, q), Matrix(m, q), Matrix(m, q)};
  for (std::size_t j = 0; j < m; ++j)
    purchase_chain(fractional_need.row(j), plan.purchased_lots.row(j), plan.leftover.row(j),
                   plan.updated_need.row(j));
  return plan;
}

double lot_cost(const Instance& inst, const PurchasePlan& plan) {
  double cost = 0.0;
  for (std::size_t j = 0; j < plan.purchased_lots.rows(); ++j) {
    double lots = 0.0;
    for (double v : plan.purchased_lots.row(j)) lots += v;
    cost += inst.material_price[j] * inst.lot_weight[j] * lots;
  }
  return cost;
}

ProfitBreakdown updated_profit(const Instance& inst, const ProductionSchedule& sched,
                               const PurchasePlan& plan) {
  const Matrix need = fractional_lots(inst, sched);
  if (!need.same_shape(plan.fractional_need))
    fail(ErrorCode::kInvalidInput, "purchase plan shape does not match the schedule");
  for (std::size_t k = 0; k < need.data().size(); ++k) {
    const double a = need.data()[k];
    const double b = plan.fractional_need.data()[k];
    if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a)))
      fail(ErrorCode::kInvalidInput, "purchase plan was not derived from this schedule");
  }

  ProfitBreakdown b = base_profit(inst, sched);
  b.material_cost = lot_cost(inst, plan);

  double consumed = 0.0;
  double bought = 0.0;
  for (std::size_t j = 0; j < need.rows(); ++j) {
    double lots = 0.0;
    for (double v : plan.purchased_lots.row(j)) lots += v;
    double used = 0.0;
    for (double v : need.row(j)) used += v;
    consumed += used * inst.lot_weight[j];
    bought += lots * inst.lot_weight[j];
  }
  b.utilization = bought > 0.0 ? consumed / bought : 1.0;
  if (b.utilization < inst.utilization_floor)
    b.warnings.push_back("material utilization " + json_util::format_number(b.utilization) +
                         " is below the floor " + json_util::format_number(inst.utilization_floor));
  finalize(b);
  return b;
}

HeuristicSolution run_heuristic(const Instance& inst, const MilpConfig& cfg) {
  const LinearModel model = build_linear_model(inst, true, cfg.tag_inventory);
  HeuristicSolution sol;
  sol.milp = solve_milp(model, cfg);
  if (!sol.milp.has_incumbent()) {
    if (sol.milp.status == MilpStatus::kInfeasible)
      fail(ErrorCode::kInfeasible, "integer model is infeasible");
    fail(ErrorCode::kLimit, "node limit reached before an integer schedule was found");
  }
  sol.schedule = schedule_from_solution(inst, sol.milp.values, true);

  // Inventory integrality follows from integer data; it is checked here
  // rather than branched on.
  const auto traj = inventory_trajectory(inst, sol.schedule);
  for (double v : traj.level.data())
    if (!is_integral(v, cfg.integrality_tol)) {
      sol.breakdown.warnings.push_back("inventory is fractional (non-integer instance data)");
      break;
    }

  sol.model_profit = linear_profit(inst, sol.schedule).profit;
  sol.plan = purchase_plan(fractional_lots(inst, sol.schedule));
  auto warnings = std::move(sol.breakdown.warnings);
  sol.breakdown = updated_profit(inst, sol.schedule, sol.plan);
  sol.breakdown.warnings.insert(sol.breakdown.warnings.begin(), warnings.begin(), warnings.end());
  sol.updated_profit = sol.breakdown.profit;
  return sol;
}

std::string render_purchase_plan(const PurchasePlan& plan) {
  using namespace json_util;
  ordered_json j;
  j["fractional_need"] = to_json(plan.fractional_need);
  j["purchased_lots"] = to_json(plan.purchased_lots);
  j["leftover"] = to_json(plan.leftover);
  j["updated_need"] = to_json(plan.updated_need);
  return j.dump(2) + "\n";
}

}  // namespace mps
