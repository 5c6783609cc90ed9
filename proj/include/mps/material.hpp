#pragma once

#include "mps/milp.hpp"
#include "mps/schedule.hpp"

namespace mps {

/// Lot purchases for every material and period (materials x periods).
struct PurchasePlan {
  Matrix fractional_need;  // lots consumed in the period
  Matrix purchased_lots;   // whole lots bought in the period
  Matrix leftover;         // unused lot fraction carried out of the period
  Matrix updated_need;     // need net of carried leftover; first period = need
};

struct HeuristicSolution {
  ProductionSchedule schedule;
  PurchasePlan plan;
  double model_profit = 0.0;    // objective of the fractional-material model
  double updated_profit = 0.0;  // after pricing whole lots
  ProfitBreakdown breakdown;
  MilpOutcome milp;
};

/// Lots of each material consumed per period: kg needed / lot weight.
Matrix fractional_lots(const Instance& inst, const ProductionSchedule& sched);

/// Rolls one material's purchase chain: buy the smallest number of whole lots
/// covering the need net of carried leftover, never a negative amount.
/// Every span has one entry per period.
void purchase_chain(std::span<const double> need, std::span<double> purchased,
                    std::span<double> leftover, std::span<double> updated);

PurchasePlan purchase_plan(const Matrix& fractional_need);

/// Cost of the whole lots in `plan`.
double lot_cost(const Instance& inst, const PurchasePlan& plan);

/// Profit with materials priced as whole lots bought; `plan` must be the one
/// derived from `sched`.
ProfitBreakdown updated_profit(const Instance& inst, const ProductionSchedule& sched,
                               const PurchasePlan& plan);

/// Solve the integer model, then round material needs up to whole lots.
HeuristicSolution run_heuristic(const Instance& inst, const MilpConfig& cfg = {});

std::string render_purchase_plan(const PurchasePlan& plan);

}  // namespace mps
