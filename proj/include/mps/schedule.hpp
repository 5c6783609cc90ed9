#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mps/instance.hpp"
#include "mps/linear_model.hpp"

namespace mps {

/// Packages of each product made in each period (products x periods).
struct ProductionSchedule {
  Matrix x;
  bool integer_mode = true;

  friend bool operator==(const ProductionSchedule&, const ProductionSchedule&) = default;
};

/// End-of-period inventory (products x periods).
struct InventoryTrajectory {
  Matrix level;
};

enum class ViolationKind {
  kNegativeProduction,
  kCapacityExceeded,
  kNegativeInventory,
  kTerminalInventory,
  kNonInteger,
};

struct Violation {
  ViolationKind kind;
  std::size_t product;  // unused for capacity violations
  std::size_t period;
  double magnitude;
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool feasible() const noexcept { return violations.empty(); }
  std::string describe() const;
};

struct ProfitBreakdown {
  double revenue = 0.0;
  double material_cost = 0.0;
  double inventory_cost = 0.0;
  double variable_cost = 0.0;
  double fixed_cost = 0.0;
  double profit = 0.0;
  double utilization = 1.0;
  std::vector<std::string> warnings;
};

const char* to_string(ViolationKind kind);

void check_shape(const Instance& inst, const ProductionSchedule& sched);

/// Balance recursion I_t = I_{t-1} + X_t - D_t starting from the initial
/// inventory. Negative entries are returned as-is.
InventoryTrajectory inventory_trajectory(const Instance& inst, const ProductionSchedule& sched);

/// Same recursion, but a shortfall is written off instead of carried
/// (I_t = max(0, ...)). This is how stock is booked for schedules that do not
/// cover demand, e.g. published fixtures.
InventoryTrajectory booked_inventory(const Instance& inst, const ProductionSchedule& sched);

/// Inventory held at the start of each period: column 0 is the initial
/// inventory, column t is the end-of-period level of t-1.
Matrix start_of_period(const Instance& inst, const InventoryTrajectory& traj);

/// Holding cost charged on start-of-period stock.
double holding_cost(const Instance& inst, const Matrix& start_inventory);

FeasibilityReport feasibility_report(const Instance& inst, const ProductionSchedule& sched);

/// Kilograms of each material consumed per period (materials x periods).
Matrix material_requirements(const Instance& inst, const ProductionSchedule& sched);

/// Revenue, variable, fixed and holding cost; material cost left at zero.
ProfitBreakdown base_profit(const Instance& inst, const ProductionSchedule& sched);

/// Profit with materials priced per kilogram actually consumed.
ProfitBreakdown linear_profit(const Instance& inst, const ProductionSchedule& sched);

void finalize(ProfitBreakdown& b);

struct ModelLayout {
  std::size_t n_products = 0;
  std::size_t n_periods = 0;
  std::size_t production(std::size_t i, std::size_t t) const { return i * n_periods + t; }
  std::size_t inventory(std::size_t i, std::size_t t) const {
    return n_products * n_periods + i * n_periods + t;
  }
};

/// Production variables X(i,t) come first (product-major), then end-of-period
/// inventory I(i,t). Capacity rows precede balance rows.
LinearModel build_linear_model(const Instance& inst, bool integer, bool tag_inventory = false);

ModelLayout model_layout(const Instance& inst);

/// Extracts the production block of a solution vector.
ProductionSchedule schedule_from_solution(const Instance& inst, std::span<const double> values,
                                          bool integer_mode);

ProductionSchedule parse_schedule(std::string_view doc);
std::string render_schedule(const ProductionSchedule& sched, std::string_view label = {});

}  // namespace mps
