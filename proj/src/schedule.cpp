#include "mps/schedule.hpp"

#include <algorithm>
#include <sstream>

#include "json_util.hpp"

namespace mps {

namespace {
constexpr double kFeasTol = 1e-6;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNegativeProduction: return "negative-production";
    case ViolationKind::kCapacityExceeded: return "capacity-exceeded";
    case ViolationKind::kNegativeInventory: return "negative-inventory";
    case ViolationKind::kTerminalInventory: return "terminal-inventory";
    case ViolationKind::kNonInteger: return "non-integer";
  }
  return "unknown";
}

std::string FeasibilityReport::describe() const {
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << to_string(v.kind);
    if (v.kind != ViolationKind::kCapacityExceeded) os << " product " << v.product;
    os << " period " << v.period << " magnitude " << json_util::format_number(v.magnitude) << "\n";
  }
  return os.str();
}

void check_shape(const Instance& inst, const ProductionSchedule& sched) {
  if (sched.x.rows() != inst.dims.n_products || sched.x.cols() != inst.dims.n_periods)
    fail(ErrorCode::kInvalidInput,
         "shape: schedule is " + std::to_string(sched.x.rows()) + "x" +
             std::to_string(sched.x.cols()) + ", instance expects " +
             std::to_string(inst.dims.n_products) + "x" + std::to_string(inst.dims.n_periods));
}

InventoryTrajectory inventory_trajectory(const Instance& inst, const ProductionSchedule& sched) {
  check_shape(inst, sched);
  InventoryTrajectory traj{Matrix(inst.dims.n_products, inst.dims.n_periods)};
  for (std::size_t i = 0; i < inst.dims.n_products; ++i) {
    double level = inst.initial_inventory[i];
    for (std::size_t t = 0; t < inst.dims.n_periods; ++t) {
      level = level + sched.x(i, t) - inst.demand(i, t);
      traj.level(i, t) = level;
    }
  }
  return traj;
}

InventoryTrajectory booked_inventory(const Instance& inst, const ProductionSchedule& sched) {
  check_shape(inst, sched);
  InventoryTrajectory traj{Matrix(inst.dims.n_products, inst.dims.n_periods)};
  for (std::size_t i = 0; i < inst.dims.n_products; ++i) {
    double level = inst.initial_inventory[i];
    for (std::size_t t = 0; t < inst.dims.n_periods; ++t) {
      level = std::max(0.0, level + sched.x(i, t) - inst.demand(i, t));
      traj.level(i, t) = level;
    }
  }
  return traj;
}

Matrix start_of_period(const Instance& inst, const InventoryTrajectory& traj) {
  Matrix s(inst.dims.n_products, inst.dims.n_periods);
  for (std::size_t i = 0; i < inst.dims.n_products; ++i) {
    s(i, 0) = inst.initial_inventory[i];
    for (std::size_t t = 1; t < inst.dims.n_periods; ++t) s(i, t) = traj.level(i, t - 1);
  }
  return s;
}

double holding_cost(const Instance& inst, const Matrix& start_inventory) {
  double cost = 0.0;
  for (std::size_t t = 0; t < inst.dims.n_periods; ++t) {
    double stock = 0.0;
    for (std::size_t i = 0; i < inst.dims.n_products; ++i) stock += start_inventory(i, t);
    cost += inst.holding_cost[t] * stock;
  }
  return cost;
}

FeasibilityReport feasibility_report(const Instance& inst, const ProductionSchedule& sched) {
  const auto traj = inventory_trajectory(inst, sched);
  const auto& d = inst.dims;
  FeasibilityReport rep;
  for (std::size_t i = 0; i < d.n_products; ++i)
    for (std::size_t t = 0; t < d.n_periods; ++t) {
      const double x = sched.x(i, t);
      if (x < -kFeasTol) rep.violations.push_back({ViolationKind::kNegativeProduction, i, t, -x});
      if (sched.integer_mode && !is_integral(x, kFeasTol))
        rep.violations.push_back({ViolationKind::kNonInteger, i, t, std::abs(x - std::round(x))});
    }
  for (std::size_t t = 0; t < d.n_periods; ++t) {
    double load = 0.0;
    for (std::size_t i = 0; i < d.n_products; ++i) load += sched.x(i, t);
    if (load > inst.capacity[t] + kFeasTol)
      rep.violations.push_back({ViolationKind::kCapacityExceeded, 0, t, load - inst.capacity[t]});
  }
  for (std::size_t i = 0; i < d.n_products; ++i) {
    for (std::size_t t = 0; t < d.n_periods; ++t)
      if (traj.level(i, t) < -kFeasTol)
        rep.violations.push_back({ViolationKind::kNegativeInventory, i, t, -traj.level(i, t)});
    const double terminal = traj.level(i, d.n_periods - 1);
    if (std::abs(terminal) > kFeasTol)
      rep.violations.push_back({ViolationKind::kTerminalInventory, i, d.n_periods - 1, std::abs(terminal)});
  }
  return rep;
}

Matrix material_requirements(const Instance& inst, const ProductionSchedule& sched) {
  check_shape(inst, sched);
  const auto& d = inst.dims;
  Matrix kg(d.n_materials, d.n_periods);
  for (std::size_t j = 0; j < d.n_materials; ++j)
    for (std::size_t t = 0; t < d.n_periods; ++t) {
      double s = 0.0;
      for (std::size_t i = 0; i < d.n_products; ++i) s += inst.consumption(j, i) * sched.x(i, t);
      kg(j, t) = s;
    }
  return kg;
}

void finalize(ProfitBreakdown& b) {
  b.profit = b.revenue - b.material_cost - b.inventory_cost - b.variable_cost - b.fixed_cost;
}

ProfitBreakdown base_profit(const Instance& inst, const ProductionSchedule& sched) {
  const auto rep = feasibility_report(inst, sched);
  if (!rep.feasible())
    fail(ErrorCode::kInfeasible, "infeasible schedule:\n" + rep.describe());
  const auto& d = inst.dims;
  ProfitBreakdown b;
  double packages = 0.0;
  for (std::size_t i = 0; i < d.n_products; ++i)
    for (std::size_t t = 0; t < d.n_periods; ++t) {
      b.revenue += inst.price[i] * sched.x(i, t);
      packages += sched.x(i, t);
    }
  b.variable_cost = inst.variable_cost * packages;
  b.fixed_cost = static_cast<double>(d.n_periods) * inst.fixed_cost;
  b.inventory_cost = holding_cost(inst, start_of_period(inst, inventory_trajectory(inst, sched)));
  return b;
}

ProfitBreakdown linear_profit(const Instance& inst, const ProductionSchedule& sched) {
  ProfitBreakdown b = base_profit(inst, sched);
  const Matrix kg = material_requirements(inst, sched);
  for (std::size_t j = 0; j < inst.dims.n_materials; ++j)
    for (std::size_t t = 0; t < inst.dims.n_periods; ++t)
      b.material_cost += inst.material_price[j] * kg(j, t);
  b.utilization = 1.0;
  finalize(b);
  return b;
}

ModelLayout model_layout(const Instance& inst) {
  return {inst.dims.n_products, inst.dims.n_periods};
}

LinearModel build_linear_model(const Instance& inst, bool integer, bool tag_inventory) {
  const auto& d = inst.dims;
  const ModelLayout lay = model_layout(inst);
  LinearModel m;

  for (std::size_t i = 0; i < d.n_products; ++i) {
    double margin = inst.price[i] - inst.variable_cost;
    for (std::size_t j = 0; j < d.n_materials; ++j)
      margin -= inst.material_price[j] * inst.consumption(j, i);
    for (std::size_t t = 0; t < d.n_periods; ++t)
      m.add_variable({"X_" + std::to_string(i) + "_" + std::to_string(t), 0.0, kInf, integer}, margin);
  }
  for (std::size_t i = 0; i < d.n_products; ++i)
    for (std::size_t t = 0; t < d.n_periods; ++t) {
      const bool terminal = t + 1 == d.n_periods;
      // End-of-period stock of t is held through period t+1.
      const double coef = terminal ? 0.0 : -inst.holding_cost[t + 1];
      m.add_variable({"I_" + std::to_string(i) + "_" + std::to_string(t), 0.0,
                      terminal ? 0.0 : kInf, integer && tag_inventory},
                     coef);
    }

  double initial_stock = 0.0;
  for (double v : inst.initial_inventory) initial_stock += v;
  m.set_objective_constant(-static_cast<double>(d.n_periods) * inst.fixed_cost -
                           inst.holding_cost[0] * initial_stock);

  for (std::size_t t = 0; t < d.n_periods; ++t) {
    Constraint c{"capacity_" + std::to_string(t), {}, Relation::kLessEqual, inst.capacity[t]};
    for (std::size_t i = 0; i < d.n_products; ++i) c.terms.push_back({lay.production(i, t), 1.0});
    m.add_constraint(std::move(c));
  }
  for (std::size_t i = 0; i < d.n_products; ++i)
    for (std::size_t t = 0; t < d.n_periods; ++t) {
      // I(i,t) - I(i,t-1) - X(i,t) = -D(i,t), with I(i,-1) the initial stock.
      Constraint c{"balance_" + std::to_string(i) + "_" + std::to_string(t), {}, Relation::kEqual,
                   -inst.demand(i, t)};
      c.terms.push_back({lay.inventory(i, t), 1.0});
      c.terms.push_back({lay.production(i, t), -1.0});
      if (t == 0)
        c.rhs += inst.initial_inventory[i];
      else
        c.terms.push_back({lay.inventory(i, t - 1), -1.0});
      m.add_constraint(std::move(c));
    }
  return m;
}

ProductionSchedule schedule_from_solution(const Instance& inst, std::span<const double> values,
                                          bool integer_mode) {
  const ModelLayout lay = model_layout(inst);
  ProductionSchedule s{Matrix(inst.dims.n_products, inst.dims.n_periods), integer_mode};
  for (std::size_t i = 0; i < inst.dims.n_products; ++i)
    for (std::size_t t = 0; t < inst.dims.n_periods; ++t) {
      double v = values[lay.production(i, t)];
      v = integer_mode ? std::round(v) : snap_to_integer(v);
      s.x(i, t) = std::max(0.0, v);
    }
  return s;
}

ProductionSchedule parse_schedule(std::string_view doc) {
  using namespace json_util;
  const json j = parse_document(doc, "schedule");
  ProductionSchedule s;
  s.integer_mode = get_bool(j, "integer_mode");
  s.x = get_matrix(j, "x");
  if (s.integer_mode)
    for (double v : s.x.data())
      if (!is_integral(v, 1e-9))
        fail(ErrorCode::kInvalidInput, "validation: integer_mode schedule has a fractional entry");
  return s;
}

std::string render_schedule(const ProductionSchedule& sched, std::string_view label) {
  using namespace json_util;
  ordered_json j;
  if (!label.empty()) j["label"] = std::string(label);
  j["integer_mode"] = sched.integer_mode;
  j["x"] = to_json(sched.x);
  return j.dump(2) + "\n";
}

}  // namespace mps
