#include <gtest/gtest.h>

#include <set>

#include "mps/milp.hpp"
#include "mps/schedule.hpp"
#include "support.hpp"

namespace {

using testing_support::as_schedule;

mps::ProductionSchedule random_schedule(const mps::Instance& inst, std::uint64_t seed, bool integer = true) {
  mps::Rng rng(seed);
  auto x = testing_support::random_feasible(inst, rng, integer);
  EXPECT_TRUE(x.has_value());
  return as_schedule(*x, integer);
}

TEST(Schedule, TrajectoryMatchesRecursion) {
  const auto inst = testing_support::full_scale(3);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto sched = random_schedule(inst, s);
    EXPECT_EQ(mps::inventory_trajectory(inst, sched).level, testing_support::naive_inventory(inst, sched.x));
  }
}

TEST(Schedule, ConservationUnderTerminalZero) {
  const auto inst = testing_support::full_scale(4);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto sched = random_schedule(inst, s);
    for (std::size_t i = 0; i < 6; ++i) {
      double made = 0.0, demand = 0.0;
      for (std::size_t t = 0; t < 6; ++t) {
        made += sched.x(i, t);
        demand += inst.demand(i, t);
      }
      EXPECT_EQ(made, demand - inst.initial_inventory[i]);
    }
  }
}

TEST(Schedule, BookedInventoryWritesOffShortfalls) {
  mps::Instance inst = mps::generate_instance(1, {1, 1, 3});
  inst.initial_inventory = {10};
  inst.demand(0, 0) = 30;
  inst.demand(0, 1) = 5;
  inst.demand(0, 2) = 5;
  const mps::ProductionSchedule s{mps::Matrix(1, 3), true};
  mps::ProductionSchedule sched = s;
  sched.x(0, 0) = 0;
  sched.x(0, 1) = 20;
  sched.x(0, 2) = 0;
  const auto strict = mps::inventory_trajectory(inst, sched).level;
  const auto booked = mps::booked_inventory(inst, sched).level;
  EXPECT_EQ(strict(0, 0), -20);
  EXPECT_EQ(booked(0, 0), 0);
  EXPECT_EQ(booked(0, 1), 15);
  EXPECT_EQ(booked(0, 2), 10);
}

TEST(Schedule, StartOfPeriodShiftsByOne) {
  const auto inst = testing_support::full_scale(2);
  const auto sched = random_schedule(inst, 1);
  const auto traj = mps::inventory_trajectory(inst, sched);
  const auto start = mps::start_of_period(inst, traj);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(start(i, 0), inst.initial_inventory[i]);
    for (std::size_t t = 1; t < 6; ++t) EXPECT_EQ(start(i, t), traj.level(i, t - 1));
  }
}

TEST(Schedule, HoldingCostIsRateTimesStock) {
  const auto inst = testing_support::full_scale(2);
  const auto sched = random_schedule(inst, 5);
  const auto start = mps::start_of_period(inst, mps::inventory_trajectory(inst, sched));
  double stock = 0.0;
  for (double v : start.data()) stock += v;
  EXPECT_DOUBLE_EQ(mps::holding_cost(inst, start), 3.0 * stock);
  EXPECT_DOUBLE_EQ(mps::linear_profit(inst, sched).inventory_cost, 3.0 * stock);
}

TEST(Schedule, FeasibilityReportAgreesWithDirectCheck) {
  const auto inst = testing_support::full_scale(6);
  mps::Rng rng(3);
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto sched = random_schedule(inst, s);
    // Perturb half of them.
    if (s % 2) {
      const auto i = static_cast<std::size_t>(rng.uniform_int(0, 5));
      const auto t = static_cast<std::size_t>(rng.uniform_int(0, 5));
      sched.x(i, t) += static_cast<double>(rng.uniform_int(-3000, 3000));
    }
    EXPECT_EQ(mps::feasibility_report(inst, sched).feasible(), testing_support::naive_feasible(inst, sched.x))
        << "schedule " << s;
  }
}

TEST(Schedule, ViolationKinds) {
  const auto inst = testing_support::full_scale(6);
  auto sched = random_schedule(inst, 0);
  auto kinds = [&](const mps::ProductionSchedule& s) {
    std::set<mps::ViolationKind> k;
    for (const auto& v : mps::feasibility_report(inst, s).violations) k.insert(v.kind);
    return k;
  };
  auto s1 = sched;
  s1.x(0, 5) += 1;
  EXPECT_TRUE(kinds(s1).count(mps::ViolationKind::kTerminalInventory));
  auto s2 = sched;
  s2.x(0, 0) += inst.capacity[0];
  EXPECT_TRUE(kinds(s2).count(mps::ViolationKind::kCapacityExceeded));
  auto s3 = sched;
  s3.x(1, 2) = -1;
  EXPECT_TRUE(kinds(s3).count(mps::ViolationKind::kNegativeProduction));
  auto s4 = sched;
  s4.x(2, 1) += 0.5;
  s4.x(2, 2) -= 0.5;
  EXPECT_TRUE(kinds(s4).count(mps::ViolationKind::kNonInteger));
  s4.integer_mode = false;
  EXPECT_FALSE(kinds(s4).count(mps::ViolationKind::kNonInteger));
}

TEST(Schedule, MaterialRequirementsMatchNaiveProduct) {
  const auto inst = testing_support::full_scale(8);
  const auto sched = random_schedule(inst, 2);
  const auto kg = mps::material_requirements(inst, sched);
  const auto lots = testing_support::naive_lot_need(inst, sched.x);
  for (std::size_t j = 0; j < inst.dims.n_materials; ++j)
    for (std::size_t t = 0; t < 6; ++t) EXPECT_NEAR(kg(j, t), lots(j, t) * inst.lot_weight[j], 1e-9 * kg(j, t));
}

TEST(Schedule, RevenueAndVariableCostAreScheduleInvariant) {
  const auto inst = testing_support::full_scale(9);
  const auto a = mps::linear_profit(inst, random_schedule(inst, 1));
  for (std::uint64_t s = 2; s < 12; ++s) {
    const auto b = mps::linear_profit(inst, random_schedule(inst, s));
    EXPECT_NEAR(a.revenue, b.revenue, 1e-9 * a.revenue);
    EXPECT_NEAR(a.variable_cost, b.variable_cost, 1e-9 * a.variable_cost);
    EXPECT_EQ(a.fixed_cost, b.fixed_cost);
    // Profit differences come from material and inventory cost only.
    EXPECT_NEAR(a.profit - b.profit,
                (b.material_cost - a.material_cost) + (b.inventory_cost - a.inventory_cost), 1e-6);
  }
}

TEST(Schedule, InfeasibleScheduleHasNoProfit) {
  const auto inst = testing_support::full_scale(1);
  auto sched = random_schedule(inst, 1);
  sched.x(0, 0) += 1;
  try {
    mps::linear_profit(inst, sched);
    FAIL();
  } catch (const mps::Error& e) {
    EXPECT_EQ(e.code(), mps::ErrorCode::kInfeasible);
  }
}

TEST(Schedule, ShapeMismatch) {
  const auto inst = testing_support::full_scale(1);
  const mps::ProductionSchedule s{mps::Matrix(5, 6), true};
  EXPECT_THROW(mps::feasibility_report(inst, s), mps::Error);
}

TEST(Schedule, LinearModelObjectiveEqualsLinearProfit) {
  const auto inst = testing_support::full_scale(10);
  const auto model = mps::build_linear_model(inst, true);
  const auto lay = mps::model_layout(inst);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto sched = random_schedule(inst, s);
    const auto lvl = testing_support::naive_inventory(inst, sched.x);
    std::vector<double> v(model.num_variables(), 0.0);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t t = 0; t < 6; ++t) {
        v[lay.production(i, t)] = sched.x(i, t);
        v[lay.inventory(i, t)] = lvl(i, t);
      }
    EXPECT_LE(model.max_violation(v), 1e-9);
    const double profit = mps::linear_profit(inst, sched).profit;
    EXPECT_NEAR(model.evaluate(v), profit, 1e-9 * std::abs(profit));
  }
}

TEST(Schedule, LinearModelShape) {
  const auto inst = mps::case_base_instance(1);
  const auto model = mps::build_linear_model(inst, true);
  EXPECT_EQ(model.num_variables(), 72u);
  EXPECT_EQ(model.num_constraints(), 42u);
  std::size_t tagged = 0;
  for (const auto& v : model.variables()) tagged += v.integer;
  EXPECT_EQ(tagged, 36u);
  EXPECT_EQ(mps::build_linear_model(inst, true, true).variables().back().integer, true);
  // Fixed cost of six periods plus holding on the initial stock.
  EXPECT_DOUBLE_EQ(model.objective_constant(), -6 * 88800.0 - 3.0 * 15178.0);
}

TEST(Schedule, RenderParseRoundTrip) {
  const auto inst = testing_support::full_scale(1);
  const auto sched = random_schedule(inst, 3);
  EXPECT_EQ(mps::parse_schedule(mps::render_schedule(sched, "x")), sched);
  auto relaxed = random_schedule(inst, 3, false);
  EXPECT_EQ(mps::parse_schedule(mps::render_schedule(relaxed)), relaxed);
  EXPECT_THROW(mps::parse_schedule(R"({"integer_mode": true, "x": [[1.5]]})"), mps::Error);
  EXPECT_THROW(mps::parse_schedule(R"({"x": [[1]]})"), mps::Error);
  EXPECT_THROW(mps::parse_schedule(R"({"integer_mode": true, "x": [[1, 2], [3]]})"), mps::Error);
}

}  // namespace
