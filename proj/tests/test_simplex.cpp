#include <gtest/gtest.h>

#include <sstream>

#include "lp_cases.hpp"
#include "mps/simplex.hpp"
#include "support.hpp"

namespace {

using mps::LinearModel;
using mps::LpStatus;
using mps::Relation;

TEST(Simplex, TextbookMaximum) {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), 36
  LinearModel m;
  const auto x = m.add_variable({"x"}, 3.0);
  const auto y = m.add_variable({"y"}, 5.0);
  m.add_constraint({"a", {{x, 1}}, Relation::kLessEqual, 4});
  m.add_constraint({"b", {{y, 2}}, Relation::kLessEqual, 12});
  m.add_constraint({"c", {{x, 3}, {y, 2}}, Relation::kLessEqual, 18});
  const auto r = mps::solve_lp(m);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.values[0], 2.0, 1e-9);
  EXPECT_NEAR(r.values[1], 6.0, 1e-9);
  EXPECT_NEAR(r.objective, 36.0, 1e-9);
}

TEST(Simplex, EqualityAndGreaterRowsNeedPhaseOne) {
  // max -x - y, x + y >= 2, x - y = 1  ->  (1.5, 0.5), -2
  LinearModel m;
  const auto x = m.add_variable({"x"}, -1.0);
  const auto y = m.add_variable({"y"}, -1.0);
  m.add_constraint({"a", {{x, 1}, {y, 1}}, Relation::kGreaterEqual, 2});
  m.add_constraint({"b", {{x, 1}, {y, -1}}, Relation::kEqual, 1});
  const auto r = mps::solve_lp(m);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.values[0], 1.5, 1e-9);
  EXPECT_NEAR(r.values[1], 0.5, 1e-9);
  EXPECT_NEAR(r.objective, -2.0, 1e-9);
}

TEST(Simplex, BoundsAndFreeVariables) {
  // max x - y with -3 <= x <= 2, y free, y >= x - 10, y >= -x  ->  x = 2, y = -2
  LinearModel m;
  const auto x = m.add_variable({"x", -3.0, 2.0}, 1.0);
  const auto y = m.add_variable({"y", -mps::kInf, mps::kInf}, -1.0);
  m.add_constraint({"a", {{y, 1}, {x, -1}}, Relation::kGreaterEqual, -10});
  m.add_constraint({"b", {{y, 1}, {x, 1}}, Relation::kGreaterEqual, 0});
  const auto r = mps::solve_lp(m);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.values[0], 2.0, 1e-9);
  EXPECT_NEAR(r.values[1], -2.0, 1e-9);
  EXPECT_NEAR(r.objective, 4.0, 1e-9);
}

TEST(Simplex, UpperBoundedOnlyVariable) {
  LinearModel m;
  const auto x = m.add_variable({"x", -mps::kInf, 5.0}, 1.0);
  m.add_constraint({"a", {{x, 1}}, Relation::kGreaterEqual, -7});
  const auto r = mps::solve_lp(m);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.values[0], 5.0, 1e-12);
}

TEST(Simplex, ClassifiesInfeasible) {
  LinearModel m;
  const auto x = m.add_variable({"x"}, 1.0);
  const auto y = m.add_variable({"y"}, 1.0);
  m.add_constraint({"a", {{x, 1}, {y, 1}}, Relation::kLessEqual, 1});
  m.add_constraint({"b", {{x, 1}, {y, 1}}, Relation::kGreaterEqual, 3});
  EXPECT_EQ(mps::solve_lp(m).status, LpStatus::kInfeasible);

  LinearModel e;
  const auto z = e.add_variable({"z", 0.0, 1.0}, 1.0);
  e.add_constraint({"a", {{z, 1}}, Relation::kEqual, 2});
  EXPECT_EQ(mps::solve_lp(e).status, LpStatus::kInfeasible);
}

TEST(Simplex, ClassifiesUnbounded) {
  LinearModel m;
  const auto x = m.add_variable({"x"}, 1.0);
  const auto y = m.add_variable({"y"}, 0.0);
  m.add_constraint({"a", {{x, 1}, {y, -1}}, Relation::kLessEqual, 1});
  EXPECT_EQ(mps::solve_lp(m).status, LpStatus::kUnbounded);

  LinearModel f;
  f.add_variable({"free", -mps::kInf, mps::kInf}, -1.0);
  EXPECT_EQ(mps::solve_lp(f).status, LpStatus::kUnbounded);
}

TEST(Simplex, DegenerateCyclingExample) {
  // Beale's example cycles under pure Dantzig pricing with naive ties.
  LinearModel m;
  const auto x1 = m.add_variable({"x1"}, 0.75);
  const auto x2 = m.add_variable({"x2"}, -150.0);
  const auto x3 = m.add_variable({"x3"}, 0.02);
  const auto x4 = m.add_variable({"x4"}, -6.0);
  m.add_constraint({"a", {{x1, 0.25}, {x2, -60}, {x3, -0.04}, {x4, 9}}, Relation::kLessEqual, 0});
  m.add_constraint({"b", {{x1, 0.5}, {x2, -90}, {x3, -0.02}, {x4, 3}}, Relation::kLessEqual, 0});
  m.add_constraint({"c", {{x3, 1}}, Relation::kLessEqual, 1});
  const auto r = mps::solve_lp(m);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 0.05, 1e-9);
}

TEST(Simplex, StandardFormKeepsProvenance) {
  const auto inst = mps::case_base_instance(1);
  const auto lp = mps::to_standard_form(mps::build_linear_model(inst, true));
  // 6 capacity rows, 36 balance rows, 6 bound rows for the terminal stock.
  EXPECT_EQ(lp.a.rows(), 48u);
  EXPECT_EQ(lp.rows.size(), 48u);
  EXPECT_EQ(lp.columns.size(), lp.a.cols());
  for (double v : lp.b) EXPECT_GE(v, 0.0);
  std::vector<int> seen(lp.num_original, 0);
  for (const auto& c : lp.columns)
    if (c.kind == mps::ColumnOrigin::Kind::kStructural) ++seen[c.index];
  for (int s : seen) EXPECT_EQ(s, 1);
}

TEST(Simplex, OptimalPointSatisfiesModel) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = testing_support::full_scale(seed);
    const auto m = mps::build_linear_model(inst, false);
    const auto r = mps::solve_lp(m);
    ASSERT_EQ(r.status, LpStatus::kOptimal);
    EXPECT_LE(m.max_violation(r.values), 1e-6);
    EXPECT_NEAR(m.evaluate(r.values), r.objective, 1e-6 * std::abs(r.objective));
  }
}

TEST(Simplex, Deterministic) {
  const auto m = mps::build_linear_model(testing_support::full_scale(2), false);
  std::ostringstream t1, t2;
  mps::SimplexOptions o1, o2;
  o1.trace = &t1;
  o2.trace = &t2;
  const auto a = mps::solve_lp(m, o1);
  const auto b = mps::solve_lp(m, o2);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_FALSE(t1.str().empty());
  EXPECT_EQ(t1.str(), t2.str());
}

TEST(Simplex, IterationLimit) {
  const auto m = mps::build_linear_model(testing_support::full_scale(2), false);
  mps::SimplexOptions o;
  o.max_iterations = 2;
  try {
    mps::solve_lp(m, o);
    FAIL();
  } catch (const mps::Error& e) {
    EXPECT_EQ(e.code(), mps::ErrorCode::kLimit);
  }
}

TEST(Simplex, MatchesVertexEnumerationOnRandomLps) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto c = lp_cases::random_case(seed);
    const auto expected = lp_cases::oracle(c);
    const auto got = mps::solve_lp(c.model);
    ASSERT_EQ(got.status, expected.status) << "seed " << seed;
    if (got.status == LpStatus::kOptimal)
      EXPECT_NEAR(got.objective, expected.value, 1e-6 * std::max(1.0, std::abs(expected.value)))
          << "seed " << seed;
  }
}

}  // namespace
