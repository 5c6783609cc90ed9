#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mps/report.hpp"
#include "support.hpp"

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(MPS_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

mps::ComparisonReport replay_fixtures() {
  const auto inst = mps::parse_instance(slurp("case_instance.json"));
  std::vector<mps::LabeledSchedule> s;
  for (const char* f : {"case_linear_schedule.json", "case_integer_nonlinear_schedule.json",
                        "case_relaxed_nonlinear_schedule.json"})
    s.push_back(mps::parse_labeled_schedule(slurp(f)));
  return mps::replay(inst, s);
}

mps::SearchConfig quick() {
  mps::SearchConfig cfg;
  cfg.starts = 3;
  cfg.budget = 2000;
  return cfg;
}

TEST(Report, FixtureReplayPeriodTotals) {
  const auto rep = replay_fixtures();
  ASSERT_EQ(rep.models.size(), 3u);
  const std::vector<double> production{12095, 20799, 20799, 19191, 20800, 20001};
  for (const auto& m : rep.models) EXPECT_EQ(m.production_totals, production) << m.name;
  const auto& lin = rep.models[0];
  EXPECT_EQ(lin.name, "integer-linear");
  EXPECT_EQ(lin.inventory_totals, (std::vector<double>{15178, 1601, 677, 0, 393, 0}));
  EXPECT_EQ(lin.inventory_cost, 53547);
  EXPECT_FALSE(lin.feasibility.feasible());
  EXPECT_FALSE(lin.breakdown.has_value());
  EXPECT_EQ(rep.models[2].inventory_cost, 53547);
  EXPECT_EQ(rep.required_totals, (std::vector<double>{13712, 21183, 19952, 16777, 18844, 25888}));
  EXPECT_FALSE(rep.notes.empty());
  EXPECT_FALSE(rep.warnings.empty());
}

TEST(Report, TextContainsTotalsLines) {
  const auto text = mps::render_report(replay_fixtures(), mps::ReportFormat::kTableText);
  EXPECT_NE(text.find("Total Cost, 53547"), std::string::npos);
  EXPECT_NE(text.find("1, 1352, 1417, 2530, 2293, 2136, 2367, 12095"), std::string::npos);
  EXPECT_NE(text.find("2, 0, 0, 1601, 0, 0, 0, 1601"), std::string::npos);
  EXPECT_NE(text.find("Profit, n/a"), std::string::npos);
}

TEST(Report, CsvReadsBackToTheReportedMatrices) {
  const auto inst = testing_support::full_scale(2);
  const auto rep = mps::compare_models(inst, {}, quick());
  const auto sections = mps::parse_report_csv(mps::render_report(rep, mps::ReportFormat::kCsv));
  for (const auto& m : rep.models) {
    const auto& sched = sections.at(m.name + "/schedule");
    const auto& inv = sections.at(m.name + "/start_inventory");
    const auto& totals = sections.at(m.name + "/period_totals");
    for (std::size_t t = 0; t < 6; ++t) {
      double p = 0.0, s = 0.0;
      for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(sched(t, i), m.schedule.x(i, t));
        EXPECT_EQ(inv(t, i), m.start_inventory(i, t));
        p += sched(t, i);
        s += inv(t, i);
      }
      EXPECT_NEAR(totals(t, 0), p, 1e-9 * std::max(1.0, p));
      EXPECT_NEAR(totals(t, 1), s, 1e-9 * std::max(1.0, s));
    }
    // Every profit figure can be recomputed from the schedule.
    const auto& summary = sections.at(m.name + "/summary");
    const auto tp = mps::true_profit(inst, m.schedule);
    EXPECT_EQ(summary(0, 5), tp.profit);
    EXPECT_EQ(summary(0, 1), tp.material_cost);
  }
}

TEST(Report, CompareOrderAndOrdering) {
  const auto inst = testing_support::full_scale(3);
  const auto rep = mps::compare_models(inst, {}, quick());
  ASSERT_EQ(rep.models.size(), 3u);
  EXPECT_EQ(rep.models[0].name, "milp-heuristic");
  EXPECT_EQ(rep.models[1].name, "nlp-integer");
  EXPECT_EQ(rep.models[2].name, "nlp-relaxed");
  for (const auto& m : rep.models) {
    ASSERT_TRUE(m.breakdown.has_value());
    EXPECT_TRUE(m.feasibility.feasible());
    EXPECT_EQ(m.product_totals, rep.required_totals);
  }
  EXPECT_GE(rep.models[1].breakdown->profit, rep.models[0].breakdown->profit);
  EXPECT_GE(rep.models[2].breakdown->profit, rep.models[1].breakdown->profit);
}

TEST(Report, StructuredIsJson) {
  const auto out = mps::render_report(replay_fixtures(), mps::ReportFormat::kStructured);
  const auto j = nlohmann::json::parse(out);
  EXPECT_EQ(j["models"].size(), 3u);
  EXPECT_EQ(j["models"][0]["inventory_cost"], 53547);
  EXPECT_EQ(j["models"][0]["feasible"], false);
  EXPECT_EQ(j["models"][0]["production_totals"][4], 20800);
}

TEST(Report, Formats) {
  EXPECT_EQ(mps::parse_report_format("csv"), mps::ReportFormat::kCsv);
  EXPECT_EQ(mps::parse_report_format("structured"), mps::ReportFormat::kStructured);
  EXPECT_EQ(mps::parse_report_format("table-text"), mps::ReportFormat::kTableText);
  EXPECT_THROW(mps::parse_report_format("xml"), mps::Error);
}

TEST(Report, LabeledScheduleSchema) {
  const auto ls = mps::parse_labeled_schedule(R"({"label": "a", "notes": ["n"], "integer_mode": true, "x": [[1]]})");
  EXPECT_EQ(ls.label, "a");
  EXPECT_EQ(ls.notes.size(), 1u);
  EXPECT_THROW(mps::parse_labeled_schedule(R"({"label": 3, "integer_mode": true, "x": [[1]]})"), mps::Error);
  EXPECT_THROW(mps::parse_labeled_schedule(R"({"notes": [1], "integer_mode": true, "x": [[1]]})"), mps::Error);
}

TEST(Report, ReplayShapeMismatch) {
  const auto inst = testing_support::full_scale(1);
  const auto ls = mps::parse_labeled_schedule(R"({"integer_mode": true, "x": [[1]]})");
  EXPECT_THROW(mps::replay(inst, {ls}), mps::Error);
}

}  // namespace
