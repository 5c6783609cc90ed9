#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mps/search.hpp"

namespace mps {

struct ModelReport {
  std::string name;
  ProductionSchedule schedule;
  Matrix start_inventory;                    // products x periods, as booked
  std::vector<double> production_totals;     // per period
  std::vector<double> inventory_totals;      // per period, start of period
  std::vector<double> product_totals;        // per product, whole horizon
  double inventory_cost = 0.0;
  std::optional<ProfitBreakdown> breakdown;  // absent for infeasible schedules
  FeasibilityReport feasibility;
};

struct ComparisonReport {
  std::string instance_digest;
  std::vector<std::string> product_names;
  std::vector<double> required_totals;  // per product: demand - initial inventory
  std::vector<ModelReport> models;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
};

/// Describes one schedule in report form. The profit is the lot-priced one and
/// is only filled in when the schedule is feasible.
ModelReport describe_schedule(const Instance& inst, std::string name, const ProductionSchedule& sched);

/// Heuristic, integer search and relaxed search on the same instance, in that
/// order.
ComparisonReport compare_models(const Instance& inst, const MilpConfig& milp_cfg,
                                const SearchConfig& search_cfg);

struct LabeledSchedule {
  std::string label;
  ProductionSchedule schedule;
  std::vector<std::string> notes;
};

/// Schedule document with optional "label" and "notes" fields.
LabeledSchedule parse_labeled_schedule(std::string_view doc);

/// Arithmetic-only report for given schedules (no optimization).
ComparisonReport replay(const Instance& inst, const std::vector<LabeledSchedule>& schedules);

enum class ReportFormat { kTableText, kCsv, kStructured };

ReportFormat parse_report_format(std::string_view name);

std::string render_report(const ComparisonReport& report, ReportFormat format);

/// Reads back the matrix sections of a CSV rendering, keyed by section name.
std::map<std::string, Matrix> parse_report_csv(std::string_view csv);

}  // namespace mps
