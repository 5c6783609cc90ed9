#include "mps/report.hpp"

#include <sstream>

#include "json_util.hpp"

namespace mps {

using json_util::format_number;

namespace {

std::vector<std::string> product_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(n <= 26 ? std::string(1, static_cast<char>('A' + i)) : "P" + std::to_string(i + 1));
  return names;
}

std::vector<double> required_totals(const Instance& inst) {
  std::vector<double> req(inst.dims.n_products, 0.0);
  for (std::size_t i = 0; i < inst.dims.n_products; ++i) {
    for (std::size_t t = 0; t < inst.dims.n_periods; ++t) req[i] += inst.demand(i, t);
    req[i] -= inst.initial_inventory[i];
  }
  return req;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += sep;
    s += v[k];
  }
  return s;
}

std::string join(std::span<const double> v, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += sep;
    s += format_number(v[k]);
  }
  return s;
}

}  // namespace

ModelReport describe_schedule(const Instance& inst, std::string name, const ProductionSchedule& sched) {
  check_shape(inst, sched);
  const auto& d = inst.dims;
  ModelReport m;
  m.name = std::move(name);
  m.schedule = sched;
  m.feasibility = feasibility_report(inst, sched);
  m.start_inventory = start_of_period(inst, booked_inventory(inst, sched));
  m.production_totals.assign(d.n_periods, 0.0);
  m.inventory_totals.assign(d.n_periods, 0.0);
  m.product_totals.assign(d.n_products, 0.0);
  for (std::size_t t = 0; t < d.n_periods; ++t)
    for (std::size_t i = 0; i < d.n_products; ++i) {
      m.production_totals[t] += sched.x(i, t);
      m.inventory_totals[t] += m.start_inventory(i, t);
      m.product_totals[i] += sched.x(i, t);
    }
  m.inventory_cost = holding_cost(inst, m.start_inventory);
  if (m.feasibility.feasible()) m.breakdown = true_profit(inst, sched);
  return m;
}

ComparisonReport compare_models(const Instance& inst, const MilpConfig& milp_cfg,
                                const SearchConfig& search_cfg) {
  ComparisonReport rep;
  rep.instance_digest = instance_digest(inst);
  rep.product_names = product_names(inst.dims.n_products);
  rep.required_totals = required_totals(inst);

  auto attribute = [](const char* model, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      throw Error(e.code(), std::string(model) + ": " + e.what());
    }
  };

  const HeuristicSolution heur = attribute("milp-heuristic", [&] { return run_heuristic(inst, milp_cfg); });
  SearchConfig int_cfg = search_cfg;
  int_cfg.integer_mode = true;
  const SearchOutcome integer = attribute("nlp-integer", [&] { return multi_start(inst, int_cfg, milp_cfg); });
  SearchConfig rel_cfg = search_cfg;
  rel_cfg.integer_mode = false;
  const ProductionSchedule incumbent[] = {integer.best};
  const SearchOutcome relaxed =
      attribute("nlp-relaxed", [&] { return multi_start(inst, rel_cfg, milp_cfg, incumbent); });

  rep.models.push_back(describe_schedule(inst, "milp-heuristic", heur.schedule));
  rep.models.push_back(describe_schedule(inst, "nlp-integer", integer.best));
  rep.models.push_back(describe_schedule(inst, "nlp-relaxed", relaxed.best));

  rep.config = {
      {"milp.integrality_tol", format_number(milp_cfg.integrality_tol)},
      {"milp.node_limit", std::to_string(milp_cfg.node_limit)},
      {"milp.gap_tol", format_number(milp_cfg.gap_tol)},
      {"search.starts", std::to_string(search_cfg.starts)},
      {"search.seed", std::to_string(search_cfg.seed)},
      {"search.budget", std::to_string(search_cfg.budget)},
      {"search.ladder", join(search_cfg.ladder, " ")},
      {"search.include_milp_start", search_cfg.include_milp_start ? "true" : "false"},
  };
  rep.notes.push_back("milp-heuristic: profit with fractional material cost " + format_number(heur.model_profit) +
                      ", branch-and-bound nodes " + std::to_string(heur.milp.nodes));
  rep.notes.push_back("revenue and variable cost depend only on horizon totals, so the models differ through "
                      "material and inventory cost");
  for (const ModelReport& m : rep.models)
    for (const std::string& w : m.breakdown->warnings) rep.warnings.push_back(m.name + ": " + w);
  return rep;
}

LabeledSchedule parse_labeled_schedule(std::string_view doc) {
  using namespace json_util;
  LabeledSchedule ls;
  ls.schedule = parse_schedule(doc);
  const json j = parse_document(doc, "schedule");
  if (j.contains("label")) {
    if (!j["label"].is_string()) fail(ErrorCode::kInvalidInput, "schema: 'label' must be a string");
    ls.label = j["label"].get<std::string>();
  }
  if (j.contains("notes")) {
    if (!j["notes"].is_array()) fail(ErrorCode::kInvalidInput, "schema: 'notes' must be an array of strings");
    for (const auto& n : j["notes"]) {
      if (!n.is_string()) fail(ErrorCode::kInvalidInput, "schema: 'notes' must be an array of strings");
      ls.notes.push_back(n.get<std::string>());
    }
  }
  return ls;
}

ComparisonReport replay(const Instance& inst, const std::vector<LabeledSchedule>& schedules) {
  ComparisonReport rep;
  rep.instance_digest = instance_digest(inst);
  rep.product_names = product_names(inst.dims.n_products);
  rep.required_totals = required_totals(inst);
  for (std::size_t k = 0; k < schedules.size(); ++k) {
    const auto& ls = schedules[k];
    std::string name = ls.label.empty() ? "schedule-" + std::to_string(k + 1) : ls.label;
    ModelReport m = describe_schedule(inst, name, ls.schedule);
    if (!m.feasibility.feasible()) {
      rep.warnings.push_back(name + ": schedule violates the model; inventory is booked with shortfalls "
                                    "written off and no profit is reported");
      std::istringstream lines(m.feasibility.describe());
      for (std::string line; std::getline(lines, line);) rep.warnings.push_back(name + ": " + line);
    } else {
      for (const std::string& w : m.breakdown->warnings) rep.warnings.push_back(name + ": " + w);
    }
    for (const std::string& n : ls.notes) rep.notes.push_back(name + ": " + n);
    rep.models.push_back(std::move(m));
  }
  rep.config = {{"mode", "replay"}};
  return rep;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "table-text" || name == "text") return ReportFormat::kTableText;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "structured" || name == "json") return ReportFormat::kStructured;
  fail(ErrorCode::kInvalidInput, "unknown report format '" + std::string(name) + "'");
}

namespace {

std::vector<std::pair<std::string, double>> summary_fields(const ModelReport& m) {
  std::vector<std::pair<std::string, double>> f;
  if (m.breakdown) {
    const ProfitBreakdown& b = *m.breakdown;
    f = {{"revenue", b.revenue},           {"material_cost", b.material_cost},
         {"inventory_cost", b.inventory_cost}, {"variable_cost", b.variable_cost},
         {"fixed_cost", b.fixed_cost},     {"profit", b.profit},
         {"utilization", b.utilization}};
  } else {
    f = {{"inventory_cost", m.inventory_cost}};
  }
  return f;
}

std::string render_text(const ComparisonReport& r) {
  std::ostringstream os;
  const std::size_t q = r.models.empty() ? 0 : r.models.front().production_totals.size();
  os << "Instance digest: " << r.instance_digest << "\n";
  for (const auto& [k, v] : r.config) os << "Config " << k << ": " << v << "\n";

  for (const ModelReport& m : r.models) {
    os << "\n== " << m.name << " ==\n";
    os << "Master schedule\n";
    os << "Period, " << join(r.product_names, ", ") << ", Total Production\n";
    for (std::size_t t = 0; t < q; ++t) {
      os << t + 1;
      for (std::size_t i = 0; i < r.product_names.size(); ++i) os << ", " << format_number(m.schedule.x(i, t));
      os << ", " << format_number(m.production_totals[t]) << "\n";
    }
    os << "Inventory levels (start of period)\n";
    os << "Period, " << join(r.product_names, ", ") << ", Total Inventory\n";
    for (std::size_t t = 0; t < q; ++t) {
      os << t + 1;
      for (std::size_t i = 0; i < r.product_names.size(); ++i)
        os << ", " << format_number(m.start_inventory(i, t));
      os << ", " << format_number(m.inventory_totals[t]) << "\n";
    }
    os << "Total Cost, " << format_number(m.inventory_cost) << "\n";
    if (m.breakdown) {
      const ProfitBreakdown& b = *m.breakdown;
      os << "Profit, " << format_number(b.profit) << "\n";
      os << "Revenue, " << format_number(b.revenue) << "\n";
      os << "Material Cost, " << format_number(b.material_cost) << "\n";
      os << "Inventory Cost, " << format_number(b.inventory_cost) << "\n";
      os << "Variable Cost, " << format_number(b.variable_cost) << "\n";
      os << "Fixed Cost, " << format_number(b.fixed_cost) << "\n";
      os << "Utilization, " << format_number(b.utilization * 100.0) << "%\n";
    } else {
      os << "Profit, n/a (infeasible schedule)\n";
    }
    os << "Horizon production, " << join(m.product_totals, ", ") << "\n";
  }
  os << "\nRequired production (demand - initial inventory), " << join(r.required_totals, ", ") << "\n";
  for (const std::string& w : r.warnings) os << "Warning: " << w << "\n";
  for (const std::string& n : r.notes) os << "Note: " << n << "\n";
  return os.str();
}

void csv_section(std::ostream& os, const std::string& name, const std::string& header,
                 const std::vector<std::vector<double>>& rows, bool period_column) {
  os << "# " << name << "\n" << header << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (period_column) os << r + 1 << ",";
    os << join(rows[r], ",") << "\n";
  }
  os << "\n";
}

std::string render_csv(const ComparisonReport& r) {
  std::ostringstream os;
  const std::string products = join(r.product_names, ",");
  csv_section(os, "instance/required_totals", products, {r.required_totals}, false);
  for (const ModelReport& m : r.models) {
    const std::size_t q = m.production_totals.size();
    std::vector<std::vector<double>> sched(q), inv(q), totals(q);
    for (std::size_t t = 0; t < q; ++t) {
      for (std::size_t i = 0; i < r.product_names.size(); ++i) {
        sched[t].push_back(m.schedule.x(i, t));
        inv[t].push_back(m.start_inventory(i, t));
      }
      totals[t] = {m.production_totals[t], m.inventory_totals[t]};
    }
    csv_section(os, m.name + "/schedule", "period," + products, sched, true);
    csv_section(os, m.name + "/start_inventory", "period," + products, inv, true);
    csv_section(os, m.name + "/period_totals", "period,production,inventory", totals, true);
    std::vector<std::string> names;
    std::vector<double> values;
    for (const auto& [k, v] : summary_fields(m)) {
      names.push_back(k);
      values.push_back(v);
    }
    csv_section(os, m.name + "/summary", join(names, ","), {values}, false);
  }
  return os.str();
}

std::string render_structured(const ComparisonReport& r) {
  using namespace json_util;
  ordered_json j;
  j["instance_digest"] = r.instance_digest;
  j["products"] = r.product_names;
  j["required_totals"] = to_json(r.required_totals);
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  j["config"] = cfg;
  ordered_json models = ordered_json::array();
  for (const ModelReport& m : r.models) {
    ordered_json mj;
    mj["name"] = m.name;
    mj["integer_mode"] = m.schedule.integer_mode;
    mj["schedule"] = to_json(m.schedule.x);
    mj["start_inventory"] = to_json(m.start_inventory);
    mj["production_totals"] = to_json(m.production_totals);
    mj["inventory_totals"] = to_json(m.inventory_totals);
    mj["product_totals"] = to_json(m.product_totals);
    mj["inventory_cost"] = number(m.inventory_cost);
    mj["feasible"] = m.feasibility.feasible();
    if (m.breakdown) {
      ordered_json b;
      for (const auto& [k, v] : summary_fields(m)) b[k] = number(v);
      mj["profit"] = b;
    }
    models.push_back(std::move(mj));
  }
  j["models"] = models;
  j["warnings"] = r.warnings;
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

}  // namespace

std::string render_report(const ComparisonReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kTableText: return render_text(report);
    case ReportFormat::kCsv: return render_csv(report);
    case ReportFormat::kStructured: return render_structured(report);
  }
  fail(ErrorCode::kInvalidInput, "unknown report format");
}

std::map<std::string, Matrix> parse_report_csv(std::string_view csv) {
  std::map<std::string, Matrix> out;
  std::istringstream in{std::string(csv)};
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    return cells;
  };
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) != 0) continue;
    const std::string name = line.substr(2);
    std::string header;
    std::getline(in, header);
    const bool period_column = header.rfind("period,", 0) == 0;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line) && !line.empty()) {
      auto cells = split(line);
      std::vector<double> row;
      for (std::size_t k = period_column ? 1 : 0; k < cells.size(); ++k) {
        double v = 0.0;
        const char* b = cells[k].data();
        auto res = std::from_chars(b, b + cells[k].size(), v);
        if (res.ec != std::errc{}) fail(ErrorCode::kInvalidInput, "csv: bad number '" + cells[k] + "'");
        row.push_back(v);
      }
      rows.push_back(std::move(row));
    }
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r].at(c);
    out[name] = std::move(m);
  }
  return out;
}

}  // namespace mps
