#include "mps/mps.h"

#include <cstring>
#include <sstream>

#include "json_util.hpp"
#include "mps/oracle.hpp"
#include "mps/report.hpp"

struct mps_instance_s {
  mps::Instance inst;
};

namespace {

thread_local std::string g_last_error;

mps_status to_status(mps::ErrorCode code) {
  switch (code) {
    case mps::ErrorCode::kInvalidInput: return MPS_ERROR_INVALID_INPUT;
    case mps::ErrorCode::kInfeasible: return MPS_ERROR_INFEASIBLE;
    case mps::ErrorCode::kLimit: return MPS_ERROR_LIMIT;
  }
  return MPS_ERROR_INTERNAL;
}

template <class F>
mps_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return MPS_OK;
  } catch (const mps::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return MPS_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "internal error";
    return MPS_ERROR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void require(bool ok, const char* what) {
  if (!ok) mps::fail(mps::ErrorCode::kInvalidInput, what);
}

mps::MilpConfig milp_from(const mps_milp_config* c) {
  mps::MilpConfig cfg;
  if (!c) return cfg;
  cfg.integrality_tol = c->integrality_tol;
  cfg.node_limit = static_cast<std::size_t>(c->node_limit);
  cfg.gap_tol = c->gap_tol;
  cfg.node_order = c->depth_first ? mps::NodeOrder::kDepthFirst : mps::NodeOrder::kBestBound;
  cfg.tag_inventory = c->tag_inventory != 0;
  mps::validate(cfg);
  return cfg;
}

mps::SearchConfig search_from(const mps_search_config* c) {
  mps::SearchConfig cfg;
  if (!c) return cfg;
  require(c->ladder_len >= 1 && c->ladder_len <= MPS_MAX_LADDER, "search: ladder length out of range");
  cfg.starts = static_cast<std::size_t>(c->starts);
  cfg.seed = c->seed;
  cfg.budget = static_cast<std::size_t>(c->budget);
  cfg.integer_mode = c->integer_mode != 0;
  cfg.ladder.assign(c->ladder, c->ladder + c->ladder_len);
  cfg.include_milp_start = c->include_milp_start != 0;
  cfg.threads = static_cast<std::size_t>(c->threads);
  mps::validate(cfg);
  return cfg;
}

using mps::json_util::ordered_json;
using mps::json_util::number;
using mps::json_util::to_json;

ordered_json breakdown_json(const mps::ProfitBreakdown& b) {
  ordered_json j;
  j["revenue"] = number(b.revenue);
  j["material_cost"] = number(b.material_cost);
  j["inventory_cost"] = number(b.inventory_cost);
  j["variable_cost"] = number(b.variable_cost);
  j["fixed_cost"] = number(b.fixed_cost);
  j["profit"] = number(b.profit);
  j["utilization"] = number(b.utilization);
  j["warnings"] = b.warnings;
  return j;
}

ordered_json schedule_json(const mps::ProductionSchedule& s) {
  ordered_json j;
  j["integer_mode"] = s.integer_mode;
  j["x"] = to_json(s.x);
  return j;
}

ordered_json milp_json(const mps::MilpOutcome& m) {
  ordered_json j;
  j["status"] = mps::to_string(m.status);
  j["objective"] = number(m.objective);
  j["best_bound"] = number(m.best_bound);
  j["root_bound"] = number(m.root_bound);
  j["nodes"] = m.nodes;
  return j;
}

ordered_json search_json(const mps::SearchOutcome& o) {
  ordered_json j;
  j["schedule"] = schedule_json(o.best);
  j["profit"] = breakdown_json(o.breakdown);
  j["best_start"] = o.best_start;
  ordered_json starts = ordered_json::array();
  for (const auto& s : o.starts) {
    ordered_json sj;
    sj["origin"] = s.origin;
    sj["seed"] = s.seed;
    sj["start_value"] = number(s.start_value);
    sj["final_value"] = number(s.final_value);
    sj["evaluations"] = s.evaluations;
    starts.push_back(std::move(sj));
  }
  j["starts"] = starts;
  return j;
}

}  // namespace

extern "C" {

const char* mps_version(void) { return "1.0.0"; }

const char* mps_last_error(void) { return g_last_error.c_str(); }

void mps_string_free(char* s) { std::free(s); }

void mps_milp_config_default(mps_milp_config* cfg) {
  if (!cfg) return;
  const mps::MilpConfig d;
  cfg->integrality_tol = d.integrality_tol;
  cfg->node_limit = d.node_limit;
  cfg->gap_tol = d.gap_tol;
  cfg->depth_first = 0;
  cfg->tag_inventory = 0;
  cfg->lp_trace = 0;
}

void mps_search_config_default(mps_search_config* cfg) {
  if (!cfg) return;
  const mps::SearchConfig d;
  cfg->starts = d.starts;
  cfg->seed = d.seed;
  cfg->budget = d.budget;
  cfg->integer_mode = d.integer_mode ? 1 : 0;
  cfg->ladder_len = d.ladder.size();
  for (std::size_t k = 0; k < MPS_MAX_LADDER; ++k) cfg->ladder[k] = k < d.ladder.size() ? d.ladder[k] : 0.0;
  cfg->include_milp_start = d.include_milp_start ? 1 : 0;
  cfg->threads = 1;
  cfg->trace = 0;
}

mps_status mps_instance_parse(const char* json, mps_instance* out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = new mps_instance_s{mps::parse_instance(json)};
  });
}

mps_status mps_instance_generate(uint64_t seed, size_t n_products, size_t n_materials, size_t n_periods,
                                 mps_instance* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new mps_instance_s{mps::generate_instance(seed, {n_products, n_materials, n_periods})};
  });
}

mps_status mps_instance_case_base(uint64_t material_seed, mps_instance* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new mps_instance_s{mps::case_base_instance(material_seed)};
  });
}

mps_status mps_instance_render(mps_instance inst, char** out_json) {
  return guarded([&] {
    require(inst && out_json, "null argument");
    *out_json = dup(mps::render_instance(inst->inst));
  });
}

mps_status mps_instance_dims(mps_instance inst, size_t* n_products, size_t* n_materials, size_t* n_periods) {
  return guarded([&] {
    require(inst != nullptr, "null argument");
    if (n_products) *n_products = inst->inst.dims.n_products;
    if (n_materials) *n_materials = inst->inst.dims.n_materials;
    if (n_periods) *n_periods = inst->inst.dims.n_periods;
  });
}

void mps_instance_free(mps_instance inst) { delete inst; }

mps_status mps_solve(mps_instance inst, mps_model model, const mps_milp_config* milp,
                     const mps_search_config* search, char** out_json, char** out_trace) {
  return guarded([&] {
    require(inst && out_json, "null argument");
    std::ostringstream trace;
    mps::MilpConfig mcfg = milp_from(milp);
    if (milp && milp->lp_trace) mcfg.lp.trace = &trace;
    mps::SearchConfig scfg = search_from(search);
    if (search && search->trace) scfg.trace = &trace;

    const mps::Instance& in = inst->inst;
    ordered_json j;
    switch (model) {
      case MPS_MODEL_MILP: {
        const auto lm = mps::build_linear_model(in, true, mcfg.tag_inventory);
        const auto res = mps::solve_milp(lm, mcfg);
        if (!res.has_incumbent()) {
          if (res.status == mps::MilpStatus::kInfeasible)
            mps::fail(mps::ErrorCode::kInfeasible, "integer model is infeasible");
          mps::fail(mps::ErrorCode::kLimit, "node limit reached without an integer schedule");
        }
        const auto sched = mps::schedule_from_solution(in, res.values, true);
        j["model"] = "milp";
        j["milp"] = milp_json(res);
        j["schedule"] = schedule_json(sched);
        j["profit"] = breakdown_json(mps::linear_profit(in, sched));
        break;
      }
      case MPS_MODEL_HEURISTIC: {
        const auto h = mps::run_heuristic(in, mcfg);
        j["model"] = "heuristic";
        j["milp"] = milp_json(h.milp);
        j["model_profit"] = number(h.model_profit);
        j["updated_profit"] = number(h.updated_profit);
        j["schedule"] = schedule_json(h.schedule);
        j["profit"] = breakdown_json(h.breakdown);
        j["purchase_plan"] = ordered_json::parse(mps::render_purchase_plan(h.plan));
        break;
      }
      case MPS_MODEL_NLP_INTEGER:
      case MPS_MODEL_NLP_RELAXED: {
        scfg.integer_mode = model == MPS_MODEL_NLP_INTEGER;
        const auto o = mps::multi_start(in, scfg, mcfg);
        j["model"] = scfg.integer_mode ? "nlp-integer" : "nlp-relaxed";
        const ordered_json body = search_json(o);
        for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
        j["purchase_plan"] =
            ordered_json::parse(mps::render_purchase_plan(mps::purchase_plan(mps::fractional_lots(in, o.best))));
        break;
      }
      default:
        mps::fail(mps::ErrorCode::kInvalidInput, "unknown model");
    }
    j["instance_digest"] = mps::instance_digest(in);
    *out_json = dup(j.dump(2) + "\n");
    if (out_trace) *out_trace = dup(trace.str());
  });
}

mps_status mps_compare(mps_instance inst, const mps_milp_config* milp, const mps_search_config* search,
                       const char* format, char** out) {
  return guarded([&] {
    require(inst && format && out, "null argument");
    const auto fmt = mps::parse_report_format(format);
    const auto rep = mps::compare_models(inst->inst, milp_from(milp), search_from(search));
    *out = dup(mps::render_report(rep, fmt));
  });
}

mps_status mps_oracle(mps_instance inst, mps_objective objective, uint64_t max_schedules, char** out_json) {
  return guarded([&] {
    require(inst && out_json, "null argument");
    mps::OracleLimits lim;
    lim.max_schedules = static_cast<std::size_t>(max_schedules);
    lim.objective = objective == MPS_OBJECTIVE_LINEAR ? mps::OracleObjective::kLinear : mps::OracleObjective::kTrue;
    const auto res = mps::enumerate_exact(inst->inst, lim);
    ordered_json j;
    j["objective"] = objective == MPS_OBJECTIVE_LINEAR ? "linear" : "true";
    j["optimum"] = number(res.optimum);
    j["feasible_count"] = res.feasible_count;
    j["search_space"] = res.search_space;
    j["schedule"] = schedule_json(res.schedule);
    *out_json = dup(j.dump(2) + "\n");
  });
}

mps_status mps_replay(mps_instance inst, const char* const* schedule_docs, size_t count, const char* format,
                      char** out) {
  return guarded([&] {
    require(inst && format && out && (schedule_docs || count == 0), "null argument");
    require(count >= 1, "replay needs at least one schedule");
    const auto fmt = mps::parse_report_format(format);
    std::vector<mps::LabeledSchedule> schedules;
    for (size_t k = 0; k < count; ++k) {
      require(schedule_docs[k] != nullptr, "null schedule document");
      schedules.push_back(mps::parse_labeled_schedule(schedule_docs[k]));
    }
    *out = dup(mps::render_report(mps::replay(inst->inst, schedules), fmt));
  });
}

}  // extern "C"
