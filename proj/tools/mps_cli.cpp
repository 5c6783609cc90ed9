// Command-line front end. Talks to the library only through the C interface.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mps/mps.h"

namespace {

struct CString {
  char* p = nullptr;
  ~CString() { mps_string_free(p); }
};

struct InstanceHandle {
  mps_instance h = nullptr;
  ~InstanceHandle() { mps_instance_free(h); }
};

int report_error(mps_status st) {
  std::cerr << "error: " << mps_last_error() << "\n";
  return static_cast<int>(st);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int emit(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return MPS_ERROR_INVALID_INPUT;
  }
  out << text;
  return 0;
}

int load_instance(const std::string& path, InstanceHandle& inst) {
  std::string doc;
  if (!read_file(path, doc)) {
    std::cerr << "error: cannot read instance " << path << "\n";
    return MPS_ERROR_INVALID_INPUT;
  }
  if (auto st = mps_instance_parse(doc.c_str(), &inst.h); st != MPS_OK) return report_error(st);
  return 0;
}

std::uint64_t default_threads() {
  if (const char* env = std::getenv("MPS_THREADS")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 1;
}

struct ConfigFlags {
  mps_milp_config milp{};
  mps_search_config search{};
  std::vector<double> ladder;
  bool no_milp_start = false;
  bool depth_first = false;
  bool tag_inventory = false;
  bool lp_trace = false;
  bool trace = false;

  ConfigFlags() {
    mps_milp_config_default(&milp);
    mps_search_config_default(&search);
    search.threads = default_threads();
    ladder.assign(search.ladder, search.ladder + search.ladder_len);
  }

  void add_to(CLI::App* app) {
    app->add_option("--seed", search.seed, "Master seed for the search")->capture_default_str();
    app->add_option("--starts", search.starts, "Random starts for multi-start search")->capture_default_str();
    app->add_option("--budget", search.budget, "Objective evaluations per start")->capture_default_str();
    app->add_option("--ladder", ladder, "Transfer sizes, strictly decreasing")->delimiter(',');
    app->add_flag("--no-milp-start", no_milp_start, "Do not start the search from the heuristic schedule");
    app->add_option("--threads", search.threads, "Worker threads (default: MPS_THREADS or 1)");
    app->add_option("--integrality-tol", milp.integrality_tol, "Branch-and-bound integrality tolerance")
        ->capture_default_str();
    app->add_option("--node-limit", milp.node_limit, "Branch-and-bound node limit")->capture_default_str();
    app->add_option("--gap-tol", milp.gap_tol, "Absolute optimality gap")->capture_default_str();
    app->add_flag("--depth-first", depth_first, "Depth-first node order instead of best bound");
    app->add_flag("--tag-inventory", tag_inventory, "Branch on inventory variables as well");
  }

  void add_trace_to(CLI::App* app) {
    app->add_flag("--trace", trace, "Write per-start search trajectories to stderr");
    app->add_flag("--lp-trace", lp_trace, "Write simplex pivots to stderr");
  }

  bool finish() {
    if (ladder.empty() || ladder.size() > MPS_MAX_LADDER) {
      std::cerr << "error: --ladder needs 1 to " << MPS_MAX_LADDER << " steps\n";
      return false;
    }
    search.ladder_len = ladder.size();
    for (std::size_t k = 0; k < ladder.size(); ++k) search.ladder[k] = ladder[k];
    search.include_milp_start = no_milp_start ? 0 : 1;
    milp.depth_first = depth_first ? 1 : 0;
    milp.tag_inventory = tag_inventory ? 1 : 0;
    milp.lp_trace = lp_trace ? 1 : 0;
    search.trace = trace ? 1 : 0;
    return true;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Master production scheduling with lot-quantized raw materials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mps_version()));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance document");
  std::uint64_t gen_seed = 1;
  std::size_t products = 6, materials = 27, periods = 6;
  bool case_base = false;
  std::string gen_out;
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--products", products)->capture_default_str();
  gen->add_option("--materials", materials)->capture_default_str();
  gen->add_option("--periods", periods)->capture_default_str();
  gen->add_flag("--case-base", case_base,
                "Case-study demand, inventory, prices and costs; materials drawn from --seed");
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance with one model");
  std::string solve_instance, solve_model, solve_out;
  ConfigFlags solve_flags;
  solve->add_option("--instance", solve_instance, "Instance document")->required();
  solve->add_option("--model", solve_model, "milp | heuristic | nlp-int | nlp-relaxed")
      ->required()
      ->check(CLI::IsMember({"milp", "heuristic", "nlp-int", "nlp-relaxed"}));
  solve->add_option("-o,--output", solve_out, "Output file (default stdout)");
  solve_flags.add_to(solve);
  solve_flags.add_trace_to(solve);

  // compare
  auto* compare = app.add_subcommand("compare", "Run all three solution paths and compare them");
  std::string cmp_instance, cmp_format = "table-text", cmp_out;
  ConfigFlags cmp_flags;
  compare->add_option("--instance", cmp_instance, "Instance document")->required();
  compare->add_option("--format", cmp_format, "table-text | csv | structured")->capture_default_str();
  compare->add_option("-o,--output", cmp_out, "Output file (default stdout)");
  cmp_flags.add_to(compare);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum of a tiny instance");
  std::string or_instance, or_objective = "true", or_out;
  std::uint64_t or_limit = 1000000;
  oracle->add_option("--instance", or_instance, "Instance document")->required();
  oracle->add_option("--objective", or_objective, "linear | true")
      ->check(CLI::IsMember({"linear", "true"}))
      ->capture_default_str();
  oracle->add_option("--limit", or_limit, "Maximum enumerable schedules")->capture_default_str();
  oracle->add_option("-o,--output", or_out, "Output file (default stdout)");

  // replay
  auto* rep = app.add_subcommand("replay", "Report the arithmetic of given schedules");
  std::string rep_instance, rep_format = "table-text", rep_out;
  std::vector<std::string> rep_schedules;
  rep->add_option("--instance", rep_instance, "Instance document")->required();
  rep->add_option("--schedule", rep_schedules, "Schedule document (repeatable)")->required();
  rep->add_option("--format", rep_format, "table-text | csv | structured")->capture_default_str();
  rep->add_option("-o,--output", rep_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : MPS_ERROR_INVALID_INPUT;
  }

  if (gen->parsed()) {
    InstanceHandle inst;
    const mps_status st = case_base ? mps_instance_case_base(gen_seed, &inst.h)
                                     : mps_instance_generate(gen_seed, products, materials, periods, &inst.h);
    if (st != MPS_OK) return report_error(st);
    CString doc;
    if (auto s = mps_instance_render(inst.h, &doc.p); s != MPS_OK) return report_error(s);
    return emit(gen_out, doc.p);
  }

  if (solve->parsed()) {
    if (!solve_flags.finish()) return MPS_ERROR_INVALID_INPUT;
    InstanceHandle inst;
    if (int rc = load_instance(solve_instance, inst)) return rc;
    mps_model model = MPS_MODEL_MILP;
    if (solve_model == "heuristic") model = MPS_MODEL_HEURISTIC;
    if (solve_model == "nlp-int") model = MPS_MODEL_NLP_INTEGER;
    if (solve_model == "nlp-relaxed") model = MPS_MODEL_NLP_RELAXED;
    CString doc, trace;
    if (auto st = mps_solve(inst.h, model, &solve_flags.milp, &solve_flags.search, &doc.p, &trace.p);
        st != MPS_OK)
      return report_error(st);
    if (trace.p && *trace.p) std::cerr << trace.p;
    return emit(solve_out, doc.p);
  }

  if (compare->parsed()) {
    if (!cmp_flags.finish()) return MPS_ERROR_INVALID_INPUT;
    InstanceHandle inst;
    if (int rc = load_instance(cmp_instance, inst)) return rc;
    CString doc;
    if (auto st = mps_compare(inst.h, &cmp_flags.milp, &cmp_flags.search, cmp_format.c_str(), &doc.p);
        st != MPS_OK)
      return report_error(st);
    return emit(cmp_out, doc.p);
  }

  if (oracle->parsed()) {
    InstanceHandle inst;
    if (int rc = load_instance(or_instance, inst)) return rc;
    CString doc;
    const auto obj = or_objective == "linear" ? MPS_OBJECTIVE_LINEAR : MPS_OBJECTIVE_TRUE;
    if (auto st = mps_oracle(inst.h, obj, or_limit, &doc.p); st != MPS_OK) return report_error(st);
    return emit(or_out, doc.p);
  }

  if (rep->parsed()) {
    InstanceHandle inst;
    if (int rc = load_instance(rep_instance, inst)) return rc;
    std::vector<std::string> docs(rep_schedules.size());
    std::vector<const char*> ptrs;
    for (std::size_t k = 0; k < rep_schedules.size(); ++k) {
      if (!read_file(rep_schedules[k], docs[k])) {
        std::cerr << "error: cannot read schedule " << rep_schedules[k] << "\n";
        return MPS_ERROR_INVALID_INPUT;
      }
      ptrs.push_back(docs[k].c_str());
    }
    CString doc;
    if (auto st = mps_replay(inst.h, ptrs.data(), ptrs.size(), rep_format.c_str(), &doc.p); st != MPS_OK)
      return report_error(st);
    return emit(rep_out, doc.p);
  }
  return MPS_ERROR_INVALID_INPUT;
}
