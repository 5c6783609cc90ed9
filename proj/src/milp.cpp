#include "mps/milp.hpp"

#include <queue>

namespace mps {

const char* to_string(MilpStatus s) {
  switch (s) {
    case MilpStatus::kOptimal: return "optimal";
    case MilpStatus::kFeasibleGap: return "feasible-gap";
    case MilpStatus::kInfeasible: return "infeasible";
    case MilpStatus::kNodeLimit: return "node-limit";
  }
  return "unknown";
}

void validate(const MilpConfig& cfg) {
  if (!(cfg.integrality_tol > 0.0)) fail(ErrorCode::kInvalidInput, "integrality tolerance must be > 0");
  if (cfg.node_limit < 1) fail(ErrorCode::kInvalidInput, "node limit must be >= 1");
  if (!(cfg.gap_tol >= 0.0)) fail(ErrorCode::kInvalidInput, "gap tolerance must be >= 0");
}

namespace {

struct Node {
  std::vector<double> lower;
  std::vector<double> upper;
  double bound;
  std::size_t id;
  std::size_t depth;
};

struct NodeCompare {
  NodeOrder order;
  // priority_queue pops the largest element.
  bool operator()(const Node& a, const Node& b) const {
    if (order == NodeOrder::kBestBound) {
      if (a.bound != b.bound) return a.bound < b.bound;
      return a.id > b.id;
    }
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id < b.id;
  }
};

double prune_eps(double incumbent) { return 1e-9 * std::max(1.0, std::abs(incumbent)); }

}  // namespace

MilpOutcome solve_milp(const LinearModel& model, const MilpConfig& cfg) {
  validate(cfg);
  const std::size_t nv = model.num_variables();
  MilpOutcome out;

  std::priority_queue<Node, std::vector<Node>, NodeCompare> open{NodeCompare{cfg.node_order}};
  {
    Node root{std::vector<double>(nv), std::vector<double>(nv), kInf, 0, 0};
    for (std::size_t k = 0; k < nv; ++k) {
      root.lower[k] = model.variable(k).lower;
      root.upper[k] = model.variable(k).upper;
    }
    open.push(std::move(root));
  }
  std::size_t next_id = 1;
  LinearModel work = model;

  while (!open.empty()) {
    const double incumbent = out.objective;
    if (out.has_incumbent() && open.top().bound <= incumbent + cfg.gap_tol + prune_eps(incumbent)) {
      // Best-bound order: every remaining node is dominated as well.
      if (cfg.node_order == NodeOrder::kBestBound) break;
      open.pop();
      continue;
    }
    if (out.nodes >= cfg.node_limit) break;

    Node node = open.top();
    open.pop();
    for (std::size_t k = 0; k < nv; ++k) {
      work.variable(k).lower = node.lower[k];
      work.variable(k).upper = node.upper[k];
    }
    const LpOutcome lp = solve_lp(work, cfg.lp);
    ++out.nodes;
    if (lp.status == LpStatus::kUnbounded)
      fail(ErrorCode::kInvalidInput, "linear relaxation is unbounded");
    if (lp.status == LpStatus::kInfeasible) continue;
    if (node.id == 0) out.root_bound = lp.objective;
    if (out.has_incumbent() && lp.objective <= out.objective + prune_eps(out.objective)) continue;

    std::size_t branch_var = nv;
    double best_frac = cfg.integrality_tol;
    for (std::size_t k = 0; k < nv; ++k) {
      if (!model.variable(k).integer) continue;
      const double v = lp.values[k];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac) {
        best_frac = frac;
        branch_var = k;
      }
    }

    if (branch_var == nv) {
      std::vector<double> x = lp.values;
      for (std::size_t k = 0; k < nv; ++k)
        if (model.variable(k).integer) x[k] = std::round(x[k]);
      const double value = model.evaluate(x);
      if (!out.has_incumbent() || value > out.objective) {
        out.values = std::move(x);
        out.objective = value;
      }
      continue;
    }

    const double v = lp.values[branch_var];
    Node down{node.lower, node.upper, lp.objective, next_id++, node.depth + 1};
    down.upper[branch_var] = std::floor(v);
    Node up{std::move(node.lower), std::move(node.upper), lp.objective, next_id++, node.depth + 1};
    up.lower[branch_var] = std::ceil(v);
    if (down.lower[branch_var] <= down.upper[branch_var]) open.push(std::move(down));
    if (up.lower[branch_var] <= up.upper[branch_var]) open.push(std::move(up));
  }

  double open_bound = -kInf;
  if (!open.empty()) {
    // The root has no LP bound until it is solved.
    open_bound = open.top().bound == kInf ? kInf : open.top().bound;
    if (cfg.node_order != NodeOrder::kBestBound) {
      auto copy = open;
      while (!copy.empty()) {
        open_bound = std::max(open_bound, copy.top().bound);
        copy.pop();
      }
    }
  }

  if (!out.has_incumbent()) {
    out.status = open.empty() ? MilpStatus::kInfeasible : MilpStatus::kNodeLimit;
    out.best_bound = open.empty() ? -kInf : open_bound;
    return out;
  }
  out.best_bound = std::max(out.objective, open_bound);
  if (open.empty() || open_bound <= out.objective + prune_eps(out.objective))
    out.status = MilpStatus::kOptimal;
  else if (out.nodes >= cfg.node_limit && open_bound > out.objective + cfg.gap_tol + prune_eps(out.objective))
    out.status = MilpStatus::kNodeLimit;
  else
    out.status = MilpStatus::kFeasibleGap;
  return out;
}

}  // namespace mps
