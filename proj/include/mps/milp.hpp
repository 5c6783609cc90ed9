#pragma once

#include <vector>

#include "mps/simplex.hpp"

namespace mps {

enum class BranchingRule { kMostFractional };
enum class NodeOrder { kBestBound, kDepthFirst };

struct MilpConfig {
  double integrality_tol = 1e-6;
  std::size_t node_limit = 100000;
  double gap_tol = 0.0;  // absolute; 0 proves optimality
  BranchingRule branching = BranchingRule::kMostFractional;
  NodeOrder node_order = NodeOrder::kBestBound;
  bool tag_inventory = false;  // also branch on inventory variables
  SimplexOptions lp;
};

void validate(const MilpConfig& cfg);

enum class MilpStatus { kOptimal, kFeasibleGap, kInfeasible, kNodeLimit };

const char* to_string(MilpStatus s);

struct MilpOutcome {
  MilpStatus status = MilpStatus::kInfeasible;
  std::vector<double> values;  // incumbent; empty when none was found
  double objective = -kInf;
  double best_bound = -kInf;
  double root_bound = -kInf;   // LP relaxation value
  std::size_t nodes = 0;

  bool has_incumbent() const noexcept { return !values.empty(); }
};

/// LP-based branch and bound. Throws kInvalidInput when the relaxation is
/// unbounded.
MilpOutcome solve_milp(const LinearModel& model, const MilpConfig& cfg = {});

}  // namespace mps
