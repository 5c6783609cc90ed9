#pragma once

#include "mps/schedule.hpp"

namespace mps {

enum class OracleObjective { kLinear, kTrue };

struct OracleLimits {
  std::size_t max_schedules = 1'000'000;
  OracleObjective objective = OracleObjective::kTrue;
};

struct ExactOutcome {
  double optimum = -kInf;
  ProductionSchedule schedule;   // lexicographically smallest optimum
  std::size_t feasible_count = 0;
  std::size_t search_space = 0;  // product of per-product path counts
};

/// Enumerates every feasible integer schedule with zero terminal inventory.
/// Throws kLimit when the a-priori search space exceeds the limit.
ExactOutcome enumerate_exact(const Instance& inst, const OracleLimits& limits = {});

}  // namespace mps
