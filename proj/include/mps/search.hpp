#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mps/material.hpp"

namespace mps {

struct SearchConfig {
  std::size_t starts = 32;          // random starts, in addition to injected ones
  std::uint64_t seed = 0;           // master seed
  std::size_t budget = 20000;       // objective evaluations per start
  bool integer_mode = true;
  std::vector<double> ladder{1000, 100, 10, 1};  // transfer sizes, large to small
  bool include_milp_start = true;
  std::size_t threads = 1;          // never changes results
  std::ostream* trace = nullptr;    // per-start value trajectories
};

void validate(const SearchConfig& cfg);

struct StartSummary {
  std::string origin;  // "milp", "injected" or "random"
  std::uint64_t seed = 0;
  double start_value = 0.0;
  double final_value = 0.0;
  std::size_t evaluations = 0;
  std::vector<double> trajectory;  // value after each accepted move
};

struct SearchOutcome {
  ProductionSchedule best;
  ProfitBreakdown breakdown;
  std::size_t best_start = 0;
  std::vector<StartSummary> starts;
  double wall_seconds = 0.0;
};

/// Profit with materials bought in whole lots under the carry-over chain.
ProfitBreakdown true_profit(const Instance& inst, const ProductionSchedule& sched);

/// Just-in-time production, pushed earlier where capacity binds, followed by
/// random early shifts drawn from `seed`.
ProductionSchedule seed_schedule(const Instance& inst, std::uint64_t seed, bool integer_mode);

struct LocalSearchResult {
  ProductionSchedule schedule;
  StartSummary summary;
};

/// First-improvement transfer search over the step ladder. Never returns a
/// schedule worse than `start`.
LocalSearchResult local_search_run(const Instance& inst, const ProductionSchedule& start,
                                   const SearchConfig& cfg);

ProductionSchedule local_search(const Instance& inst, const ProductionSchedule& start,
                                const SearchConfig& cfg);

/// Runs local search from the heuristic's schedule (optional), from every
/// schedule in `injected`, and from `cfg.starts` random starts. In relaxed
/// mode with nothing injected, the integer-mode best is computed and injected.
SearchOutcome multi_start(const Instance& inst, const SearchConfig& cfg,
                          const MilpConfig& milp_cfg = {},
                          std::span<const ProductionSchedule> injected = {});

}  // namespace mps
