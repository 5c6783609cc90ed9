#include "mps/oracle.hpp"

#include "mps/search.hpp"

namespace mps {

namespace {

using Path = std::vector<double>;

/// All production paths of one product, in lexicographic order.
void product_paths(const Instance& inst, std::size_t i, std::size_t limit, std::vector<Path>& out) {
  const std::size_t q = inst.dims.n_periods;
  Path path(q, 0.0);
  std::vector<double> remaining(q + 1, 0.0);  // demand from period t onwards
  for (std::size_t t = q; t-- > 0;) remaining[t] = remaining[t + 1] + inst.demand(i, t);

  auto rec = [&](auto&& self, std::size_t t, double level) -> void {
    const double lo = std::max(0.0, inst.demand(i, t) - level);
    // Never make more than the rest of the horizon still needs.
    const double hi = std::min(std::floor(inst.capacity[t]), remaining[t] - level);
    if (t + 1 == q) {
      if (lo <= hi && lo == remaining[t] - level) {
        path[t] = lo;
        out.push_back(path);
        if (out.size() > limit)
          fail(ErrorCode::kLimit, "oracle: product " + std::to_string(i) +
                                      " alone has more than " + std::to_string(limit) + " paths");
      }
      return;
    }
    for (double x = lo; x <= hi; x += 1.0) {
      path[t] = x;
      self(self, t + 1, level + x - inst.demand(i, t));
    }
  };
  rec(rec, 0, inst.initial_inventory[i]);
}

}  // namespace

ExactOutcome enumerate_exact(const Instance& inst, const OracleLimits& limits) {
  if (limits.max_schedules < 1) fail(ErrorCode::kInvalidInput, "oracle: limit must be >= 1");
  validate(inst);
  const auto& d = inst.dims;
  for (double v : inst.demand.data())
    if (!is_integral(v, 0.0)) fail(ErrorCode::kInvalidInput, "oracle: demand must be integral");
  for (double v : inst.initial_inventory)
    if (!is_integral(v, 0.0)) fail(ErrorCode::kInvalidInput, "oracle: initial inventory must be integral");

  std::vector<std::vector<Path>> paths(d.n_products);
  double space = 1.0;
  for (std::size_t i = 0; i < d.n_products; ++i) {
    product_paths(inst, i, limits.max_schedules, paths[i]);
    space *= static_cast<double>(paths[i].size());
    if (space > static_cast<double>(limits.max_schedules))
      fail(ErrorCode::kLimit, "oracle: search space of at least " + std::to_string(space) +
                                  " schedules exceeds the limit " + std::to_string(limits.max_schedules));
  }

  ExactOutcome out;
  out.search_space = static_cast<std::size_t>(space);
  ProductionSchedule sched{Matrix(d.n_products, d.n_periods), true};
  std::vector<double> load(d.n_periods, 0.0);

  auto evaluate = [&] {
    const double v = limits.objective == OracleObjective::kLinear ? linear_profit(inst, sched).profit
                                                                  : true_profit(inst, sched).profit;
    ++out.feasible_count;
    // Strict improvement keeps the lexicographically first optimum.
    if (out.feasible_count == 1 || v > out.optimum + 1e-9 * std::max(1.0, std::abs(out.optimum))) {
      out.optimum = v;
      out.schedule = sched;
    }
  };

  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == d.n_products) {
      evaluate();
      return;
    }
    for (const Path& p : paths[i]) {
      bool fits = true;
      for (std::size_t t = 0; t < d.n_periods; ++t)
        if (load[t] + p[t] > inst.capacity[t]) {
          fits = false;
          break;
        }
      if (!fits) continue;
      for (std::size_t t = 0; t < d.n_periods; ++t) {
        load[t] += p[t];
        sched.x(i, t) = p[t];
      }
      self(self, i + 1);
      for (std::size_t t = 0; t < d.n_periods; ++t) load[t] -= p[t];
    }
  };
  rec(rec, 0);
  if (out.feasible_count == 0) fail(ErrorCode::kInfeasible, "oracle: no feasible integer schedule");
  return out;
}

}  // namespace mps
