#include "mps/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <ostream>
#include <thread>

#include "json_util.hpp"

namespace mps {

namespace {
constexpr double kTol = 1e-9;

bool improves(double candidate, double current) {
  return candidate > current + kTol * std::max(1.0, std::abs(current));
}
}  // namespace

void validate(const SearchConfig& cfg) {
  if (cfg.starts < 1) fail(ErrorCode::kInvalidInput, "search: starts must be >= 1");
  if (cfg.budget < 1) fail(ErrorCode::kInvalidInput, "search: budget must be >= 1");
  if (cfg.ladder.empty()) fail(ErrorCode::kInvalidInput, "search: step ladder is empty");
  for (std::size_t k = 0; k < cfg.ladder.size(); ++k) {
    if (!(cfg.ladder[k] > 0.0)) fail(ErrorCode::kInvalidInput, "search: ladder steps must be > 0");
    if (k > 0 && !(cfg.ladder[k] < cfg.ladder[k - 1]))
      fail(ErrorCode::kInvalidInput, "search: ladder must be strictly decreasing");
    if (cfg.integer_mode && !is_integral(cfg.ladder[k], 0.0))
      fail(ErrorCode::kInvalidInput, "search: integer mode needs integral ladder steps");
  }
}

ProfitBreakdown true_profit(const Instance& inst, const ProductionSchedule& sched) {
  return updated_profit(inst, sched, purchase_plan(fractional_lots(inst, sched)));
}

ProductionSchedule seed_schedule(const Instance& inst, std::uint64_t seed, bool integer_mode) {
  const std::size_t n = inst.dims.n_products;
  const std::size_t q = inst.dims.n_periods;
  ProductionSchedule s{Matrix(n, q), integer_mode};
  for (std::size_t i = 0; i < n; ++i) {
    double carry = inst.initial_inventory[i];
    for (std::size_t t = 0; t < q; ++t) {
      const double d = inst.demand(i, t);
      if (carry >= d) {
        carry -= d;
      } else {
        s.x(i, t) = d - carry;
        carry = 0.0;
      }
    }
  }

  Rng rng(seed);
  std::vector<double> load(q, 0.0);
  for (std::size_t t = 0; t < q; ++t)
    for (std::size_t i = 0; i < n; ++i) load[t] += s.x(i, t);

  std::vector<std::size_t> order(n);
  for (std::size_t t = q; t-- > 1;) {
    double excess = load[t] - inst.capacity[t];
    if (excess <= 0.0) continue;
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t k = n; k > 1; --k)
      std::swap(order[k - 1], order[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(k - 1)))]);
    for (std::size_t i : order) {
      if (excess <= 0.0) break;
      const double shift = std::min(s.x(i, t), excess);
      s.x(i, t) -= shift;
      s.x(i, t - 1) += shift;
      load[t] -= shift;
      load[t - 1] += shift;
      excess -= shift;
    }
  }
  if (load[0] > inst.capacity[0] + 1e-6)
    fail(ErrorCode::kInfeasible, "no backlog-free schedule exists for this instance");

  if (q < 2) return s;
  const std::size_t moves = n * q;
  for (std::size_t k = 0; k < moves; ++k) {
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n - 1)));
    const auto late = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(q - 1)));
    const auto early = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(late - 1)));
    double room = std::min(s.x(i, late), inst.capacity[early] - load[early]);
    if (integer_mode) room = std::floor(room + kTol);
    if (room <= 0.0) continue;
    const double delta = integer_mode ? static_cast<double>(rng.uniform_int(1, static_cast<std::int64_t>(room)))
                                      : rng.uniform(0.0, room);
    s.x(i, late) -= delta;
    s.x(i, early) += delta;
    load[late] -= delta;
    load[early] += delta;
  }
  return s;
}

namespace {

/// Incremental evaluator of the lot-priced profit. Only the material columns
/// of the two periods touched by a move are recomputed; the arithmetic order
/// matches true_profit so both give the same value.
class Evaluator {
 public:
  Evaluator(const Instance& inst, Matrix x) : inst_(inst), x_(std::move(x)) {
    const auto& d = inst.dims;
    kg_ = Matrix(d.n_materials, d.n_periods);
    for (std::size_t t = 0; t < d.n_periods; ++t) refresh_column(t);
    load_.assign(d.n_periods, 0.0);
    for (std::size_t t = 0; t < d.n_periods; ++t)
      for (std::size_t i = 0; i < d.n_products; ++i) load_[t] += x_(i, t);
    level_ = Matrix(d.n_products, d.n_periods);
    scratch_level_ = level_;
    need_.resize(d.n_periods);
    bought_.resize(d.n_periods);
    left_.resize(d.n_periods);
    updated_.resize(d.n_periods);
    saved_a_.resize(d.n_materials);
    saved_b_.resize(d.n_materials);
  }

  const Matrix& x() const { return x_; }

  double value() {
    const auto& d = inst_.dims;
    double revenue = 0.0;
    double packages = 0.0;
    for (std::size_t i = 0; i < d.n_products; ++i)
      for (std::size_t t = 0; t < d.n_periods; ++t) {
        revenue += inst_.price[i] * x_(i, t);
        packages += x_(i, t);
      }
    for (std::size_t i = 0; i < d.n_products; ++i) {
      double level = inst_.initial_inventory[i];
      for (std::size_t t = 0; t < d.n_periods; ++t) {
        level = level + x_(i, t) - inst_.demand(i, t);
        scratch_level_(i, t) = level;
      }
    }
    double holding = 0.0;
    for (std::size_t t = 0; t < d.n_periods; ++t) {
      double stock = 0.0;
      for (std::size_t i = 0; i < d.n_products; ++i)
        stock += t == 0 ? inst_.initial_inventory[i] : scratch_level_(i, t - 1);
      holding += inst_.holding_cost[t] * stock;
    }
    double material = 0.0;
    for (std::size_t j = 0; j < d.n_materials; ++j) {
      for (std::size_t t = 0; t < d.n_periods; ++t) need_[t] = kg_(j, t) / inst_.lot_weight[j];
      purchase_chain(need_, bought_, left_, updated_);
      double lots = 0.0;
      for (double v : bought_) lots += v;
      material += inst_.material_price[j] * inst_.lot_weight[j] * lots;
    }
    return revenue - material - holding - inst_.variable_cost * packages -
           static_cast<double>(d.n_periods) * inst_.fixed_cost;
  }

  /// Adopts the inventory levels of the last value() call.
  void commit() { level_ = scratch_level_; }

  bool feasible_move(std::size_t i, std::size_t from, std::size_t to, double delta) const {
    if (x_(i, from) < delta - kTol) return false;
    if (load_[to] + delta > inst_.capacity[to] + kTol) return false;
    for (std::size_t t = from; t < to; ++t)
      if (level_(i, t) < delta - kTol) return false;
    return true;
  }

  void apply(std::size_t i, std::size_t from, std::size_t to, double delta) {
    for (std::size_t j = 0; j < inst_.dims.n_materials; ++j) {
      saved_a_[j] = kg_(j, from);
      saved_b_[j] = kg_(j, to);
    }
    saved_from_ = x_(i, from);
    saved_to_ = x_(i, to);
    saved_load_from_ = load_[from];
    saved_load_to_ = load_[to];
    double nf = x_(i, from) - delta;
    if (std::abs(nf) <= kTol) nf = 0.0;
    x_(i, from) = nf;
    x_(i, to) += delta;
    load_[from] -= delta;
    load_[to] += delta;
    refresh_column(from);
    refresh_column(to);
  }

  void revert(std::size_t i, std::size_t from, std::size_t to) {
    x_(i, from) = saved_from_;
    x_(i, to) = saved_to_;
    load_[from] = saved_load_from_;
    load_[to] = saved_load_to_;
    for (std::size_t j = 0; j < inst_.dims.n_materials; ++j) {
      kg_(j, from) = saved_a_[j];
      kg_(j, to) = saved_b_[j];
    }
  }

 private:
  void refresh_column(std::size_t t) {
    for (std::size_t j = 0; j < inst_.dims.n_materials; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < inst_.dims.n_products; ++i) s += inst_.consumption(j, i) * x_(i, t);
      kg_(j, t) = s;
    }
  }

  const Instance& inst_;
  Matrix x_;
  Matrix kg_;
  Matrix level_;
  Matrix scratch_level_;
  std::vector<double> load_;
  std::vector<double> need_, bought_, left_, updated_;
  std::vector<double> saved_a_, saved_b_;
  double saved_from_ = 0, saved_to_ = 0, saved_load_from_ = 0, saved_load_to_ = 0;
};

std::vector<double> effective_ladder(const SearchConfig& cfg) {
  std::vector<double> ladder = cfg.ladder;
  if (!cfg.integer_mode) {
    const double last = ladder.back();
    ladder.push_back(last / 10.0);
    ladder.push_back(last / 100.0);
  }
  return ladder;
}

}  // namespace

LocalSearchResult local_search_run(const Instance& inst, const ProductionSchedule& start,
                                   const SearchConfig& cfg) {
  validate(cfg);
  const auto rep = feasibility_report(inst, start);
  if (!rep.feasible()) fail(ErrorCode::kInfeasible, "local search start is infeasible:\n" + rep.describe());

  const auto& d = inst.dims;
  Evaluator ev(inst, start.x);
  LocalSearchResult res;
  double current = ev.value();
  ev.commit();
  res.summary.start_value = current;
  std::size_t evals = 1;

  const auto ladder = effective_ladder(cfg);
  bool exhausted = false;
  for (double step : ladder) {
    bool improved = true;
    while (improved && !exhausted) {
      improved = false;
      for (std::size_t i = 0; i < d.n_products && !exhausted; ++i)
        for (std::size_t from = 0; from < d.n_periods && !exhausted; ++from)
          for (std::size_t to = 0; to < d.n_periods; ++to) {
            if (to == from) continue;
            // Moving later needs stock in between; earlier always keeps it.
            if (!ev.feasible_move(i, from, to, step)) continue;
            if (evals >= cfg.budget) {
              exhausted = true;
              break;
            }
            ev.apply(i, from, to, step);
            const double v = ev.value();
            ++evals;
            if (improves(v, current)) {
              current = v;
              ev.commit();
              improved = true;
              res.summary.trajectory.push_back(v);
            } else {
              ev.revert(i, from, to);
            }
          }
    }
    if (exhausted) break;
  }

  res.schedule = ProductionSchedule{ev.x(), start.integer_mode};
  res.summary.evaluations = evals;
  const double start_true = true_profit(inst, start).profit;
  double final_true = true_profit(inst, res.schedule).profit;
  if (final_true < start_true) {
    res.schedule = start;
    final_true = start_true;
  }
  res.summary.start_value = start_true;
  res.summary.final_value = final_true;
  return res;
}

ProductionSchedule local_search(const Instance& inst, const ProductionSchedule& start,
                                const SearchConfig& cfg) {
  return local_search_run(inst, start, cfg).schedule;
}

SearchOutcome multi_start(const Instance& inst, const SearchConfig& cfg, const MilpConfig& milp_cfg,
                          std::span<const ProductionSchedule> injected) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  struct Start {
    std::string origin;
    std::uint64_t seed;
    ProductionSchedule schedule;
  };
  std::vector<Start> starts;
  if (cfg.include_milp_start) {
    ProductionSchedule s = run_heuristic(inst, milp_cfg).schedule;
    s.integer_mode = cfg.integer_mode;
    starts.push_back({"milp", 0, std::move(s)});
  }
  std::vector<ProductionSchedule> incumbents(injected.begin(), injected.end());
  if (!cfg.integer_mode && incumbents.empty()) {
    SearchConfig int_cfg = cfg;
    int_cfg.integer_mode = true;
    int_cfg.trace = nullptr;
    incumbents.push_back(multi_start(inst, int_cfg, milp_cfg).best);
  }
  for (auto& s : incumbents) {
    s.integer_mode = cfg.integer_mode;
    starts.push_back({"injected", 0, std::move(s)});
  }
  for (std::size_t k = 0; k < cfg.starts; ++k) {
    const std::uint64_t seed = derive_seed(cfg.seed, k);
    starts.push_back({"random", seed, seed_schedule(inst, seed, cfg.integer_mode)});
  }

  std::vector<LocalSearchResult> results(starts.size());
  std::vector<std::exception_ptr> errors(starts.size());
  auto work = [&](std::size_t k) {
    try {
      results[k] = local_search_run(inst, starts[k].schedule, cfg);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  const std::size_t threads = std::min(std::max<std::size_t>(1, cfg.threads), starts.size());
  if (threads == 1) {
    for (std::size_t k = 0; k < starts.size(); ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next.fetch_add(1)) < starts.size();) work(k);
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  SearchOutcome out;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    results[k].summary.origin = starts[k].origin;
    results[k].summary.seed = starts[k].seed;
    // Ties keep the earliest start.
    if (k == 0 || results[k].summary.final_value > results[out.best_start].summary.final_value)
      out.best_start = k;
  }
  out.best = results[out.best_start].schedule;
  out.breakdown = true_profit(inst, out.best);
  for (auto& r : results) out.starts.push_back(std::move(r.summary));
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (cfg.trace) {
    for (std::size_t k = 0; k < out.starts.size(); ++k) {
      const auto& s = out.starts[k];
      *cfg.trace << "start=" << k << " origin=" << s.origin << " seed=" << s.seed
                 << " evaluations=" << s.evaluations << " values=" << json_util::format_number(s.start_value);
      for (double v : s.trajectory) *cfg.trace << "," << json_util::format_number(v);
      *cfg.trace << " final=" << json_util::format_number(s.final_value) << "\n";
    }
  }
  return out;
}

}  // namespace mps
