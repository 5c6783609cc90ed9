#pragma once

// Reference computations written independently of the library, used as
// oracles by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "mps/instance.hpp"
#include "mps/linear_model.hpp"
#include "mps/schedule.hpp"

namespace testing_support {

using mps::Instance;
using mps::Matrix;
using mps::ProductionSchedule;

/// Full-scale generated instance, seeded.
inline Instance full_scale(std::uint64_t seed) { return mps::generate_instance(seed, {6, 27, 6}); }

/// Instances small enough for exhaustive enumeration.
inline mps::GeneratorRanges tiny_ranges() {
  mps::GeneratorRanges r;
  r.demand = {1.0, 3.0};
  r.initial_inventory_share = {0.0, 0.5};
  r.lot_weight = {0.2, 1.5};
  r.consumption = {0.05, 0.5};
  r.fixed_cost = 10.0;
  r.holding_cost = 0.05;
  r.variable_cost = 0.5;
  r.slack_factor = 1.4;
  return r;
}

inline Instance tiny(std::uint64_t seed) { return mps::generate_instance(seed, {2, 3, 3}, tiny_ranges()); }

/// End-of-period inventory by the plain balance recursion.
inline Matrix naive_inventory(const Instance& inst, const Matrix& x) {
  Matrix lvl(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double prev = inst.initial_inventory[i];
    for (std::size_t t = 0; t < x.cols(); ++t) {
      prev = prev + x(i, t) - inst.demand(i, t);
      lvl(i, t) = prev;
    }
  }
  return lvl;
}

inline bool naive_feasible(const Instance& inst, const Matrix& x, double tol = 1e-6) {
  const Matrix lvl = naive_inventory(inst, x);
  for (std::size_t t = 0; t < x.cols(); ++t) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      if (x(i, t) < -tol || lvl(i, t) < -tol) return false;
      total += x(i, t);
    }
    if (total > inst.capacity[t] + tol) return false;
  }
  for (std::size_t i = 0; i < x.rows(); ++i)
    if (std::abs(lvl(i, x.cols() - 1)) > tol) return false;
  return true;
}

/// Lots bought per material and period: with leftovers carried forward,
/// cumulative purchases are the ceiling of cumulative need.
inline Matrix closed_form_lots(const Matrix& need) {
  Matrix bought(need.rows(), need.cols());
  for (std::size_t j = 0; j < need.rows(); ++j) {
    double cum = 0.0, prev_ceil = 0.0;
    for (std::size_t t = 0; t < need.cols(); ++t) {
      cum += need(j, t);
      const double c = std::ceil(cum - 1e-9);
      bought(j, t) = std::max(0.0, c - prev_ceil);
      prev_ceil = std::max(prev_ceil, c);
    }
  }
  return bought;
}

/// Fractional lots by explicit triple loop.
inline Matrix naive_lot_need(const Instance& inst, const Matrix& x) {
  Matrix e(inst.dims.n_materials, x.cols());
  for (std::size_t j = 0; j < inst.dims.n_materials; ++j)
    for (std::size_t t = 0; t < x.cols(); ++t) {
      double kg = 0.0;
      for (std::size_t i = 0; i < x.rows(); ++i) kg += inst.consumption(j, i) * x(i, t);
      e(j, t) = kg / inst.lot_weight[j];
    }
  return e;
}

/// Profit with lot-priced materials, computed from the closed-form purchases.
inline double closed_form_true_profit(const Instance& inst, const Matrix& x) {
  const Matrix lvl = naive_inventory(inst, x);
  double revenue = 0.0, produced = 0.0, holding = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t t = 0; t < x.cols(); ++t) {
      revenue += inst.price[i] * x(i, t);
      produced += x(i, t);
      const double start = t == 0 ? inst.initial_inventory[i] : lvl(i, t - 1);
      holding += inst.holding_cost[t] * start;
    }
  const Matrix lots = closed_form_lots(naive_lot_need(inst, x));
  double material = 0.0;
  for (std::size_t j = 0; j < lots.rows(); ++j)
    for (std::size_t t = 0; t < lots.cols(); ++t)
      material += lots(j, t) * inst.lot_weight[j] * inst.material_price[j];
  return revenue - material - holding - inst.variable_cost * produced -
         inst.fixed_cost * static_cast<double>(x.cols());
}

/// Random feasible schedule: just-in-time requirements, capacity overflow
/// pushed to earlier periods, then random moves of production to earlier
/// periods with spare capacity. Returns nothing if the repair fails.
inline std::optional<Matrix> random_feasible(const Instance& inst, mps::Rng& rng, bool integer,
                                             std::size_t moves = 40) {
  const std::size_t n = inst.dims.n_products, q = inst.dims.n_periods;
  Matrix x(n, q);
  for (std::size_t i = 0; i < n; ++i) {
    double stock = inst.initial_inventory[i];
    for (std::size_t t = 0; t < q; ++t) {
      const double use = std::min(stock, inst.demand(i, t));
      stock -= use;
      x(i, t) = inst.demand(i, t) - use;
    }
  }
  auto load = [&](std::size_t t) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x(i, t);
    return s;
  };
  for (std::size_t t = q; t-- > 1;) {
    double over = load(t) - inst.capacity[t];
    for (std::size_t i = 0; i < n && over > 0.0; ++i) {
      const double m = std::min(over, x(i, t));
      x(i, t) -= m;
      x(i, t - 1) += m;
      over -= m;
    }
  }
  if (load(0) > inst.capacity[0] + 1e-9) return std::nullopt;
  for (std::size_t k = 0; k < moves && q > 1; ++k) {
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    const auto t = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(q) - 1));
    const auto s = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(t) - 1));
    double amount = std::min(x(i, t), inst.capacity[s] - load(s)) * rng.unit();
    if (integer) amount = std::floor(amount);
    if (amount <= 0.0) continue;
    x(i, t) -= amount;
    x(i, s) += amount;
  }
  return x;
}

inline ProductionSchedule as_schedule(Matrix x, bool integer) { return {std::move(x), integer}; }

/// Exhaustive optimum of max c.x over {A x (<=,=,>=) b, lower <= x <= upper}
/// for at most three variables, by solving every square subsystem of active
/// constraints. Finite bounds must be supplied for every variable.
struct VertexOracle {
  enum class Status { kOptimal, kInfeasible };
  Status status = Status::kInfeasible;
  double value = -mps::kInf;
  std::vector<double> point;
};

inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> m, std::vector<double> r) {
  const std::size_t n = r.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t k = c + 1; k < n; ++k)
      if (std::abs(m[k][c]) > std::abs(m[piv][c])) piv = k;
    if (std::abs(m[piv][c]) < 1e-10) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(r[piv], r[c]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == c) continue;
      const double f = m[k][c] / m[c][c];
      for (std::size_t l = c; l < n; ++l) m[k][l] -= f * m[c][l];
      r[k] -= f * r[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t c = 0; c < n; ++c) x[c] = r[c] / m[c][c];
  return x;
}

inline VertexOracle vertex_enumeration(const mps::LinearModel& model) {
  const std::size_t n = model.num_variables();
  // Every constraint and finite bound as a hyperplane a.x = b.
  std::vector<std::vector<double>> planes;
  std::vector<double> rhs;
  for (const auto& c : model.constraints()) {
    std::vector<double> a(n, 0.0);
    for (const auto& t : c.terms) a[t.var] += t.coef;
    planes.push_back(a);
    rhs.push_back(c.rhs);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto& v = model.variable(k);
    std::vector<double> a(n, 0.0);
    a[k] = 1.0;
    planes.push_back(a);
    rhs.push_back(v.lower);
    planes.push_back(a);
    rhs.push_back(v.upper);
  }
  VertexOracle best;
  const std::size_t p = planes.size();
  // Iterate over all n-subsets of planes.
  std::vector<bool> mask(p, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n), true);
  do {
    std::vector<std::vector<double>> m;
    std::vector<double> r;
    for (std::size_t k = 0; k < p; ++k)
      if (mask[k]) {
        m.push_back(planes[k]);
        r.push_back(rhs[k]);
      }
    const auto x = solve_square(m, r);
    if (!x) continue;
    if (model.max_violation(*x) > 1e-7) continue;
    const double v = model.evaluate(*x);
    if (best.status == VertexOracle::Status::kInfeasible || v > best.value) {
      best.status = VertexOracle::Status::kOptimal;
      best.value = v;
      best.point = *x;
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

}  // namespace testing_support
