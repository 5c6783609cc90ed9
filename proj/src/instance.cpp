#include "mps/instance.hpp"

#include <algorithm>
#include <cstdio>

#include "json_util.hpp"

namespace mps {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::kInvalidInput, "validation: " + what);
}

void check_vector(const std::vector<double>& v, std::size_t n, const char* name, bool strict) {
  require(v.size() == n, std::string(name) + " has " + std::to_string(v.size()) +
                             " entries, expected " + std::to_string(n));
  for (std::size_t k = 0; k < n; ++k) {
    require(std::isfinite(v[k]), std::string(name) + "[" + std::to_string(k) + "] is not finite");
    if (strict)
      require(v[k] > 0.0, std::string(name) + "[" + std::to_string(k) + "] must be > 0");
    else
      require(v[k] >= 0.0, std::string(name) + "[" + std::to_string(k) + "] must be >= 0");
  }
}

void check_matrix(const Matrix& m, std::size_t rows, std::size_t cols, const char* name) {
  require(m.rows() == rows && m.cols() == cols,
          std::string(name) + " shape " + std::to_string(m.rows()) + "x" +
              std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
              std::to_string(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = m(r, c);
      require(std::isfinite(v) && v >= 0.0, std::string(name) + "[" + std::to_string(r) + "][" +
                                                std::to_string(c) + "] must be >= 0");
    }
}

}  // namespace

double cumulative_requirement(const Instance& inst, std::size_t product, std::size_t period) {
  double d = 0.0;
  for (std::size_t t = 0; t <= period; ++t) d += inst.demand(product, t);
  return std::max(0.0, d - inst.initial_inventory[product]);
}

void validate(const Instance& inst) {
  const auto& d = inst.dims;
  require(d.n_products >= 1, "n_products must be >= 1");
  require(d.n_periods >= 1, "n_periods must be >= 1");

  check_vector(inst.price, d.n_products, "prices", true);
  check_matrix(inst.demand, d.n_products, d.n_periods, "demand");
  check_vector(inst.initial_inventory, d.n_products, "initial_inventory", false);
  check_vector(inst.capacity, d.n_periods, "capacity", false);
  check_vector(inst.holding_cost, d.n_periods, "holding_cost", false);
  require(std::isfinite(inst.variable_cost) && inst.variable_cost >= 0.0,
          "variable_cost must be >= 0");
  require(std::isfinite(inst.fixed_cost) && inst.fixed_cost >= 0.0, "fixed_cost must be >= 0");
  check_vector(inst.lot_weight, d.n_materials, "lot_weights", true);
  check_vector(inst.material_price, d.n_materials, "material_prices", false);
  check_matrix(inst.consumption, d.n_materials, d.n_products, "consumption");
  require(inst.utilization_floor >= 0.0 && inst.utilization_floor <= 1.0,
          "utilization_floor must lie in [0, 1]");

  // Terminal inventory is pinned at zero, so stock cannot exceed the
  // horizon's demand.
  for (std::size_t i = 0; i < d.n_products; ++i) {
    double total = 0.0;
    for (std::size_t t = 0; t < d.n_periods; ++t) total += inst.demand(i, t);
    if (inst.initial_inventory[i] > total)
      fail(ErrorCode::kInfeasible,
           "aggregate feasibility: initial_inventory[" + std::to_string(i) +
               "] exceeds the product's horizon demand; terminal inventory cannot reach zero");
  }

  double cum_cap = 0.0;
  for (std::size_t t = 0; t < d.n_periods; ++t) {
    cum_cap += inst.capacity[t];
    double need = 0.0;
    for (std::size_t i = 0; i < d.n_products; ++i) need += cumulative_requirement(inst, i, t);
    if (need > cum_cap + 1e-9)
      fail(ErrorCode::kInfeasible, "aggregate feasibility: net demand through period " +
                                       std::to_string(t) + " is " + json_util::format_number(need) +
                                       " but cumulative capacity is " +
                                       json_util::format_number(cum_cap));
  }
}

Instance parse_instance(std::string_view doc) {
  using namespace json_util;
  const json j = parse_document(doc, "instance");
  Instance inst;
  const json& dims = field(j, "dims");
  inst.dims.n_products = get_count(dims, "n_products");
  inst.dims.n_materials = get_count(dims, "n_materials");
  inst.dims.n_periods = get_count(dims, "n_periods");
  inst.price = get_vector(j, "prices");
  inst.demand = get_matrix(j, "demand");
  inst.initial_inventory = get_vector(j, "initial_inventory");
  inst.capacity = get_vector(j, "capacity");
  inst.holding_cost = get_vector(j, "holding_cost");
  inst.variable_cost = get_number(j, "variable_cost");
  inst.fixed_cost = get_number(j, "fixed_cost");
  inst.lot_weight = get_vector(j, "lot_weights");
  inst.material_price = get_vector(j, "material_prices");
  inst.consumption = get_matrix(j, "consumption", inst.dims.n_products);
  inst.utilization_floor = j.contains("utilization_floor") ? get_number(j, "utilization_floor") : 0.90;
  validate(inst);
  return inst;
}

std::string render_instance(const Instance& inst) {
  using namespace json_util;
  ordered_json j;
  j["dims"] = {{"n_products", inst.dims.n_products},
               {"n_materials", inst.dims.n_materials},
               {"n_periods", inst.dims.n_periods}};
  j["prices"] = to_json(inst.price);
  j["demand"] = to_json(inst.demand);
  j["initial_inventory"] = to_json(inst.initial_inventory);
  j["capacity"] = to_json(inst.capacity);
  j["holding_cost"] = to_json(inst.holding_cost);
  j["variable_cost"] = number(inst.variable_cost);
  j["fixed_cost"] = number(inst.fixed_cost);
  j["lot_weights"] = to_json(inst.lot_weight);
  j["material_prices"] = to_json(inst.material_price);
  j["consumption"] = to_json(inst.consumption);
  j["utilization_floor"] = number(inst.utilization_floor);
  return j.dump(2) + "\n";
}

void validate(const GeneratorRanges& r) {
  auto ok = [](const Interval& iv, const char* name) {
    if (!(iv.lo >= 0.0 && iv.lo <= iv.hi && std::isfinite(iv.hi)))
      fail(ErrorCode::kInvalidInput, std::string("generator range ") + name +
                                         " must satisfy 0 <= lo <= hi");
  };
  ok(r.consumption, "consumption");
  ok(r.lot_weight, "lot_weight");
  ok(r.material_price, "material_price");
  ok(r.demand, "demand");
  ok(r.price, "price");
  ok(r.initial_inventory_share, "initial_inventory_share");
  if (r.lot_weight.lo <= 0.0) fail(ErrorCode::kInvalidInput, "lot_weight range must be > 0");
  if (r.price.hi < 1.0) fail(ErrorCode::kInvalidInput, "price range must reach at least 1");
  if (!(r.slack_factor >= 1.0)) fail(ErrorCode::kInvalidInput, "slack_factor must be >= 1");
  if (!(r.holding_cost >= 0.0 && r.variable_cost >= 0.0 && r.fixed_cost >= 0.0))
    fail(ErrorCode::kInvalidInput, "generator costs must be >= 0");
}

namespace {

void fill_materials(Instance& inst, Rng& rng, const GeneratorRanges& r) {
  const auto& d = inst.dims;
  inst.lot_weight.resize(d.n_materials);
  inst.material_price.resize(d.n_materials);
  inst.consumption = Matrix(d.n_materials, d.n_products);
  for (std::size_t j = 0; j < d.n_materials; ++j) {
    inst.lot_weight[j] = rng.uniform(r.lot_weight.lo, r.lot_weight.hi);
    inst.material_price[j] = rng.uniform(r.material_price.lo, r.material_price.hi);
    for (std::size_t i = 0; i < d.n_products; ++i)
      inst.consumption(j, i) = rng.uniform(r.consumption.lo, r.consumption.hi);
  }
}

bool prefix_feasible(const Instance& inst) {
  double cum_cap = 0.0;
  for (std::size_t t = 0; t < inst.dims.n_periods; ++t) {
    cum_cap += inst.capacity[t];
    double need = 0.0;
    for (std::size_t i = 0; i < inst.dims.n_products; ++i)
      need += cumulative_requirement(inst, i, t);
    if (need > cum_cap) return false;
  }
  return true;
}

}  // namespace

Instance generate_instance(std::uint64_t seed, const Dimensions& dims,
                           const GeneratorRanges& ranges) {
  validate(ranges);
  if (dims.n_products < 1 || dims.n_periods < 1)
    fail(ErrorCode::kInvalidInput, "generator needs at least one product and one period");

  Rng rng(seed);
  Instance inst;
  inst.dims = dims;
  inst.price.resize(dims.n_products);
  for (auto& p : inst.price)
    p = std::max(1.0, std::round(rng.uniform(ranges.price.lo, ranges.price.hi)));
  inst.holding_cost.assign(dims.n_periods, ranges.holding_cost);
  inst.variable_cost = ranges.variable_cost;
  inst.fixed_cost = ranges.fixed_cost;
  fill_materials(inst, rng, ranges);

  // Demand is redrawn from the same stream until every prefix of periods can
  // be covered by the capacity the slack formula assigns.
  constexpr int kMaxDraws = 1000;
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    inst.demand = Matrix(dims.n_products, dims.n_periods);
    inst.initial_inventory.assign(dims.n_products, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < dims.n_products; ++i) {
      for (std::size_t t = 0; t < dims.n_periods; ++t) {
        inst.demand(i, t) = std::round(rng.uniform(ranges.demand.lo, ranges.demand.hi));
        total += inst.demand(i, t);
      }
      inst.initial_inventory[i] = std::floor(
          rng.uniform(ranges.initial_inventory_share.lo, ranges.initial_inventory_share.hi) *
          inst.demand(i, 0));
      total -= inst.initial_inventory[i];
    }
    const double per_period =
        std::ceil(ranges.slack_factor * total / static_cast<double>(dims.n_periods));
    inst.capacity.assign(dims.n_periods, std::max(0.0, per_period));
    if (prefix_feasible(inst)) {
      validate(inst);
      return inst;
    }
  }
  fail(ErrorCode::kInvalidInput, "generator could not draw a backlog-free demand profile");
}

Instance case_base_instance(std::uint64_t material_seed) {
  Instance inst;
  inst.dims = {6, 27, 6};
  inst.price = {20, 25, 27, 20, 30, 21};
  const double demand[6][6] = {
      {4660, 2982, 3832, 1293, 1896, 2357},  // A
      {3256, 3565, 4574, 3286, 4748, 3593},  // B
      {3407, 4914, 3083, 3993, 3706, 3327},  // C
      {3966, 2791, 2873, 2251, 3550, 3019},  // D
      {5852, 4031, 3043, 2990, 2519, 4125},  // E
      {4531, 5041, 4748, 4985, 5167, 3580},  // F
  };
  inst.demand = Matrix(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t t = 0; t < 6; ++t) inst.demand(i, t) = demand[i][t];
  inst.initial_inventory = {3308, 1839, 2478, 1673, 3716, 2164};
  inst.capacity.assign(6, 20800.0);
  inst.holding_cost.assign(6, 3.0);
  inst.variable_cost = 3.08;
  inst.fixed_cost = 88800.0;

  Rng rng(material_seed);
  fill_materials(inst, rng, GeneratorRanges{});
  validate(inst);
  return inst;
}

std::string instance_digest(const Instance& inst) {
  const std::string doc = render_instance(inst);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : doc) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mps
