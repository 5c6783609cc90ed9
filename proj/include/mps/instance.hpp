#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "mps/common.hpp"

namespace mps {

struct Dimensions {
  std::size_t n_products = 0;
  std::size_t n_materials = 0;
  std::size_t n_periods = 0;

  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

/// One master-scheduling problem: products competing for a shared pool of
/// raw materials that are bought in whole lots.
struct Instance {
  Dimensions dims;
  std::vector<double> price;              // per product, money/package
  Matrix demand;                          // products x periods, packages
  std::vector<double> initial_inventory;  // per product, packages
  std::vector<double> capacity;           // per period, packages
  std::vector<double> holding_cost;       // per period, money/package/period
  double variable_cost = 0.0;             // money/package
  double fixed_cost = 0.0;                // money/period
  std::vector<double> lot_weight;         // per material, kg
  std::vector<double> material_price;     // per material, money/kg
  Matrix consumption;                     // materials x products, kg/package
  double utilization_floor = 0.90;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct GeneratorRanges {
  Interval consumption{0.005, 0.5};       // kg/package
  Interval lot_weight{100.0, 2500.0};     // kg
  Interval material_price{0.5, 3.0};      // money/kg
  Interval demand{1000.0, 6000.0};        // packages, rounded to integers
  Interval price{20.0, 30.0};             // money/package, rounded to integers
  Interval initial_inventory_share{0.0, 0.8};  // fraction of first-period demand
  double slack_factor = 1.25;
  double holding_cost = 3.0;
  double variable_cost = 3.08;
  double fixed_cost = 88800.0;
};

/// Throws kInvalidInput naming the violated invariant, or kInfeasible when
/// the demand cannot be met without backlog.
void validate(const Instance& inst);

/// Parses and validates an instance document (JSON text).
Instance parse_instance(std::string_view doc);

/// Canonical rendering: fixed key order, shortest round-trip numbers.
std::string render_instance(const Instance& inst);

void validate(const GeneratorRanges& ranges);

Instance generate_instance(std::uint64_t seed, const Dimensions& dims,
                           const GeneratorRanges& ranges = {});

/// Six products, six periods, demand/inventory/prices/costs of the case
/// study; the 27-material data is synthesized from `material_seed`.
Instance case_base_instance(std::uint64_t material_seed);

/// Net requirement of product i up to and including period t:
/// max(0, cumulative demand - initial inventory).
double cumulative_requirement(const Instance& inst, std::size_t product, std::size_t period);

/// 64-bit FNV-1a digest of the canonical rendering.
std::string instance_digest(const Instance& inst);

}  // namespace mps
