#include "mps/linear_model.hpp"

#include <algorithm>

namespace mps {

std::size_t LinearModel::add_variable(Variable v, double objective_coef) {
  if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper || v.lower == kInf ||
      v.upper == -kInf)
    fail(ErrorCode::kInvalidInput, "variable '" + v.name + "' has empty bound interval");
  variables_.push_back(std::move(v));
  objective_.push_back(objective_coef);
  return variables_.size() - 1;
}

void LinearModel::add_constraint(Constraint c) {
  for (const Term& t : c.terms)
    if (t.var >= variables_.size())
      fail(ErrorCode::kInvalidInput,
           "constraint '" + c.name + "' references unknown variable " + std::to_string(t.var));
  if (!std::isfinite(c.rhs))
    fail(ErrorCode::kInvalidInput, "constraint '" + c.name + "' has a non-finite right-hand side");
  constraints_.push_back(std::move(c));
}

double LinearModel::evaluate(std::span<const double> x) const {
  double v = constant_;
  for (std::size_t k = 0; k < objective_.size(); ++k) v += objective_[k] * x[k];
  return v;
}

double LinearModel::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (std::size_t k = 0; k < variables_.size(); ++k) {
    worst = std::max(worst, variables_[k].lower - x[k]);
    worst = std::max(worst, x[k] - variables_[k].upper);
  }
  for (const Constraint& c : constraints_) {
    double lhs = 0.0;
    for (const Term& t : c.terms) lhs += t.coef * x[t.var];
    switch (c.relation) {
      case Relation::kLessEqual: worst = std::max(worst, lhs - c.rhs); break;
      case Relation::kGreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

bool LinearModel::has_integer_variables() const {
  return std::any_of(variables_.begin(), variables_.end(), [](const Variable& v) { return v.integer; });
}

}  // namespace mps
