#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mps/common.hpp"

namespace mps {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  bool integer = false;
};

struct Term {
  std::size_t var;
  double coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

/// Maximization model: objective = constant + sum(coef * var).
class LinearModel {
 public:
  std::size_t add_variable(Variable v, double objective_coef = 0.0);
  void add_constraint(Constraint c);

  void set_objective_coef(std::size_t var, double coef) { objective_.at(var) = coef; }
  void set_objective_constant(double c) { constant_ = c; }

  Variable& variable(std::size_t k) { return variables_.at(k); }
  const Variable& variable(std::size_t k) const { return variables_.at(k); }

  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  const std::vector<double>& objective() const noexcept { return objective_; }
  double objective_constant() const noexcept { return constant_; }

  std::size_t num_variables() const noexcept { return variables_.size(); }
  std::size_t num_constraints() const noexcept { return constraints_.size(); }

  double evaluate(std::span<const double> x) const;

  /// Largest violation over constraints and bounds at `x` (0 when feasible).
  double max_violation(std::span<const double> x) const;

  bool has_integer_variables() const;

 private:
  std::vector<Variable> variables_;
  std::vector<double> objective_;
  std::vector<Constraint> constraints_;
  double constant_ = 0.0;
};

}  // namespace mps
