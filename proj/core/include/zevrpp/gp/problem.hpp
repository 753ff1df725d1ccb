#pragma once

#include <limits>
#include <string>
#include <vector>

#include "zevrpp/gp/expr.hpp"

namespace zevrpp::gp {

enum class ConstraintForm {
  PosyLE1,  // expr <= 1
  MonoEQ1,  // mono == 1
  LogLE     // posy <= ln(mono)
};

struct Constraint {
  ConstraintForm form = ConstraintForm::PosyLE1;
  Expr expr;
  Monomial mono;
  Posynomial posy;
  std::string label;
  std::string group;
};

// lhs <= rhs
Constraint le(const Expr& lhs, const Monomial& rhs);
// lhs >= rhs
Constraint ge(const Monomial& lhs, const Expr& rhs);
Constraint mono_ge(const Monomial& lhs, double c);
Constraint eq(const Monomial& lhs, const Monomial& rhs);
Constraint log_le(const Posynomial& lhs, const Monomial& arg);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct VarInfo {
  Variable var;
  double lb = 0.0;  // 0 means unbounded below (positive domain)
  double ub = kInf;
};

class Problem {
 public:
  Variable add_var(std::string name, VarKind kind = VarKind::Positive,
                   double lb = 0.0, double ub = kInf);
  void set_bounds(VarId id, double lb, double ub);
  void fix(VarId id, double value) { set_bounds(id, value, value); }

  void minimize(const Expr& objective) { objective_ = objective; }
  Constraint& add(Constraint c);
  Constraint& add(Constraint c, std::string label, std::string group = {});

  const Expr& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<VarInfo>& vars() const { return vars_; }
  const VarInfo& var(VarId id) const { return vars_.at(id); }
  std::vector<VarId> integer_vars() const;
  std::vector<std::string> var_names() const;
  int num_vars() const { return static_cast<int>(vars_.size()); }

 private:
  std::vector<VarInfo> vars_;
  Expr objective_{1.0};
  std::vector<Constraint> constraints_;
};

// Original-space violation of one constraint at x (indexed by VarId).
// PosyLE1: max(0, e - 1); MonoEQ1: |m - 1|; LogLE: max(0, p - ln m) / max(1, ln m).
double violation(const Constraint& c, const std::vector<double>& x);

Assignment to_assignment(const std::vector<double>& x);

}  // namespace zevrpp::gp
