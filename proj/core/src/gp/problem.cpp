#include "zevrpp/gp/problem.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace zevrpp::gp {

Constraint le(const Expr& lhs, const Monomial& rhs) {
  Constraint c;
  c.form = ConstraintForm::PosyLE1;
  c.expr = lhs / rhs;
  return c;
}

Constraint ge(const Monomial& lhs, const Expr& rhs) { return le(rhs, lhs); }

Constraint mono_ge(const Monomial& lhs, double v) { return le(Expr(v), lhs); }

Constraint eq(const Monomial& lhs, const Monomial& rhs) {
  Constraint c;
  c.form = ConstraintForm::MonoEQ1;
  c.mono = lhs / rhs;
  return c;
}

Constraint log_le(const Posynomial& lhs, const Monomial& arg) {
  Constraint c;
  c.form = ConstraintForm::LogLE;
  c.posy = lhs;
  c.mono = arg;
  return c;
}

Variable Problem::add_var(std::string name, VarKind kind, double lb, double ub) {
  VarInfo v;
  v.var.id = static_cast<VarId>(vars_.size());
  v.var.name = std::move(name);
  v.var.kind = kind;
  if (kind == VarKind::Integer && lb < 1.0) lb = 1.0;
  v.lb = lb;
  v.ub = ub;
  if (lb < 0.0 || ub < lb) throw std::invalid_argument(fmt::format("bad bounds for {}", v.var.name));
  vars_.push_back(v);
  return v.var;
}

void Problem::set_bounds(VarId id, double lb, double ub) {
  auto& v = vars_.at(id);
  if (lb < 0.0 || ub < lb) throw std::invalid_argument(fmt::format("bad bounds for {}", v.var.name));
  v.lb = lb;
  v.ub = ub;
}

Constraint& Problem::add(Constraint c) {
  constraints_.push_back(std::move(c));
  return constraints_.back();
}

Constraint& Problem::add(Constraint c, std::string label, std::string group) {
  c.label = std::move(label);
  c.group = std::move(group);
  return add(std::move(c));
}

std::vector<VarId> Problem::integer_vars() const {
  std::vector<VarId> out;
  for (auto& v : vars_)
    if (v.var.kind == VarKind::Integer) out.push_back(v.var.id);
  return out;
}

std::vector<std::string> Problem::var_names() const {
  std::vector<std::string> out;
  for (auto& v : vars_) out.push_back(v.var.name);
  return out;
}

Assignment to_assignment(const std::vector<double>& x) {
  Assignment a;
  for (size_t i = 0; i < x.size(); ++i) a[static_cast<VarId>(i)] = x[i];
  return a;
}

double violation(const Constraint& c, const std::vector<double>& x) {
  auto a = to_assignment(x);
  switch (c.form) {
    case ConstraintForm::PosyLE1:
      return std::max(0.0, evaluate(c.expr, a) - 1.0);
    case ConstraintForm::MonoEQ1:
      return std::abs(evaluate(c.mono, a) - 1.0);
    case ConstraintForm::LogLE: {
      double rhs = std::log(evaluate(c.mono, a));
      double lhs = evaluate(Expr(c.posy), a);
      return std::max(0.0, lhs - rhs) / std::max(1.0, std::abs(rhs));
    }
  }
  return 0.0;
}

}  // namespace zevrpp::gp
